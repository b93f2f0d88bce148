"""Run manifests: a manifest.toml written next to every CLI output so the run can be replayed."""

from __future__ import annotations

import hashlib
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import tomlkit

from disjoint_weighing import __version__
from disjoint_weighing.errors import ParamMismatch

logger: logging.Logger = logging.getLogger(__name__)

MANIFEST_NAME: str = "manifest.toml"


@dataclass(frozen=True)
class RunManifest:
    command: str
    argv: tuple[str, ...]
    parameters: dict[str, object] = field(default_factory=dict)
    input_hashes: dict[str, str] = field(default_factory=dict)
    version: str = __version__
    rng_seed: int | None = None
    wall_time: float = 0.0


def file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def hash_inputs(paths: Sequence[Path]) -> dict[str, str]:
    return {str(path): file_sha256(path) for path in paths}


def write_manifest(directory: Path, manifest: RunManifest) -> Path:
    """Write manifest.toml into directory and return its path."""
    document: tomlkit.TOMLDocument = tomlkit.document()
    document.add("command", manifest.command)
    document.add("argv", list(manifest.argv))
    document.add("version", manifest.version)
    if manifest.rng_seed is not None:
        document.add("rng_seed", manifest.rng_seed)
    document.add("wall_time", round(manifest.wall_time, 6))

    parameters = tomlkit.table()
    for key, value in manifest.parameters.items():
        if value is not None:
            parameters.add(key, value if isinstance(value, bool | int | float) else str(value))
    document.add("parameters", parameters)

    inputs = tomlkit.table()
    for name, digest in manifest.input_hashes.items():
        inputs.add(name, digest)
    document.add("inputs", inputs)

    target: Path = Path(directory) / MANIFEST_NAME
    target.write_text(tomlkit.dumps(document), encoding="utf-8")
    logger.debug("Wrote manifest for %s to %s", manifest.command, target)
    return target


def read_manifest(path: Path) -> RunManifest:
    data: dict = tomlkit.parse(Path(path).read_text(encoding="utf-8")).unwrap()
    return RunManifest(
        command=str(data["command"]),
        argv=tuple(str(arg) for arg in data["argv"]),
        parameters=dict(data.get("parameters", {})),
        input_hashes={str(key): str(value) for key, value in data.get("inputs", {}).items()},
        version=str(data.get("version", "")),
        rng_seed=data.get("rng_seed"),
        wall_time=float(data.get("wall_time", 0.0)),
    )


def _redirect(argv: Sequence[str], out: Path) -> list[str]:
    redirected: list[str] = list(argv)
    if "--out" in redirected:
        redirected[redirected.index("--out") + 1] = str(out)
    else:
        redirected.extend(["--out", str(out)])
    return redirected


def replay(path: Path, out: Path | None = None, runner: Callable[[list[str]], int] | None = None) -> int:
    """Re-run the command recorded in a manifest.

    Args:
        path: The manifest.toml to replay.
        out: Write outputs here instead of the recorded output directory.
        runner: Entry point taking argv; defaults to the dwm command.

    Raises:
        ParamMismatch: If an input file changed since the recorded run.

    Returns:
        The exit code of the replayed command.
    """
    manifest: RunManifest = read_manifest(path)
    for name, digest in manifest.input_hashes.items():
        if file_sha256(Path(name)) != digest:
            msg: str = f"input {name} changed since the recorded run"
            raise ParamMismatch(msg)
    if manifest.version != __version__:
        logger.warning("Replaying a manifest written by version %s with version %s", manifest.version, __version__)

    argv: list[str] = list(manifest.argv) if out is None else _redirect(manifest.argv, out)
    if runner is None:
        from disjoint_weighing.cli import main  # noqa: PLC0415

        runner = main
    logger.info("Replaying %s", " ".join(argv))
    return runner(argv)
