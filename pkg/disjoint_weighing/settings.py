import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import tomlkit
from dotenv import load_dotenv
from platformdirs import user_data_dir

from disjoint_weighing.errors import ConfigError

logger: logging.Logger = logging.getLogger(__name__)

data_dir: str = user_data_dir(
    appname="disjoint_weighing",
    appauthor="disjoint-weighing",
    roaming=True,
    ensure_exists=True,
)
logger.debug("Data is stored in '%s'.", data_dir)

default_node_limit: int = 10**8
default_time_limit: float = 600.0
default_threads: int = 1
default_progress_interval: float = 5.0

# Environment variables that override config.toml.
ENV_NODE_LIMIT: str = "DWM_NODE_LIMIT"
ENV_TIME_LIMIT: str = "DWM_TIME_LIMIT"
ENV_THREADS: str = "DWM_THREADS"


@dataclass(frozen=True)
class Settings:
    node_limit: int = default_node_limit
    time_limit: float = default_time_limit
    threads: int = default_threads
    progress_interval: float = default_progress_interval
    output_dir: Path = Path(data_dir) / "runs"
    checkpoint_dir: Path = Path(data_dir) / "checkpoints"


def _parse_positive(name: str, raw: object, kind: type[int] | type[float]) -> int | float:
    """Parse a positive number from a config or environment value.

    Args:
        name: The key, used in the error message.
        raw: The raw value.
        kind: int or float.

    Raises:
        ConfigError: If the value is not a positive number.

    Returns:
        The parsed value.
    """
    try:
        # "1e9" is a common way to write a node budget.
        value: int | float = int(float(str(raw))) if kind is int else float(str(raw))
    except ValueError as e:
        msg: str = f"{name} must be a number, got {raw!r}"
        raise ConfigError(msg) from e

    if value <= 0:
        msg = f"{name} must be positive, got {raw!r}"
        raise ConfigError(msg)
    return value


@lru_cache
def get_settings(custom_location: Path | None = None) -> Settings:
    """Get the settings.

    Defaults are overridden by config.toml in the data directory, which is overridden by the environment.

    Args:
        custom_location: The location of the config file.

    Returns:
        The settings.
    """
    load_dotenv()
    config_location: Path = custom_location or Path(data_dir) / "config.toml"

    values: dict[str, object] = {}
    if config_location.exists():
        document: tomlkit.TOMLDocument = tomlkit.parse(config_location.read_text(encoding="utf-8"))
        values = {key: value for key, value in document.unwrap().items() if key in Settings.__dataclass_fields__}
        logger.info("Loaded %d settings from %s", len(values), config_location)

    env_overrides: dict[str, str] = {ENV_NODE_LIMIT: "node_limit", ENV_TIME_LIMIT: "time_limit", ENV_THREADS: "threads"}
    for env_name, key in env_overrides.items():
        if env_name in os.environ:
            values[key] = os.environ[env_name]

    settings = Settings()
    return Settings(
        node_limit=int(_parse_positive("node_limit", values.get("node_limit", settings.node_limit), int)),
        time_limit=float(_parse_positive("time_limit", values.get("time_limit", settings.time_limit), float)),
        threads=int(_parse_positive("threads", values.get("threads", settings.threads), int)),
        progress_interval=float(
            _parse_positive("progress_interval", values.get("progress_interval", settings.progress_interval), float),
        ),
        output_dir=Path(str(values.get("output_dir", settings.output_dir))),
        checkpoint_dir=Path(str(values.get("checkpoint_dir", settings.checkpoint_dir))),
    )


def resolve_threads(cli_value: int | None) -> int:
    """Decide how many worker threads a search uses.

    DWM_THREADS beats the command line, which beats the config file.

    Args:
        cli_value: The value of --threads, if given.

    Returns:
        The number of threads.
    """
    load_dotenv()
    if ENV_THREADS in os.environ:
        return int(_parse_positive(ENV_THREADS, os.environ[ENV_THREADS], int))
    if cli_value is not None:
        return int(_parse_positive("--threads", cli_value, int))
    return get_settings().threads
