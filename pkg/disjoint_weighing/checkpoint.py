"""Binary checkpoints for an interrupted search.

Layout: magic, big-endian u16 format version, the 32-byte sha256 of the search problem, then a zlib-compressed
JSON payload with the search stack positions and the counters accumulated so far.
"""

from __future__ import annotations

import json
import logging
import struct
import zlib
from dataclasses import dataclass, field

from disjoint_weighing.errors import StaleCheckpoint

logger: logging.Logger = logging.getLogger(__name__)

MAGIC: bytes = b"DWMCKPT"
FORMAT_VERSION: int = 1
_HEADER: struct.Struct = struct.Struct(">7sH32s")


@dataclass(frozen=True)
class SearchState:
    problem_hash: bytes
    positions: tuple[int, ...] = ()
    nodes: int = 0
    prunes: dict[str, int] = field(default_factory=dict)
    depth_histogram: tuple[int, ...] = ()
    solutions: int = 0
    elapsed: float = 0.0

    @property
    def is_fresh(self) -> bool:
        return not self.positions


def dump_checkpoint(state: SearchState) -> bytes:
    """Serialize a search state."""
    payload: dict[str, object] = {
        "positions": list(state.positions),
        "nodes": state.nodes,
        "prunes": dict(sorted(state.prunes.items())),
        "depth_histogram": list(state.depth_histogram),
        "solutions": state.solutions,
        "elapsed": state.elapsed,
    }
    body: bytes = zlib.compress(json.dumps(payload, sort_keys=True, separators=(",", ":")).encode())
    return _HEADER.pack(MAGIC, FORMAT_VERSION, state.problem_hash) + body


def load_checkpoint(blob: bytes, problem_hash: bytes) -> SearchState:
    """Read a checkpoint written for the given problem.

    Args:
        blob: Bytes from dump_checkpoint.
        problem_hash: sha256 of the problem the caller wants to resume.

    Raises:
        StaleCheckpoint: If the blob is not a checkpoint, has an unknown version, or belongs to another problem.

    Returns:
        The saved state.
    """
    if len(blob) < _HEADER.size:
        msg = "checkpoint is truncated"
        raise StaleCheckpoint(msg)

    magic, version, saved_hash = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        msg = "not a search checkpoint"
        raise StaleCheckpoint(msg)
    if version != FORMAT_VERSION:
        msg = f"checkpoint format version {version} is not supported (expected {FORMAT_VERSION})"
        raise StaleCheckpoint(msg)
    if saved_hash != problem_hash:
        msg = "checkpoint was written for a different search problem"
        raise StaleCheckpoint(msg)

    try:
        payload: dict = json.loads(zlib.decompress(blob[_HEADER.size :]))
    except (zlib.error, ValueError) as e:
        msg = "checkpoint payload is corrupt"
        raise StaleCheckpoint(msg) from e

    logger.debug("Loaded checkpoint at depth %d after %d nodes", len(payload["positions"]), payload["nodes"])
    return SearchState(
        problem_hash=saved_hash,
        positions=tuple(payload["positions"]),
        nodes=payload["nodes"],
        prunes=dict(payload["prunes"]),
        depth_histogram=tuple(payload["depth_histogram"]),
        solutions=payload["solutions"],
        elapsed=payload["elapsed"],
    )
