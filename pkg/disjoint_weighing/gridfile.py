"""Sign-grid files: "# key=value" header lines, then one block of "+", "-" and "0" rows per matrix.

Blocks are separated by blank lines. A JSON document with the same content ({"header": {...}, "matrices": [...]})
is accepted wherever a sign-grid is.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from disjoint_weighing.errors import GridParseError
from disjoint_weighing.matcore import Matrix, TernaryMatrix

logger: logging.Logger = logging.getLogger(__name__)

SYMBOLS: dict[str, int] = {"+": 1, "-": -1, "0": 0}
CHARACTERS: dict[int, str] = {value: symbol for symbol, value in SYMBOLS.items()}


@dataclass(frozen=True)
class SignGrid:
    header: dict[str, str] = field(default_factory=dict)
    matrices: tuple[TernaryMatrix, ...] = ()

    @property
    def order(self) -> int:
        return self.matrices[0].order if self.matrices else 0

    @property
    def kind(self) -> str | None:
        return self.header.get("kind")

    @property
    def weights(self) -> tuple[int, ...] | None:
        """Weights from the header, or None when the header has none."""
        raw: str | None = self.header.get("weights")
        if not raw:
            return None
        return tuple(int(value) for value in raw.split(","))

    def flag(self, key: str) -> bool:
        return self.header.get(key, "").lower() == "true"


def _parse_header(line: str, number: int, header: dict[str, str]) -> None:
    body: str = line[1:].strip()
    if "=" not in body:
        return
    key, _, value = body.partition("=")
    key = key.strip()
    if not key:
        raise GridParseError("header line has an empty key", number, 2)
    header[key] = value.strip()


def _parse_row(line: str, number: int) -> list[int]:
    row: list[int] = []
    for column, character in enumerate(line, start=1):
        if character not in SYMBOLS:
            msg: str = f"unexpected character {character!r}; rows use only '+', '-' and '0'"
            raise GridParseError(msg, number, column)
        row.append(SYMBOLS[character])
    return row


def _close_block(rows: list[list[int]], first_line: int, last_line: int) -> TernaryMatrix:
    width: int = len(rows[0])
    if len(rows) != width:
        msg: str = f"block starting on line {first_line} has {len(rows)} rows of width {width}; blocks must be square"
        raise GridParseError(msg, last_line + 1 if len(rows) < width else last_line, 1)
    return TernaryMatrix(rows)


def _check_header(grid: SignGrid, first_lines: Sequence[int]) -> None:
    raw_order: str | None = grid.header.get("order")
    if raw_order is not None:
        try:
            order = int(raw_order)
        except ValueError as e:
            raise GridParseError(f"order {raw_order!r} is not an integer", 1, 1) from e
        for index, matrix in enumerate(grid.matrices):
            if matrix.order != order:
                msg: str = f"block {index} has order {matrix.order} but the header says {order}"
                raise GridParseError(msg, first_lines[index], 1)
    try:
        weights: tuple[int, ...] | None = grid.weights
    except ValueError as e:
        raise GridParseError(f"weights {grid.header['weights']!r} are not integers", 1, 1) from e
    if weights is not None and len(weights) != len(grid.matrices):
        msg = f"header lists {len(weights)} weights for {len(grid.matrices)} matrices"
        raise GridParseError(msg, 1, 1)


def parse_grid(text: str) -> SignGrid:
    """Parse sign-grid text.

    Raises:
        GridParseError: With the 1-based line and column of the first problem.
    """
    header: dict[str, str] = {}
    matrices: list[TernaryMatrix] = []
    first_lines: list[int] = []
    rows: list[list[int]] = []
    block_start: int = 0
    number: int = 0

    for number, raw in enumerate(text.splitlines(), start=1):
        line: str = raw.strip()
        if line.startswith("#"):
            _parse_header(line, number, header)
            continue
        if not line:
            if rows:
                matrices.append(_close_block(rows, block_start, number - 1))
                first_lines.append(block_start)
                rows = []
            continue
        row: list[int] = _parse_row(line, number)
        if not rows:
            block_start = number
        elif len(row) != len(rows[0]):
            msg: str = f"row has {len(row)} entries, the block's first row has {len(rows[0])}"
            raise GridParseError(msg, number, min(len(row), len(rows[0])) + 1)
        rows.append(row)

    if rows:
        matrices.append(_close_block(rows, block_start, number))
        first_lines.append(block_start)
    if not matrices:
        raise GridParseError("file holds no matrices", max(number, 1), 1)

    grid = SignGrid(header=header, matrices=tuple(matrices))
    _check_header(grid, first_lines)
    return grid


def format_grid(grid: SignGrid) -> str:
    """Render a sign-grid; parse_grid(format_grid(g)) == g."""
    lines: list[str] = [f"# {key}={value}" for key, value in grid.header.items()]
    for index, matrix in enumerate(grid.matrices):
        if index or lines:
            lines.append("")
        lines.extend("".join(CHARACTERS[int(value)] for value in row) for row in matrix.entries)
    return "\n".join(lines) + "\n"


def make_grid(matrices: Sequence[Matrix], **header: object) -> SignGrid:
    """A grid whose header always records the order first; other keys keep their given order."""
    ternary: tuple[TernaryMatrix, ...] = tuple(TernaryMatrix(matrix.entries) for matrix in matrices)
    fields: dict[str, str] = {"order": str(ternary[0].order if ternary else 0)}
    for key, value in header.items():
        if isinstance(value, bool):
            fields[key] = "true" if value else "false"
        elif isinstance(value, tuple | list):
            fields[key] = ",".join(str(item) for item in value)
        else:
            fields[key] = str(value)
    return SignGrid(header=fields, matrices=ternary)


def grid_to_json(grid: SignGrid) -> str:
    document: dict[str, object] = {
        "header": grid.header,
        "matrices": [matrix.tolist() for matrix in grid.matrices],
    }
    return json.dumps(document, indent=2) + "\n"


def parse_grid_json(text: str) -> SignGrid:
    """Parse the JSON form.

    Raises:
        GridParseError: If the text is not JSON of the expected shape or an entry is not -1, 0 or 1.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise GridParseError(e.msg, e.lineno, e.colno) from e

    if not isinstance(document, dict) or not isinstance(document.get("matrices"), list):
        raise GridParseError("expected an object with a 'matrices' list", 1, 1)
    header: dict[str, str] = {str(key): str(value) for key, value in dict(document.get("header", {})).items()}
    matrices: list[TernaryMatrix] = []
    for index, entries in enumerate(document["matrices"]):
        try:
            matrices.append(TernaryMatrix(entries))
        except ValueError as e:
            raise GridParseError(f"matrix {index}: {e}", 1, 1) from e
    if not matrices:
        raise GridParseError("file holds no matrices", 1, 1)

    grid = SignGrid(header=header, matrices=tuple(matrices))
    _check_header(grid, [1] * len(matrices))
    return grid


def read_grid(path: Path) -> SignGrid:
    """Read a sign-grid or, for a .json suffix, its JSON form."""
    text: str = Path(path).read_text(encoding="utf-8")
    grid: SignGrid = parse_grid_json(text) if Path(path).suffix == ".json" else parse_grid(text)
    logger.debug("Read %d matrices of order %d from %s", len(grid.matrices), grid.order, path)
    return grid


def write_grid(path: Path, grid: SignGrid, *, as_json: bool = False) -> Path:
    """Write a grid and return the path written."""
    target = Path(path)
    target.write_text(grid_to_json(grid) if as_json else format_grid(grid), encoding="utf-8")
    return target
