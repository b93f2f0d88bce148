import tempfile
from pathlib import Path

import pytest

from disjoint_weighing.construct import builtin_seed_dw
from disjoint_weighing.errors import GridParseError
from disjoint_weighing.gridfile import (
    format_grid,
    grid_to_json,
    make_grid,
    parse_grid,
    parse_grid_json,
    read_grid,
    write_grid,
)
from disjoint_weighing.matcore import TernaryMatrix

SMALL: str = "# order=2\n# kind=dw\n# weights=1\n\n0+\n-0\n"


def test_parse_small_grid() -> None:
    """Test the header and the single block of a small grid."""
    grid = parse_grid(SMALL)
    assert grid.order == 2
    assert grid.kind == "dw"
    assert grid.weights == (1,)
    assert grid.matrices == (TernaryMatrix([[0, 1], [-1, 0]]),)


def test_format_small_grid() -> None:
    """Test that formatting reproduces the text."""
    assert format_grid(parse_grid(SMALL)) == SMALL


def test_blocks_split_on_blank_lines() -> None:
    """Test two blocks separated by a blank line, without a header."""
    grid = parse_grid("+0\n0+\n\n0+\n+0\n")
    assert len(grid.matrices) == 2
    assert grid.weights is None
    assert not grid.flag("skew")


@pytest.mark.parametrize(
    ("text", "line", "column"),
    [
        ("+0\n0x\n", 2, 2),
        ("+0\n0\n", 2, 2),
        ("+0+\n0+0\n", 3, 1),
        ("# order=3\n+0\n0+\n", 2, 1),
        ("# weights=1,1\n+0\n0+\n", 1, 1),
        ("# only a comment\n", 1, 1),
    ],
)
def test_parse_errors(text: str, line: int, column: int) -> None:
    """Test that malformed grids report the line and column of the first problem."""
    with pytest.raises(GridParseError) as excinfo:
        parse_grid(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_make_grid_header() -> None:
    """Test that the order comes first and booleans and lists are spelled out."""
    dw = builtin_seed_dw("dw28")
    grid = make_grid(dw.matrices, kind="dw", weights=dw.weights, skew=True)
    assert list(grid.header) == ["order", "kind", "weights", "skew"]
    assert grid.header["weights"] == "9,9,9"
    assert grid.flag("skew")
    assert parse_grid(format_grid(grid)) == grid


def test_json_form() -> None:
    """Test that the JSON form holds the same grid."""
    grid = parse_grid(SMALL)
    assert parse_grid_json(grid_to_json(grid)) == grid


def test_json_errors() -> None:
    """Test that invalid JSON and bad entries are reported."""
    with pytest.raises(GridParseError):
        parse_grid_json("{")
    with pytest.raises(GridParseError):
        parse_grid_json('{"matrices": [[[2]]]}')
    with pytest.raises(GridParseError):
        parse_grid_json('{"matrices": []}')


def test_read_and_write() -> None:
    """Test writing a grid in both forms and reading it back by suffix."""
    grid = parse_grid(SMALL)
    with tempfile.TemporaryDirectory() as temp_dir:
        text_path: Path = write_grid(Path(temp_dir, "k.grid"), grid)
        json_path: Path = write_grid(Path(temp_dir, "k.json"), grid, as_json=True)
        assert read_grid(text_path) == grid
        assert read_grid(json_path) == grid
