"""Names for the trusted built-in data, and loading of everything else from sign-grid files.

DW collections: builtin:dw28, builtin:dw52, builtin:base (K as a DW(2;[1])), builtin:powers2:n=2,m=2, builtin:f7:m=1,
builtin:f13:m=1. Hadamard matrices: sylvester, sylvester:<order>, paley:<order>. Any other source is a file path.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from pathlib import Path

from disjoint_weighing.construct import (
    DWCollection,
    PairFamily,
    base_pair,
    builtin_seed_dw,
    certify_collection,
    f7,
    f10,
    f13,
    pair_family,
    powers2,
)
from disjoint_weighing.errors import ParamMismatch, UnknownFamily
from disjoint_weighing.gridfile import SignGrid, read_grid
from disjoint_weighing.matcore import TernaryMatrix
from disjoint_weighing.scheme import normalize_hadamard, paley_hadamard, sylvester_hadamard

logger: logging.Logger = logging.getLogger(__name__)

BUILTIN_PREFIX: str = "builtin:"
CONSTRUCT_SPECS: tuple[str, ...] = (
    "dw28",
    "dw52",
    "base",
    "powers2:n=<n>,m=<m>",
    "f7:m=<m>",
    "f10:m=<m> (needs --base)",
    "f13:m=<m>",
    "pairs:m=<m>",
)


def parse_family_spec(spec: str) -> tuple[str, dict[str, int]]:
    """Split "powers2:n=2,m=2" into ("powers2", {"n": 2, "m": 2}).

    Raises:
        UnknownFamily: If the parameters are not key=integer pairs.
    """
    name, _, raw = spec.partition(":")
    parameters: dict[str, int] = {}
    for item in filter(None, raw.split(",")):
        key, equals, value = item.partition("=")
        if not equals:
            msg: str = f"cannot read parameter {item!r} in {spec!r}; expected key=value"
            raise UnknownFamily(msg)
        try:
            parameters[key.strip()] = int(value)
        except ValueError as e:
            msg = f"parameter {key.strip()} in {spec!r} is not an integer"
            raise UnknownFamily(msg) from e
    return name.strip(), parameters


def _require(parameters: dict[str, int], key: str, spec: str) -> int:
    if key not in parameters:
        msg: str = f"{spec!r} needs {key}=<integer>"
        raise UnknownFamily(msg)
    return parameters[key]


def base_dw() -> DWCollection:
    """K = [[0, 1], [-1, 0]] as the skew DW(2;[1])."""
    _, K = base_pair()
    return certify_collection([K], [1], require=True)


def dw_from_grid(grid: SignGrid) -> DWCollection:
    """Certify the matrices of a grid; weights come from the header or from the first row's support."""
    weights: tuple[int, ...] = grid.weights or tuple(int((matrix.entries[0] != 0).sum()) for matrix in grid.matrices)
    return certify_collection(list(grid.matrices), list(weights))


def build_dw(spec: str, base: DWCollection | None = None) -> DWCollection:
    """Build a named DW collection.

    Raises:
        UnknownFamily: If the name or its parameters are not recognized.
        MissingBaseData: For f10 without a base.
    """
    name, parameters = parse_family_spec(spec)
    match name:
        case "dw28" | "dw52":
            return builtin_seed_dw(name)
        case "base":
            return base_dw()
        case "powers2":
            return powers2(_require(parameters, "n", spec), _require(parameters, "m", spec))
        case "f7":
            return f7(_require(parameters, "m", spec))
        case "f10":
            return f10(_require(parameters, "m", spec), base)
        case "f13":
            return f13(_require(parameters, "m", spec))
    msg: str = f"unknown family {spec!r}; valid: {', '.join(CONSTRUCT_SPECS)}"
    raise UnknownFamily(msg)


def build_pairs(spec: str) -> tuple[PairFamily, PairFamily]:
    """The HK and LM families for a "pairs:m=<m>" spec."""
    name, parameters = parse_family_spec(spec)
    if name != "pairs":
        msg: str = f"{spec!r} is not a pairs spec"
        raise UnknownFamily(msg)
    return pair_family(_require(parameters, "m", spec))


def load_dw(source: str, base: DWCollection | None = None) -> DWCollection:
    """A DW collection from "builtin:<spec>" or a sign-grid file path."""
    if source.startswith(BUILTIN_PREFIX):
        return build_dw(source.removeprefix(BUILTIN_PREFIX), base)
    return dw_from_grid(read_grid(Path(source)))


@lru_cache
def _paley_for_order(order: int) -> TernaryMatrix:
    return paley_hadamard(order - 1)


def load_hadamard(source: str, order: int) -> TernaryMatrix:
    """A normalized Hadamard matrix of the given order.

    Args:
        source: "sylvester", "sylvester:<order>", "paley:<order>" or a sign-grid file whose first block is used.
        order: The order the caller needs.

    Raises:
        ParamMismatch: If the named construction has no matrix of that order.
    """
    name, _, raw_order = source.partition(":")
    if name in {"sylvester", "paley"}:
        requested: int = int(raw_order) if raw_order.isdigit() else order
        if requested != order:
            msg: str = f"{source} has order {requested} but k*l+1 = {order}"
            raise ParamMismatch(msg)
        if name == "sylvester":
            if order & (order - 1):
                msg = f"k*l+1 = {order} is not a power of two, so there is no Sylvester Hadamard matrix of that order"
                raise ParamMismatch(msg)
            return sylvester_hadamard(order)
        return _paley_for_order(order)

    grid: SignGrid = read_grid(Path(source))
    return normalize_hadamard(grid.matrices[0])


def _powers2_index(k: int, m: int) -> tuple[int, int] | None:
    n: int = (k + 1).bit_length() - 1
    if n < 2 or 2**n != k + 1:
        return None
    for lifts in range(1, 8):
        if (2 ** (n * lifts) - 1) // k == m and k * m + 1 == 2 ** (n * lifts):
            return n, lifts
    return None


def default_dw(k: int, m: int) -> str | None:
    """The builtin name of a DW(km+1;[m]^k), or None when nothing built in fits."""
    if (k, m) == (1, 1):
        return f"{BUILTIN_PREFIX}base"
    if k == 3:
        for family, core in (("f7", 7), ("f13", 13)):
            for lifts in range(6):
                if 3 * m + 1 == core * 4 ** (lifts + 1):
                    seed: str = {"f7": "dw28", "f13": "dw52"}[family]
                    return f"{BUILTIN_PREFIX}{seed}" if lifts == 0 else f"{BUILTIN_PREFIX}{family}:m={lifts}"
    found: tuple[int, int] | None = _powers2_index(k, m)
    if found is not None:
        return f"{BUILTIN_PREFIX}powers2:n={found[0]},m={found[1]}"
    return None
