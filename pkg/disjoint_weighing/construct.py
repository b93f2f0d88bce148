"""Constructions of skew disjoint weighing matrices.

Goethals-Seidel assembly from circulant seed quadruples, the built-in order-28 and order-52 triples, the HK and LM
pair families of Hadamard matrices and signed permutations, the lift that grows a skew DW collection, and the four
infinite families built by iterating the lift.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from disjoint_weighing.errors import (
    InvalidEntry,
    MissingBaseData,
    NotAWeighingSeed,
    ParamMismatch,
    SeedNotSkew,
    ShapeMismatch,
    UncertifiedInput,
    UnknownFamily,
)
from disjoint_weighing.matcore import (
    IntMatrix,
    Matrix,
    TernaryMatrix,
    as_ternary,
    back_identity,
    circulant,
    identity,
    kronecker,
    kronecker_power,
    ones,
    scale,
    total,
)
from disjoint_weighing.verify import Certificate, certify_dw

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GSQuadSeed:
    """First rows a, b, c, d of the four circulants plugged into the Goethals-Seidel array."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths: set[int] = {len(self.a), len(self.b), len(self.c), len(self.d)}
        if len(lengths) != 1:
            msg: str = f"seed rows have different lengths {sorted(lengths)}"
            raise ShapeMismatch(msg)
        if self.n < 1 or self.n % 2 == 0:
            msg = f"seed block order must be a positive odd integer, got {self.n}"
            raise ShapeMismatch(msg)
        for name, row in zip("abcd", self.rows, strict=True):
            if any(value not in {-1, 0, 1} for value in row):
                msg = f"seed row {name} has entries outside -1, 0, 1: {row}"
                raise InvalidEntry(msg)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def weight(self) -> int:
        return sum(value != 0 for row in self.rows for value in row)

    def is_skew_seed(self) -> bool:
        return self.a[0] == 0 and all(self.a[j] == -self.a[self.n - j] for j in range(1, self.n))


def gs_array(seed: GSQuadSeed) -> TernaryMatrix:
    """Assemble the Goethals-Seidel array without any validation."""
    A, B, C, D = (circulant(row) for row in seed.rows)
    R = back_identity(seed.n).entries
    a, b, c, d = A.entries, B.entries, C.entries, D.entries
    layout: list[list[np.ndarray]] = [
        [a, b @ R, c @ R, d @ R],
        [-(b @ R), a, d.T @ R, -(c.T @ R)],
        [-(c @ R), -(d.T @ R), a, b.T @ R],
        [-(d @ R), c.T @ R, -(b.T @ R), a],
    ]
    return TernaryMatrix(np.block(layout))


def gram_sum(seed: GSQuadSeed) -> IntMatrix:
    """Σ XXᵀ over the four circulants of a seed."""
    return total(X @ X.T for X in (circulant(row) for row in seed.rows))


def gs_assemble(seed: GSQuadSeed) -> TernaryMatrix:
    """Build a skew weighing matrix W(4n, w) from a seed quadruple.

    Args:
        seed: The four first rows; w is the number of non-zero entries across them.

    Raises:
        SeedNotSkew: If the first row of A is not skew.
        NotAWeighingSeed: If AAᵀ + BBᵀ + CCᵀ + DDᵀ is not w I.

    Returns:
        The 4n x 4n skew weighing matrix.
    """
    if not seed.is_skew_seed():
        msg: str = f"first row of A is not skew: {seed.a}"
        raise SeedNotSkew(msg)
    if gram_sum(seed) != scale(seed.weight, identity(seed.n)):
        msg = f"seed of order {seed.n} does not satisfy the Gram condition for weight {seed.weight}"
        raise NotAWeighingSeed(msg)
    return gs_array(seed)


DW28_SEEDS: tuple[GSQuadSeed, ...] = (
    GSQuadSeed(
        a=(0, 1, 0, 0, 0, 0, -1),
        b=(0, 0, 0, 1, 0, 1, 0),
        c=(0, 0, 0, 0, 0, 1, 0),
        d=(-1, 1, 1, 0, 1, 0, 0),
    ),
    GSQuadSeed(
        a=(0, 0, 0, 1, -1, 0, 0),
        b=(0, 0, 0, 0, 0, 0, 1),
        c=(-1, 1, 1, 0, 1, 0, 0),
        d=(0, 0, 0, 0, 0, 1, 1),
    ),
    GSQuadSeed(
        a=(0, 0, 1, 0, 0, -1, 0),
        b=(-1, 1, 1, 0, 1, 0, 0),
        c=(0, 0, 0, 1, 0, 0, 1),
        d=(0, 0, 0, 1, 0, 0, 0),
    ),
)

DW52_SEEDS: tuple[GSQuadSeed, ...] = (
    GSQuadSeed(
        a=(0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
        b=(1, -1, -1, -1, -1, 0, -1, 0, 0, 0, 0, 0, 0),
        c=(1, -1, 1, 1, -1, -1, 0, 0, 0, 0, 0, 0, 0),
        d=(0, 0, 0, 0, -1, 0, 0, 1, -1, 0, -1, 0, 1),
    ),
    GSQuadSeed(
        a=(0, 1, 0, 1, 1, -1, 0, 0, 1, -1, -1, 0, -1),
        b=(0, 0, 0, 0, 0, -1, 0, 0, 1, -1, 0, -1, 0),
        c=(0, 0, 0, 0, 0, 0, -1, 0, 0, -1, -1, 0, 0),
        d=(0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0),
    ),
    GSQuadSeed(
        a=(0, 0, 1, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0),
        b=(0, 0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, -1),
        c=(0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, -1, -1),
        d=(1, 1, 1, -1, 0, 1, 0, 0, 0, -1, 0, 0, 0),
    ),
)

BUILTIN_SEEDS: dict[str, tuple[GSQuadSeed, ...]] = {"dw28": DW28_SEEDS, "dw52": DW52_SEEDS}


@dataclass(frozen=True)
class Certification:
    weighing: bool
    skew: bool
    disjoint: bool
    complete_cover: bool

    @classmethod
    def from_certificate(cls, certificate: Certificate) -> Certification:
        flags: dict[str, bool] = {
            name: certificate.check(name).passed for name in ("weighing", "skew", "disjoint", "complete_cover")
        }
        return cls(**flags)

    @property
    def complete(self) -> bool:
        return self.weighing and self.skew and self.disjoint and self.complete_cover


@dataclass(frozen=True)
class DWCollection:
    order: int
    matrices: tuple[TernaryMatrix, ...]
    weights: tuple[int, ...]
    certified: Certification
    certificate: Certificate = field(repr=False, compare=False)

    @property
    def k(self) -> int:
        return len(self.matrices)


def certify_collection(
    matrices: Sequence[TernaryMatrix],
    weights: Sequence[int],
    *,
    require: bool = False,
) -> DWCollection:
    """Wrap matrices in a DWCollection whose flags come from running the certifiers.

    Args:
        matrices: The candidate family.
        weights: One weight per matrix.
        require: Raise instead of returning a collection with a false flag.

    Raises:
        UncertifiedInput: If require is set and some check fails.

    Returns:
        The collection.
    """
    certificate: Certificate = certify_dw(matrices, weights)
    if require and not certificate.passed:
        failed: list[str] = [str(check.name) for check in certificate.failures()]
        msg: str = f"collection of order {matrices[0].order} failed checks {failed}"
        raise UncertifiedInput(msg)
    return DWCollection(
        order=matrices[0].order,
        matrices=tuple(matrices),
        weights=tuple(int(w) for w in weights),
        certified=Certification.from_certificate(certificate),
        certificate=certificate,
    )


@lru_cache
def builtin_seed_dw(which: str) -> DWCollection:
    """The built-in skew DW(28;[9]^3) ("dw28") or DW(52;[17]^3) ("dw52").

    Raises:
        UnknownFamily: For any other name.
    """
    if which not in BUILTIN_SEEDS:
        msg: str = f"no built-in seed triple named {which!r}; known: {sorted(BUILTIN_SEEDS)}"
        raise UnknownFamily(msg)
    seeds: tuple[GSQuadSeed, ...] = BUILTIN_SEEDS[which]
    matrices: list[TernaryMatrix] = [gs_assemble(seed) for seed in seeds]
    collection: DWCollection = certify_collection(matrices, [seed.weight for seed in seeds], require=True)
    logger.info("Built %s: order %d, weights %s", which, collection.order, collection.weights)
    return collection


class PairKind(Enum):
    HK = "HK"
    LM = "LM"


Pair = tuple[TernaryMatrix, TernaryMatrix]


@dataclass(frozen=True)
class PairFamily:
    m: int
    kind: PairKind
    pairs: tuple[Pair, ...]

    @property
    def order(self) -> int:
        return 2**self.m

    @property
    def hadamards(self) -> tuple[TernaryMatrix, ...]:
        return tuple(pair[0] for pair in self.pairs)

    @property
    def perms(self) -> tuple[TernaryMatrix, ...]:
        return tuple(pair[1] for pair in self.pairs)


def base_pair() -> Pair:
    """H = [[1, 1], [1, -1]] and K = [[0, 1], [-1, 0]]."""
    return TernaryMatrix([[1, 1], [1, -1]]), TernaryMatrix([[0, 1], [-1, 0]])


def _t(matrix: Matrix) -> TernaryMatrix:
    return as_ternary(matrix)


def _order_four_symmetric() -> TernaryMatrix:
    """I₂⊗(Q+R) + R⊗(Q−R) with Q = diag(1, -1) and R = J₂ − I₂."""
    Q = TernaryMatrix([[1, 0], [0, -1]])
    R = _t(ones(2) - identity(2))
    return _t(kronecker(identity(2), Q + R) + kronecker(R, Q - R))


@lru_cache
def pair_family(m: int) -> tuple[PairFamily, PairFamily]:
    """Build the HK and LM pair families of order 2^m.

    HK pairs are (symmetric Hadamard, skew signed permutation); LM pairs are (symmetric Hadamard, symmetric
    zero-diagonal signed permutation). Both families grow together: the order 2^m families come from those of
    order 2^(m-1). At m = 1 the LM family is empty.

    Args:
        m: Positive integer.

    Raises:
        ParamMismatch: If m < 1.

    Returns:
        (HK family, LM family).
    """
    if m < 1:
        msg: str = f"pair families need m >= 1, got {m}"
        raise ParamMismatch(msg)

    H, K = base_pair()
    I2: TernaryMatrix = identity(2)
    R: TernaryMatrix = _t(ones(2) - identity(2))
    G: TernaryMatrix = _order_four_symmetric()

    if m == 1:
        return PairFamily(1, PairKind.HK, ((H, K),)), PairFamily(1, PairKind.LM, ())

    if m == 2:
        Q = TernaryMatrix([[1, 0], [0, -1]])
        hk: list[Pair] = [
            (_t(kronecker(H, H)), _t(kronecker(K, I2))),
            (_t(kronecker(H, H)), _t(kronecker(I2, K))),
            (G, _t(kronecker(R, K))),
        ]
        lm: list[Pair] = [
            (G, _t(kronecker(R, I2))),
            (_t(kronecker(Q + R, I2) + kronecker(Q - R, R)), _t(kronecker(I2, R))),
            (_t(kronecker(H, H)), _t(kronecker(K, K))),
        ]
        return PairFamily(2, PairKind.HK, tuple(hk)), PairFamily(2, PairKind.LM, tuple(lm))

    previous_hk, previous_lm = pair_family(m - 1)
    half: TernaryMatrix = identity(2 ** (m - 1))
    hk = [(_t(kronecker(H, Hj)), _t(kronecker(I2, Kj))) for Hj, Kj in previous_hk.pairs]
    hk += [(_t(kronecker(H, Lj)), _t(kronecker(K, Mj))) for Lj, Mj in previous_lm.pairs]
    hk.append((_t(kronecker_power(H, m)), _t(kronecker(K, half))))

    lm = [(_t(kronecker(H, Hj)), _t(kronecker(K, Kj))) for Hj, Kj in previous_hk.pairs]
    lm += [(_t(kronecker(H, Lj)), _t(kronecker(I2, Mj))) for Lj, Mj in previous_lm.pairs]
    # G has order 4, so H^{⊗(m-2)} brings the Hadamard to order 2^m.
    lm.append((_t(kronecker(G, kronecker_power(H, m - 2))), _t(kronecker(R, half))))

    logger.debug("Built pair families of order %d", 2**m)
    return PairFamily(m, PairKind.HK, tuple(hk)), PairFamily(m, PairKind.LM, tuple(lm))


def lift(dw: DWCollection, family: PairFamily) -> DWCollection:
    """Lift a skew DW(km+1;[m]^k) to a skew DW((k+1)(km+1);[(k+1)m+1]^k).

    W̃_i = H_i⊗W_i + K_i⊗I using the first k pairs of an HK family of order k+1.

    Args:
        dw: A fully certified skew collection with equal weights m and order km+1.
        family: An HK family of order k+1.

    Raises:
        UncertifiedInput: If dw is not certified skew, disjoint and complete.
        ParamMismatch: If the family kind or order or the collection's parameters do not fit.

    Returns:
        The lifted, certified collection.
    """
    if not dw.certified.complete:
        msg: str = f"lift needs a certified skew complete collection, got {dw.certified}"
        raise UncertifiedInput(msg)
    if family.kind is not PairKind.HK:
        msg = f"lift needs an HK family, got {family.kind.value}"
        raise ParamMismatch(msg)

    k: int = dw.k
    if len(set(dw.weights)) != 1:
        msg = f"lift needs equal weights, got {dw.weights}"
        raise ParamMismatch(msg)
    m: int = dw.weights[0]
    if dw.order != k * m + 1:
        msg = f"order {dw.order} != k*m+1 = {k * m + 1}"
        raise ParamMismatch(msg)
    if family.order != k + 1 or len(family.pairs) < k:
        msg = f"family of order {family.order} with {len(family.pairs)} pairs cannot lift k={k} matrices"
        raise ParamMismatch(msg)

    I: TernaryMatrix = identity(dw.order)
    lifted: list[TernaryMatrix] = [
        _t(kronecker(H, W) + kronecker(K, I)) for (H, K), W in zip(family.pairs[:k], dw.matrices, strict=False)
    ]
    result: DWCollection = certify_collection(lifted, [(k + 1) * m + 1] * k, require=True)
    logger.info("Lifted DW(%d;[%d]^%d) to DW(%d;[%d]^%d)", dw.order, m, k, result.order, result.weights[0], k)
    return result


def powers2(n: int, m: int) -> DWCollection:
    """Skew DW(2^{mn};[(2^{mn}-1)/(2^n-1)]^{2^n-1}).

    The base (m = 1) is the HK family's signed permutations of order 2^n as DW(2^n;[1]^{2^n-1}); each further m
    is one lift with that family.

    Raises:
        ParamMismatch: If n < 2 or m < 1.
    """
    if n < 2 or m < 1:
        msg: str = f"powers2 needs n >= 2 and m >= 1, got n={n}, m={m}"
        raise ParamMismatch(msg)
    hk, _ = pair_family(n)
    collection: DWCollection = certify_collection(list(hk.perms), [1] * len(hk.perms), require=True)
    for _ in range(m - 1):
        collection = lift(collection, hk)
    return collection


def _lift_times(base: DWCollection, m: int) -> DWCollection:
    if m < 0:
        msg: str = f"family index m must be >= 0, got {m}"
        raise ParamMismatch(msg)
    hk, _ = pair_family(2)
    collection: DWCollection = base
    for _ in range(m):
        collection = lift(collection, hk)
    return collection


def f7(m: int) -> DWCollection:
    """Skew DW(7·4^{m+1};[(7·4^{m+1}-1)/3]^3), lifting dw28 m times."""
    return _lift_times(builtin_seed_dw("dw28"), m)


def f13(m: int) -> DWCollection:
    """Skew DW(13·4^{m+1};[(13·4^{m+1}-1)/3]^3), lifting dw52 m times."""
    return _lift_times(builtin_seed_dw("dw52"), m)


def f10(m: int, base: DWCollection | None = None) -> DWCollection:
    """Skew DW(10·4^{m+1};[(10·4^{m+1}-1)/3]^3) from a user-supplied DW(40;[13]^3).

    Raises:
        MissingBaseData: If no base collection is given.
        ParamMismatch: If the base is not a DW(40;[13]^3).
    """
    if base is None:
        msg = "f10 needs a DW(40;13,13,13) base, which is not built in; pass one from a sign-grid file"
        raise MissingBaseData(msg)
    if base.order != 40 or base.weights != (13, 13, 13):  # noqa: PLR2004
        msg = f"f10 base must be DW(40;[13]^3), got order {base.order} weights {base.weights}"
        raise ParamMismatch(msg)
    return _lift_times(base, m)


FAMILIES: tuple[str, ...] = ("powers2", "f7", "f10", "f13")


def family(which: str, *, m: int, n: int | None = None, base: DWCollection | None = None) -> DWCollection:
    """Dispatch to one of the four infinite families by name.

    Raises:
        UnknownFamily: If which is not a family name.
        ParamMismatch: If powers2 is requested without n.
    """
    match which:
        case "powers2":
            if n is None:
                msg: str = "powers2 needs n"
                raise ParamMismatch(msg)
            return powers2(n, m)
        case "f7":
            return f7(m)
        case "f10":
            return f10(m, base)
        case "f13":
            return f13(m)
    msg = f"unknown family {which!r}; known: {', '.join(FAMILIES)}"
    raise UnknownFamily(msg)
