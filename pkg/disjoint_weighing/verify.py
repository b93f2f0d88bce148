"""Certifiers for weighing-matrix properties.

Every certifier is pure and total on well-formed input: it returns a Certificate listing each named check, and
a failing check carries the lexicographically first offending location as its witness.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING

import numpy as np

from disjoint_weighing.errors import ShapeMismatch
from disjoint_weighing.matcore import (
    Matrix,
    TernaryMatrix,
    abs_matrix,
    first_mismatch,
    identity,
    ones,
    scale,
    subject_hash,
    total,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from disjoint_weighing.construct import PairFamily

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    location: tuple[int, ...]
    found: str
    expected: str

    def __str__(self) -> str:
        where: str = ",".join(str(index) for index in self.location)
        return f"at=({where}) found={self.found} expected={self.expected}"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Witness | None = None
    detail: str = ""

    def __post_init__(self) -> None:
        if self.passed and self.witness is not None:
            msg: str = f"check {self.name} passed but carries a witness"
            raise ValueError(msg)
        if not self.passed and self.witness is None:
            msg = f"check {self.name} failed without a witness"
            raise ValueError(msg)


@dataclass(frozen=True)
class Certificate:
    subject: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[Check]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        msg: str = f"certificate has no check named {name!r}"
        raise KeyError(msg)

    def names(self) -> list[str]:
        return [check.name for check in self.checks]


def combine(subject: str, certificates: Iterable[Certificate], prefixes: Iterable[str] | None = None) -> Certificate:
    """Merge several certificates under one subject, optionally prefixing their check names."""
    checks: list[Check] = []
    prefix_list: list[str] | None = list(prefixes) if prefixes is not None else None
    for index, certificate in enumerate(certificates):
        prefix: str = f"{prefix_list[index]}." if prefix_list is not None else ""
        checks.extend(
            Check(name=f"{prefix}{c.name}", passed=c.passed, witness=c.witness, detail=c.detail)
            for c in certificate.checks
        )
    return Certificate(subject=subject, checks=tuple(checks))


def equality_check(name: str, actual: Matrix, expected: Matrix, prefix: tuple[int, ...] = ()) -> Check:
    """Compare two matrices; the witness is the first differing entry, prefixed by the given location."""
    mismatch: tuple[int, int] | None = first_mismatch(actual, expected)
    if mismatch is None:
        return Check(name=name, passed=True)
    return Check(
        name=name,
        passed=False,
        witness=Witness(
            location=(*prefix, *mismatch),
            found=str(actual[mismatch]),
            expected=str(expected[mismatch]),
        ),
    )


def _first_true(mask: NDArray) -> tuple[int, ...] | None:
    hits: NDArray = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def is_weighing(W: TernaryMatrix, w: int) -> Certificate:
    """Check W Wᵀ = w I."""
    check: Check = equality_check("weighing", W @ W.T, scale(w, identity(W.order)))
    return Certificate(subject=W.content_hash(), checks=(check,))


def is_skew(W: TernaryMatrix) -> Certificate:
    """Check Wᵀ = -W."""
    return Certificate(subject=W.content_hash(), checks=(equality_check("skew", W.T, -W),))


def is_symmetric(W: TernaryMatrix) -> Certificate:
    return Certificate(subject=W.content_hash(), checks=(equality_check("symmetric", W.T, W),))


def _family_order(Ws: Sequence[TernaryMatrix]) -> int:
    if not Ws:
        msg = "an empty family has no order"
        raise ShapeMismatch(msg)
    orders: set[int] = {W.order for W in Ws}
    if len(orders) != 1:
        msg = f"family members have different orders {sorted(orders)}"
        raise ShapeMismatch(msg)
    return Ws[0].order


def is_disjoint_family(Ws: Sequence[TernaryMatrix]) -> Certificate:
    """Check pairwise disjoint supports and whether the supports cover J - I exactly.

    Raises:
        ShapeMismatch: If the family is empty or the orders differ.

    Returns:
        Certificate with checks "disjoint" and "complete_cover".
    """
    n: int = _family_order(Ws)
    support_sum = total(abs_matrix(W) for W in Ws)

    overlap: tuple[int, ...] | None = _first_true(support_sum.entries > 1)
    disjoint = Check(name="disjoint", passed=True)
    if overlap is not None:
        disjoint = Check(
            name="disjoint",
            passed=False,
            witness=Witness(location=overlap, found=str(support_sum[overlap]), expected="<=1"),  # type: ignore
        )

    cover: Check = equality_check("complete_cover", support_sum, ones(n) - identity(n))
    return Certificate(subject=subject_hash(Ws), checks=(disjoint, cover))


def is_antiamicable_family(Ws: Sequence[TernaryMatrix]) -> Certificate:
    """Check W_i W_jᵀ + W_j W_iᵀ = 0 for every pair i < j; the witness location is (i, j, row, column)."""
    n: int = _family_order(Ws)
    zero = scale(0, identity(n))
    for i, j in combinations(range(len(Ws)), 2):
        check: Check = equality_check("antiamicable", Ws[i] @ Ws[j].T + Ws[j] @ Ws[i].T, zero, prefix=(i, j))
        if not check.passed:
            return Certificate(subject=subject_hash(Ws), checks=(check,))
    return Certificate(subject=subject_hash(Ws), checks=(Check(name="antiamicable", passed=True),))


def is_hadamard(H: Matrix) -> Certificate:
    """Check ±1 entries and H Hᵀ = n I."""
    zero_at: tuple[int, ...] | None = _first_true(H.entries == 0)
    entries = Check(name="plus_minus_one", passed=True)
    if zero_at is not None:
        entries = Check(
            name="plus_minus_one",
            passed=False,
            witness=Witness(location=zero_at, found="0", expected="+1 or -1"),
        )
    product: Check = equality_check("hadamard", H @ H.T, scale(H.order, identity(H.order)))
    return Certificate(subject=H.content_hash(), checks=(entries, product))


def is_signed_permutation(K: Matrix) -> Certificate:
    """Check every row and column has exactly one non-zero entry, each ±1."""
    support: NDArray = np.abs(K.entries)
    for axis, label in ((1, "row"), (0, "column")):
        counts: NDArray = (support != 0).sum(axis=axis)
        bad: tuple[int, ...] | None = _first_true(counts != 1)
        if bad is not None:
            witness = Witness(location=bad, found=f"{counts[bad[0]]} non-zero in {label}", expected="1")
            return Certificate(subject=K.content_hash(), checks=(Check("signed_permutation", False, witness),))
    magnitude: tuple[int, ...] | None = _first_true(support > 1)
    if magnitude is not None:
        witness = Witness(location=magnitude, found=str(K[magnitude]), expected="+1 or -1")  # type: ignore
        return Certificate(subject=K.content_hash(), checks=(Check("signed_permutation", False, witness),))
    return Certificate(subject=K.content_hash(), checks=(Check("signed_permutation", True),))


def _first_failure(name: str, certificates: Iterable[tuple[int, Certificate]]) -> Check:
    """Fold per-pair certificates into one check whose witness is prefixed by the pair index."""
    for index, certificate in certificates:
        for check in certificate.checks:
            if not check.passed and check.witness is not None:
                witness = Witness(
                    location=(index, *check.witness.location),
                    found=check.witness.found,
                    expected=check.witness.expected,
                )
                return Check(name=name, passed=False, witness=witness, detail=check.name)
    return Check(name=name, passed=True)


def check_pair_conditions(family: PairFamily) -> Certificate:
    """Check the defining conditions of an HK or LM pair family.

    Both kinds pair a Hadamard matrix with a signed permutation, need H_i K_iᵀ = K_i H_iᵀ and need the
    partners to cover J - I exactly. The Hadamards are symmetric. HK partners are skew; LM partners are
    symmetric with zero diagonal.

    Returns:
        Certificate with one check per condition; witnesses start with the pair index.
    """
    hadamards: list[TernaryMatrix] = [pair[0] for pair in family.pairs]
    partners: list[TernaryMatrix] = [pair[1] for pair in family.pairs]
    checks: list[Check] = [
        _first_failure("hadamard", enumerate(is_hadamard(H) for H in hadamards)),
        _first_failure("symmetric_hadamard", enumerate(is_symmetric(H) for H in hadamards)),
        _first_failure("signed_permutation", enumerate(is_signed_permutation(K) for K in partners)),
    ]
    if family.kind.value == "HK":
        checks.append(_first_failure("skew_partner", enumerate(is_skew(K) for K in partners)))
    else:
        checks.append(_first_failure("symmetric_partner", enumerate(is_symmetric(M) for M in partners)))
        zero_diagonal: Check = Check(name="zero_diagonal", passed=True)
        for index, M in enumerate(partners):
            diagonal_hit: tuple[int, ...] | None = _first_true(np.diag(M.entries) != 0)
            if diagonal_hit is not None:
                zero_diagonal = Check(
                    name="zero_diagonal",
                    passed=False,
                    witness=Witness(location=(index, diagonal_hit[0], diagonal_hit[0]), found="non-zero", expected="0"),
                )
                break
        checks.append(zero_diagonal)

    commuting = (
        (index, Certificate(subject="", checks=(equality_check("commuting", H @ K.T, K @ H.T),)))
        for index, (H, K) in enumerate(family.pairs)
    )
    checks.append(_first_failure("commuting", commuting))

    if partners:
        checks.extend(c for c in is_disjoint_family(partners).checks if c.name == "complete_cover")
    else:
        checks.append(Check(name="complete_cover", passed=True, detail="empty family"))

    logger.debug("Checked %s pair family of order %d: %d checks", family.kind.value, family.order, len(checks))
    return Certificate(subject=subject_hash([*hadamards, *partners]), checks=tuple(checks))


def certify_dw(Ws: Sequence[TernaryMatrix], weights: Sequence[int]) -> Certificate:
    """Certify a candidate disjoint weighing family.

    Checks every member is a weighing matrix of its weight and skew, plus disjointness and complete cover.

    Raises:
        ShapeMismatch: If the family is empty, orders differ, or weights do not match the members.
    """
    if len(Ws) != len(weights):
        msg: str = f"{len(Ws)} matrices but {len(weights)} weights"
        raise ShapeMismatch(msg)
    family: Certificate = is_disjoint_family(Ws)
    certificates: list[Certificate] = [is_weighing(W, w) for W, w in zip(Ws, weights, strict=True)]
    skews: list[Certificate] = [is_skew(W) for W in Ws]
    checks: list[Check] = [
        _first_failure("weighing", enumerate(certificates)),
        _first_failure("skew", enumerate(skews)),
        *family.checks,
    ]
    return Certificate(subject=family.subject, checks=tuple(checks))


def is_orthogonal_design(Ws: Sequence[TernaryMatrix], weights: Sequence[int]) -> Certificate:
    """Check the family gives an orthogonal design: weighing, disjoint and antiamicable."""
    dw: Certificate = certify_dw(Ws, weights)
    checks: list[Check] = [c for c in dw.checks if c.name in {"weighing", "disjoint"}]
    checks.extend(is_antiamicable_family(Ws).checks)
    return Certificate(subject=dw.subject, checks=tuple(checks))
