"""Association schemes built from a skew DW collection and a normalized Hadamard matrix.

Vertices are triples (u, block, v) with u < km+1, block < l and v < kl+1, flattened in that order, which is the
Kronecker factor order of every relation matrix built here.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np
from numpy.typing import NDArray
from sympy.ntheory import isprime, legendre_symbol

from disjoint_weighing.construct import DWCollection
from disjoint_weighing.errors import NotNormalized, ParamMismatch, UncertifiedInput
from disjoint_weighing.matcore import (
    IntMatrix,
    Matrix,
    TernaryMatrix,
    as_ternary,
    back_circulant,
    identity,
    kronecker,
    kronecker_all,
    kronecker_power,
    ones,
    scale,
    total,
)
from disjoint_weighing.verify import Certificate, Check, Witness, equality_check, is_hadamard

logger: logging.Logger = logging.getLogger(__name__)

Split = tuple[TernaryMatrix, TernaryMatrix]


def sylvester_hadamard(order: int) -> TernaryMatrix:
    """The Sylvester Hadamard matrix H₂^{⊗t} of order 2^t; order 1 gives [[1]].

    Raises:
        ParamMismatch: If order is not a power of two.
    """
    if order < 1 or order & (order - 1):
        msg: str = f"Sylvester Hadamard matrices exist only for powers of two, not order {order}"
        raise ParamMismatch(msg)
    H2 = TernaryMatrix([[1, 1], [1, -1]])
    return as_ternary(kronecker_power(H2, order.bit_length() - 1))


def paley_hadamard(q: int) -> TernaryMatrix:
    """Hadamard matrix of order q+1 from the quadratic residues mod a prime q ≡ 3 (mod 4).

    Q[a][b] is the Legendre symbol of b - a, S borders Q with a first row of ones and a first column of minus ones,
    and H = I + S. The first row of H is all ones, so H is already normalized.

    Raises:
        ParamMismatch: If q is not a prime congruent to 3 mod 4.
    """
    if q < 3 or not isprime(q) or q % 4 != 3:  # noqa: PLR2004
        msg: str = f"Paley construction needs a prime q = 3 mod 4, got {q}"
        raise ParamMismatch(msg)

    jacobsthal: NDArray = np.zeros((q, q), dtype=np.int64)
    for a, b in product(range(q), repeat=2):
        if a != b:
            jacobsthal[a, b] = legendre_symbol((b - a) % q, q)

    S: NDArray = np.zeros((q + 1, q + 1), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = jacobsthal
    return TernaryMatrix(np.eye(q + 1, dtype=np.int64) + S)


def normalize_hadamard(H: TernaryMatrix) -> TernaryMatrix:
    """Flip column signs so the first row is all ones."""
    signs: NDArray = np.where(H.entries[0] < 0, -1, 1)
    return TernaryMatrix(H.entries * signs[np.newaxis, :])


def is_normalized(H: Matrix) -> bool:
    return bool(np.all(H.entries[0] == 1))


@dataclass(frozen=True)
class SchemeParams:
    """Inputs of the construction: a skew DW(km+1;[m]^k) and a normalized Hadamard matrix of order kl+1.

    Raises:
        UncertifiedInput: If the DW collection is not fully certified.
        ParamMismatch: If k, m or l do not match the inputs.
        NotNormalized: If the Hadamard matrix has a first row that is not all ones.
    """

    k: int
    m: int
    ell: int
    dw: DWCollection = field(repr=False)
    hadamard: TernaryMatrix = field(repr=False)

    def __post_init__(self) -> None:
        if min(self.k, self.m, self.ell) < 1:
            msg: str = f"k, m and l must be positive, got k={self.k}, m={self.m}, l={self.ell}"
            raise ParamMismatch(msg)
        if not self.dw.certified.complete:
            msg = f"scheme needs a certified skew DW collection, got {self.dw.certified}"
            raise UncertifiedInput(msg)
        if self.dw.k != self.k:
            msg = f"DW collection has {self.dw.k} matrices but k={self.k}"
            raise ParamMismatch(msg)
        if set(self.dw.weights) != {self.m}:
            msg = f"DW weights {self.dw.weights} are not all m={self.m}"
            raise ParamMismatch(msg)
        if self.dw.order != self.dw_order:
            msg = f"DW order {self.dw.order} != k*m+1 = {self.dw_order}"
            raise ParamMismatch(msg)
        if self.hadamard.order != self.hadamard_order:
            msg = f"Hadamard order {self.hadamard.order} != k*l+1 = {self.hadamard_order}"
            raise ParamMismatch(msg)
        if not is_hadamard(self.hadamard).passed:
            msg = f"the order-{self.hadamard.order} input is not a Hadamard matrix"
            raise ParamMismatch(msg)
        if not is_normalized(self.hadamard):
            msg = "Hadamard matrix must be normalized (first row all ones)"
            raise NotNormalized(msg)

    @property
    def dw_order(self) -> int:
        return self.k * self.m + 1

    @property
    def hadamard_order(self) -> int:
        return self.k * self.ell + 1

    @property
    def vertices(self) -> int:
        return self.dw_order * self.ell * self.hadamard_order

    @property
    def classes(self) -> int:
        return 4 if self.ell > 1 else 3


def split_dw(W: TernaryMatrix) -> Split:
    """Split W into 0/1 matrices (W₊, W₋) with W = W₊ - W₋."""
    return TernaryMatrix(W.entries == 1), TernaryMatrix(W.entries == -1)


def _first_failing(name: str, checks: Iterable[Check]) -> Check:
    for check in checks:
        if not check.passed:
            return Check(name=name, passed=False, witness=check.witness, detail=check.detail)
    return Check(name=name, passed=True)


def check_split_identity(W: TernaryMatrix, m: int) -> Certificate:
    """Check W₊W₋ + W₋W₊ - W₊² - W₋² = m I, which holds for every skew W(n, m)."""
    pos, neg = split_dw(W)
    lhs: IntMatrix = pos @ neg + neg @ pos - pos @ pos - neg @ neg
    check: Check = equality_check("split_identity", lhs, scale(m, identity(W.order)))
    return Certificate(subject=W.content_hash(), checks=(check,))


def hadamard_auxiliaries(H: TernaryMatrix) -> list[Split]:
    """Positive and negative parts of the rank-one matrices rᵀr for every row r of H after the first.

    Raises:
        NotNormalized: If the first row of H is not all ones.

    Returns:
        One (D₊, D₋) pair per non-first row, in row order.
    """
    if not is_normalized(H):
        msg = "Hadamard matrix must be normalized (first row all ones)"
        raise NotNormalized(msg)
    auxiliaries: list[Split] = []
    for row in H.entries[1:]:
        C: NDArray = np.outer(row, row)
        auxiliaries.append((TernaryMatrix(C == 1), TernaryMatrix(C == -1)))
    return auxiliaries


def check_auxiliary_identities(H: TernaryMatrix) -> Certificate:
    """Verify the algebra of the Hadamard auxiliaries with denominators cleared.

    With N the order of H, every D is symmetric, 2ΣD₊ = N I + (N-2) J, 2ΣD₋ = N (J - I), 2D² = N D₊ for either
    part, 2D₊D₋ = 2D₋D₊ = N D₋, 4D D' = N J for parts of different rows, and 2DJ = 2JD = N J.

    Raises:
        NotNormalized: If the first row of H is not all ones.
    """
    auxiliaries: list[Split] = hadamard_auxiliaries(H)
    N: int = H.order
    I, J = identity(N), ones(N)
    NJ: IntMatrix = scale(N, J)
    indexed: list[tuple[int, int, TernaryMatrix]] = [
        (i, j, pair[j]) for i, pair in enumerate(auxiliaries) for j in range(2)
    ]

    checks: list[Check] = [
        _first_failing("aux_symmetric", (equality_check("", D.T, D, (i, j)) for i, j, D in indexed)),
    ]
    if auxiliaries:
        positive_sum: IntMatrix = scale(2, total(pair[0] for pair in auxiliaries))
        negative_sum: IntMatrix = scale(2, total(pair[1] for pair in auxiliaries))
        checks.append(equality_check("aux_sum_positive", positive_sum, scale(N, I) + scale(N - 2, J)))
        checks.append(equality_check("aux_sum_negative", negative_sum, scale(N, J - I)))
    checks.append(
        _first_failing(
            "aux_square",
            (equality_check("", scale(2, D @ D), scale(N, auxiliaries[i][0]), (i, j)) for i, j, D in indexed),
        )
    )
    checks.append(
        _first_failing(
            "aux_mixed",
            (
                equality_check("", scale(2, pair[j] @ pair[1 - j]), scale(N, pair[1]), (i, j))
                for i, pair in enumerate(auxiliaries)
                for j in range(2)
            ),
        )
    )
    checks.append(
        _first_failing(
            "aux_orthogonal",
            (
                equality_check("", scale(4, D @ E), NJ, (i, j, i2, j2))
                for (i, j, D), (i2, j2, E) in product(indexed, repeat=2)
                if i != i2
            ),
        )
    )
    checks.append(
        _first_failing(
            "aux_all_ones",
            (
                equality_check("", scale(2, X), NJ, (i, j))
                for i, j, D in indexed
                for X in (D @ J, J @ D)
            ),
        )
    )
    return Certificate(subject=H.content_hash(), checks=tuple(checks))


def build_blocks(params: SchemeParams, auxiliaries: list[Split] | None = None) -> tuple[Split, ...]:
    """Back-circulant blocks B_{i,j} = b-circ(D_{il,j}, ..., D_{il+l-1,j}) for i < k and both parts j."""
    if auxiliaries is None:
        auxiliaries = hadamard_auxiliaries(params.hadamard)
    ell: int = params.ell
    blocks: list[Split] = []
    for i in range(params.k):
        group: list[Split] = auxiliaries[i * ell : (i + 1) * ell]
        positive = as_ternary(back_circulant([pair[0] for pair in group]))
        negative = as_ternary(back_circulant([pair[1] for pair in group]))
        blocks.append((positive, negative))
    return tuple(blocks)


def check_block_identities(params: SchemeParams) -> Certificate:
    """Verify the products of the back-circulant blocks, multiplied through by 4.

    With N = kl+1 and S_{i,j} the sum of the auxiliaries in group i: 4B_{i,j}² = 2N I⊗S_{i,1} + lN (J-I)⊗J,
    4B_{i,j}B_{i,j'} = 2N I⊗S_{i,2} + lN (J-I)⊗J for j ≠ j', and 4B_{i,j}B_{i',j'} = lN J⊗J for i ≠ i'.
    """
    auxiliaries: list[Split] = hadamard_auxiliaries(params.hadamard)
    blocks: tuple[Split, ...] = build_blocks(params, auxiliaries)
    N, ell = params.hadamard_order, params.ell
    I_l, J_l, J_N = identity(ell), ones(ell), ones(N)
    off_diagonal: IntMatrix = scale(ell * N, kronecker(J_l - I_l, J_N))

    def group_sum(i: int, j: int) -> Matrix:
        return kronecker(I_l, total(pair[j] for pair in auxiliaries[i * ell : (i + 1) * ell]))

    def expected_same_group(i: int, part: int) -> IntMatrix:
        return scale(2 * N, group_sum(i, part)) + off_diagonal

    checks: list[Check] = [
        _first_failing(
            "block_symmetric",
            (equality_check("", B.T, B, (i, j)) for i, pair in enumerate(blocks) for j, B in enumerate(pair)),
        ),
        _first_failing(
            "block_square",
            (
                equality_check("", scale(4, B @ B), expected_same_group(i, 0), (i, j))
                for i, pair in enumerate(blocks)
                for j, B in enumerate(pair)
            ),
        ),
        _first_failing(
            "block_mixed",
            (
                equality_check("", scale(4, pair[j] @ pair[1 - j]), expected_same_group(i, 1), (i, j))
                for i, pair in enumerate(blocks)
                for j in range(2)
            ),
        ),
    ]
    everywhere: IntMatrix = scale(ell * N, kronecker(J_l, J_N))
    checks.append(
        _first_failing(
            "block_orthogonal",
            (
                equality_check("", scale(4, blocks[i][j] @ blocks[i2][j2]), everywhere, (i, j, i2, j2))
                for i, i2 in product(range(params.k), repeat=2)
                if i != i2
                for j, j2 in product(range(2), repeat=2)
            ),
        )
    )
    return Certificate(subject=params.hadamard.content_hash(), checks=tuple(checks))


@dataclass(frozen=True, eq=False)
class SchemeRelations:
    """Relation matrices A₀..A_d of the scheme; d is 4 when l > 1 and 3 otherwise."""

    params: SchemeParams
    relations: tuple[TernaryMatrix, ...]

    @property
    def d(self) -> int:
        return len(self.relations) - 1

    @property
    def order(self) -> int:
        return self.relations[0].order

    @property
    def valencies(self) -> tuple[int, ...]:
        return tuple(int(A.entries[0].sum()) for A in self.relations)

    @cached_property
    def products(self) -> dict[tuple[int, int], IntMatrix]:
        return {(i, j): A @ B for (i, A), (j, B) in product(enumerate(self.relations), repeat=2)}

    @cached_property
    def certificate(self) -> Certificate:
        return certify_scheme(self)


def _three(left: Matrix, middle: Matrix, right: Matrix) -> Matrix:
    return kronecker_all([left, middle, right])


def build_relations(params: SchemeParams) -> SchemeRelations:
    """Build A₀..A_d.

    A₁ = Σ W_{i,+}⊗B_{i,1} + W_{i,-}⊗B_{i,2} and A₂ is the same with the block parts swapped, A₀ = I,
    A₃ = I⊗I⊗(J-I) and A₄ = I⊗(J-I)⊗J, the last only when l > 1.
    """
    blocks: tuple[Split, ...] = build_blocks(params)
    splits: list[Split] = [split_dw(W) for W in params.dw.matrices]

    pairs = list(zip(splits, blocks, strict=True))
    A1 = as_ternary(total(kronecker(pos, B1) + kronecker(neg, B2) for (pos, neg), (B1, B2) in pairs))
    A2 = as_ternary(total(kronecker(pos, B2) + kronecker(neg, B1) for (pos, neg), (B1, B2) in pairs))

    u, ell, N = params.dw_order, params.ell, params.hadamard_order
    A0 = identity(params.vertices)
    A3 = as_ternary(_three(identity(u), identity(ell), ones(N) - identity(N)))
    relations: list[TernaryMatrix] = [A0, A1, A2, A3]
    if ell > 1:
        relations.append(as_ternary(_three(identity(u), ones(ell) - identity(ell), ones(N))))

    logger.info(
        "Built %d-class relations on %d vertices for k=%d, m=%d, l=%d",
        len(relations) - 1,
        params.vertices,
        params.k,
        params.m,
        params.ell,
    )
    return SchemeRelations(params=params, relations=tuple(relations))


def _representative(A: Matrix) -> tuple[int, int] | None:
    hits: NDArray = np.argwhere(A.entries != 0)
    if hits.size == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def _read_tensor(rel: SchemeRelations) -> tuple[NDArray, Check]:
    """Read p_{ij}^k at one position of each A_k, then check A_iA_j = Σ p_{ij}^k A_k everywhere."""
    size: int = rel.d + 1
    p: NDArray = np.zeros((size, size, size), dtype=np.int64)
    positions: list[tuple[int, int] | None] = [_representative(A) for A in rel.relations]
    witness: Check | None = None
    for i, j in product(range(size), repeat=2):
        AB: IntMatrix = rel.products[(i, j)]
        for k, position in enumerate(positions):
            if position is not None:
                p[i, j, k] = AB[position]
        if witness is None:
            rebuilt: IntMatrix = total(scale(int(p[i, j, k]), A) for k, A in enumerate(rel.relations))
            check: Check = equality_check("product_closed", AB, rebuilt, (i, j))
            if not check.passed:
                witness = check
    return p, witness or Check(name="product_closed", passed=True)


def certify_scheme(rel: SchemeRelations) -> Certificate:
    """Check the association-scheme axioms by exact computation.

    Checks: identity (A₀ = I), zero_one, partition (ΣA_i = J), transpose_closed, product_closed, commutative, plus
    the two structural identities a1_plus_a2 (A₁ + A₂ = (J-I)⊗J⊗J) and a1_transpose (A₁ᵀ = A₂).
    """
    n: int = rel.order
    relations: tuple[TernaryMatrix, ...] = rel.relations
    checks: list[Check] = [equality_check("identity", relations[0], identity(n))]

    zero_one = Check(name="zero_one", passed=True)
    for index, A in enumerate(relations):
        negative: NDArray = np.argwhere(A.entries < 0)
        if negative.size:
            location: tuple[int, ...] = (index, *(int(v) for v in negative[0]))
            zero_one = Check("zero_one", False, Witness(location=location, found="-1", expected="0 or 1"))
            break
    checks.append(zero_one)

    checks.append(equality_check("partition", total(relations), ones(n)))

    transposes: set[TernaryMatrix] = set(relations)
    transpose_check = Check(name="transpose_closed", passed=True)
    for index, A in enumerate(relations):
        if A.T not in transposes:
            transpose_check = Check(
                "transpose_closed", False, Witness(location=(index,), found="Aᵀ", expected="a relation")
            )
            break
    checks.append(transpose_check)

    _, closed = _read_tensor(rel)
    checks.append(closed)

    size: int = rel.d + 1
    checks.append(
        _first_failing(
            "commutative",
            (
                equality_check("", rel.products[(i, j)], rel.products[(j, i)], (i, j))
                for i, j in product(range(size), repeat=2)
                if i < j
            ),
        )
    )

    params: SchemeParams = rel.params
    u, ell, N = params.dw_order, params.ell, params.hadamard_order
    if rel.d >= 2 and n == params.vertices:  # noqa: PLR2004
        outer = _three(ones(u) - identity(u), ones(ell), ones(N))
        checks.append(equality_check("a1_plus_a2", relations[1] + relations[2], outer))
        checks.append(equality_check("a1_transpose", relations[1].T, relations[2]))

    certificate = Certificate(subject=relations[1].content_hash(), checks=tuple(checks))
    logger.debug("Scheme certificate on %d vertices: %s", n, "pass" if certificate.passed else "fail")
    return certificate


def check_product_formulas(rel: SchemeRelations) -> Certificate:
    """Check the closed forms of A₁², A₂², A₁A₂ and A₂A₁, multiplied through by 4.

    4A₁² = 4A₂² = -mN² III + mN IIJ + lN IJJ + lN(km-1) JJJ and
    4A₁A₂ = 4A₂A₁ = mN² III - mN IIJ + lN IJJ + lN(km-1) JJJ, where N = kl+1 and IIJ stands for I⊗I⊗J.
    """
    params: SchemeParams = rel.params
    k, m, ell, N = params.k, params.m, params.ell, params.hadamard_order
    u: int = params.dw_order
    III = identity(rel.order)
    IIJ = _three(identity(u), identity(ell), ones(N))
    IJJ = _three(identity(u), ones(ell), ones(N))
    JJJ = ones(rel.order)
    tail: IntMatrix = scale(ell * N, IJJ) + scale(ell * N * (k * m - 1), JJJ)
    squared: IntMatrix = scale(-m * N * N, III) + scale(m * N, IIJ) + tail
    mixed: IntMatrix = scale(m * N * N, III) - scale(m * N, IIJ) + tail

    checks: tuple[Check, ...] = (
        equality_check("a1_squared", scale(4, rel.products[(1, 1)]), squared),
        equality_check("a2_squared", scale(4, rel.products[(2, 2)]), squared),
        equality_check("a1_a2", scale(4, rel.products[(1, 2)]), mixed),
        equality_check("a2_a1", scale(4, rel.products[(2, 1)]), mixed),
    )
    return Certificate(subject=rel.relations[1].content_hash(), checks=checks)


@dataclass(frozen=True)
class IntersectionTensor:
    """p[i, j, k] = p_{ij}^k, so that A_iA_j = Σ_k p_{ij}^k A_k."""

    d: int
    p: NDArray = field(repr=False)

    def __post_init__(self) -> None:
        self.p.setflags(write=False)

    def __getitem__(self, index: tuple[int, int, int]) -> int:
        return int(self.p[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntersectionTensor):
            return NotImplemented
        return self.d == other.d and bool(np.array_equal(self.p, other.p))

    def __hash__(self) -> int:
        return hash((self.d, self.p.tobytes()))

    def matrix(self, i: int) -> IntMatrix:
        """L_i with (L_i)[j][k] = p_{ij}^k."""
        return IntMatrix(self.p[i])

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.p, self.p.transpose(1, 0, 2)))

    def tolist(self) -> list[list[list[int]]]:
        return [[[int(v) for v in row] for row in plane] for plane in self.p]


def _require_certified(rel: SchemeRelations) -> None:
    if not rel.certificate.passed:
        failed: list[str] = [check.name for check in rel.certificate.failures()]
        msg: str = f"relations do not form an association scheme; failed checks {failed}"
        raise UncertifiedInput(msg)


def intersection_tensor(rel: SchemeRelations) -> IntersectionTensor:
    """Intersection numbers read from representative positions of a certified scheme.

    Raises:
        UncertifiedInput: If the relations fail certify_scheme.
    """
    _require_certified(rel)
    p, _ = _read_tensor(rel)
    return IntersectionTensor(d=rel.d, p=p)


def _relation_labels(rel: SchemeRelations) -> NDArray:
    labels: NDArray = np.zeros((rel.order, rel.order), dtype=np.int64)
    for index, A in enumerate(rel.relations):
        labels[A.entries != 0] = index
    return labels


def count_intersection_numbers(rel: SchemeRelations) -> IntersectionTensor:
    """Intersection numbers by counting, for every ordered pair (x, y), the z with (x, z) in A_i and (z, y) in A_j.

    Raises:
        UncertifiedInput: If two pairs in the same relation give different counts.
    """
    size: int = rel.d + 1
    n: int = rel.order
    labels: NDArray = _relation_labels(rel)
    p: NDArray = np.full((size, size, size), -1, dtype=np.int64)
    offsets: NDArray = np.arange(n, dtype=np.int64)[np.newaxis, :] * size * size

    for x in range(n):
        # codes[z, y] = label(x, z) * size + label(z, y), spread per y.
        codes: NDArray = labels[x][:, np.newaxis] * size + labels + offsets
        counts: NDArray = np.bincount(codes.ravel(), minlength=n * size * size).reshape(n, size, size)
        for y in range(n):
            k: int = int(labels[x, y])
            if p[0, 0, k] < 0:
                p[:, :, k] = counts[y]
            elif not np.array_equal(p[:, :, k], counts[y]):
                msg: str = f"pairs in relation {k} disagree on intersection numbers at ({x}, {y})"
                raise UncertifiedInput(msg)
    p[p < 0] = 0
    return IntersectionTensor(d=rel.d, p=p)


def intersection_matrix_L1(rel: SchemeRelations) -> IntMatrix:
    """L₁ = (p_{1j}^k), rows j and columns k.

    Raises:
        UncertifiedInput: If the relations fail certify_scheme.
    """
    return intersection_tensor(rel).matrix(1)


def _integral(values: list[list[Fraction]], what: str) -> IntMatrix:
    for row in values:
        for value in row:
            if value.denominator != 1:
                msg: str = f"{what} has the non-integral entry {value}; the parameters admit no scheme"
                raise ParamMismatch(msg)
    return IntMatrix([[int(value) for value in row] for row in values])


def closed_form_L1(k: int, m: int, ell: int) -> IntMatrix:
    """Evaluate the displayed intersection matrix L₁ at (k, m, l).

    Raises:
        ParamMismatch: If an entry comes out fractional.
    """
    F = Fraction
    N: int = k * ell + 1
    if ell == 1:
        rows: list[list[Fraction]] = [
            [F(0), F(1), F(0), F(0)],
            [F(0), F((k + 1) * (k * m - 1), 4), F((k + 1) * (k * m - 1), 4), F((k + 1) ** 2 * m, 4)],
            [F(k * (k + 1) * m, 2), F((k + 1) * (k * m - 1), 4), F((k + 1) * (k * m - 1), 4), F((k * k - 1) * m, 4)],
            [F(0), F(k - 1, 2), F(k + 1, 2), F(0)],
        ]
        return _integral(rows, "L1")

    shared: Fraction = F(ell * N * (k * m - 1), 4)
    rows = [
        [F(0), F(1), F(0), F(0), F(0)],
        [F(0), shared, shared, F(m * N * N, 4), F(k * ell * m * N, 4)],
        [F(k * ell * m * N, 2), shared, shared, F(m * (k * k * ell * ell - 1), 4), F(k * ell * m * N, 4)],
        [F(0), F(N, 2) - 1, F(N, 2), F(0), F(0)],
        [F(0), F((ell - 1) * N, 2), F((ell - 1) * N, 2), F(0), F(0)],
    ]
    return _integral(rows, "L1")


def coclique_vertices(rel: SchemeRelations) -> range:
    """The l(kl+1) vertices with first coordinate u = 0: one connected block of A₃ + A₄."""
    return range(rel.params.ell * rel.params.hadamard_order)


def coclique_bound_check(rel: SchemeRelations, bound: Fraction | None = None) -> Certificate:
    """Check that one block of A₃ + A₄ is a coclique of A₁ whose size l(kl+1) meets the ratio bound.

    Args:
        rel: The relations.
        bound: The ratio bound computed from the eigenmatrices; when given it must equal l(kl+1).
    """
    vertices: range = coclique_vertices(rel)
    size: int = len(vertices)
    A1: NDArray = rel.relations[1].entries[np.ix_(vertices, vertices)]
    edge: NDArray = np.argwhere(A1 != 0)

    checks: list[Check] = []
    if edge.size:
        x, y = (int(v) for v in edge[0])
        checks.append(Check("coclique", False, Witness(location=(x, y), found="adjacent in A1", expected="0")))
    else:
        checks.append(Check(name="coclique", passed=True))

    block: NDArray = np.zeros((size, size), dtype=np.int64)
    for index in range(3, rel.d + 1):
        block += rel.relations[index].entries[np.ix_(vertices, vertices)]
    block += rel.relations[0].entries[np.ix_(vertices, vertices)]
    outside: NDArray = np.argwhere(block != 1)
    if outside.size:
        x, y = (int(v) for v in outside[0])
        checks.append(Check("coclique_block", False, Witness(location=(x, y), found=str(block[x, y]), expected="1")))
    else:
        checks.append(Check(name="coclique_block", passed=True))

    expected_size: int = rel.params.ell * rel.params.hadamard_order
    checks.append(
        Check(name="coclique_size", passed=True, detail=f"size={size}")
        if size == expected_size
        else Check("coclique_size", False, Witness(location=(), found=str(size), expected=str(expected_size)))
    )
    if bound is not None:
        checks.append(
            Check(name="ratio_bound", passed=True, detail=f"bound={bound}")
            if bound == size
            else Check("ratio_bound", False, Witness(location=(), found=str(bound), expected=str(size)))
        )
    return Certificate(subject=rel.relations[1].content_hash(), checks=tuple(checks))

