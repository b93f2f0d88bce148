"""Eigenmatrices of the constructed schemes, computed exactly over Q(sqrt(-m)).

The first eigenmatrix P has P[i][j] = the eigenvalue of A_j on the i-th common eigenspace. Its rows are the right
eigenvectors of the intersection matrix L₁ normalized to start with 1, and the second eigenmatrix is Q = n P⁻¹.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import sympy

from disjoint_weighing.errors import ShapeMismatch, UncertifiedInput, UnexpectedSpectrum
from disjoint_weighing.matcore import IntMatrix, Matrix, identity, scale
from disjoint_weighing.quadratic import QuadraticScalar
from disjoint_weighing.scheme import SchemeRelations
from disjoint_weighing.verify import Certificate, Check, Witness

logger: logging.Logger = logging.getLogger(__name__)

Row = tuple[QuadraticScalar, ...]
Table = tuple[Row, ...]

TRIVIAL: str = "trivial"
REAL: str = "real"
COMPLEX_PLUS: str = "complex+"
COMPLEX_MINUS: str = "complex-"


@dataclass(frozen=True)
class Eigenmatrices:
    """First and second eigenmatrices of a scheme on n vertices.

    row_order tags each eigenspace (row of P, column of Q) as trivial, real, or complex+/complex- by the sign of
    the sqrt(-m) part of its A₂ eigenvalue.
    """

    P: Table
    Q: Table
    m: int
    n: int
    row_order: tuple[str, ...]

    @property
    def d(self) -> int:
        return len(self.P) - 1

    @property
    def multiplicities(self) -> tuple[Fraction, ...]:
        """Row 0 of Q: the dimension of each eigenspace."""
        return tuple(value.a for value in self.Q[0])

    def eigenvalues(self, j: int) -> Row:
        """Column j of P: the eigenvalues of A_j in eigenspace order."""
        return tuple(row[j] for row in self.P)


def _fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    top, bottom = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if top * top != value.numerator or bottom * bottom != value.denominator:
        return None
    return Fraction(top, bottom)


def _spectrum(L1: Matrix, m: int) -> list[QuadraticScalar]:
    """Roots of the characteristic polynomial of L₁, all of which must be simple and lie in Q(sqrt(-m)).

    Raises:
        UnexpectedSpectrum: On a repeated root, an irreducible factor of degree above 2, or a quadratic factor whose
            roots are not of the form r + t·sqrt(-m) with rational r and t.
    """
    x = sympy.Symbol("x")
    characteristic = sympy.Matrix(L1.tolist()).charpoly(x)
    _, factors = sympy.factor_list(characteristic.as_expr(), x)

    roots: list[QuadraticScalar] = []
    for factor, multiplicity in factors:
        if multiplicity != 1:
            msg: str = f"L1 has the repeated factor ({factor})^{multiplicity}"
            raise UnexpectedSpectrum(msg)
        coefficients: list[Fraction] = [_fraction(c) for c in sympy.Poly(factor, x).all_coeffs()]
        lead: Fraction = coefficients[0]
        match len(coefficients):
            case 2:
                roots.append(QuadraticScalar.rational(-coefficients[1] / lead, m))
            case 3:
                p, q = coefficients[1] / lead, coefficients[2] / lead
                t: Fraction | None = _rational_sqrt((4 * q - p * p) / m)
                if t is None or t == 0:
                    msg = f"roots of {factor} are not in Q(sqrt(-{m}))"
                    raise UnexpectedSpectrum(msg)
                root = QuadraticScalar(-p / 2, t / 2, m)
                roots.extend((root, root.conjugate()))
            case _:
                msg = f"L1 has the irreducible factor {factor} of degree {len(coefficients) - 1}"
                raise UnexpectedSpectrum(msg)
    return roots


def _solve(matrix: list[list[QuadraticScalar]], rhs: list[QuadraticScalar]) -> list[QuadraticScalar] | None:
    """Solve a consistent system of full column rank by row reduction; None if it has no unique solution."""
    rows: int = len(matrix)
    columns: int = len(matrix[0]) if matrix else 0
    m: list[list[QuadraticScalar]] = [list(row) for row in matrix]
    t: list[QuadraticScalar] = list(rhs)

    pivot_row: int = 0
    for pivot_column in range(columns):
        chosen: int | None = next((r for r in range(pivot_row, rows) if m[r][pivot_column] != 0), None)
        if chosen is None:
            return None
        m[pivot_row], m[chosen] = m[chosen], m[pivot_row]
        t[pivot_row], t[chosen] = t[chosen], t[pivot_row]
        pivot: QuadraticScalar = m[pivot_row][pivot_column]
        for r in range(rows):
            if r == pivot_row or m[r][pivot_column] == 0:
                continue
            factor: QuadraticScalar = m[r][pivot_column] / pivot
            for c in range(pivot_column, columns):
                m[r][c] = m[r][c] - m[pivot_row][c] * factor
            t[r] = t[r] - t[pivot_row] * factor
        pivot_row += 1

    if any(t[r] != 0 for r in range(pivot_row, rows)):
        return None
    return [t[r] / m[r][r] for r in range(columns)]


def _eigenvector(L1: Matrix, theta: QuadraticScalar) -> Row:
    """The right eigenvector u of L₁ for θ with u[0] = 1."""
    size: int = L1.order
    shifted: list[list[QuadraticScalar]] = [
        [QuadraticScalar.rational(L1[r, c], theta.m) - (theta if r == c else 0) for c in range(size)]
        for r in range(size)
    ]
    solution = _solve([row[1:] for row in shifted], [-row[0] for row in shifted])
    if solution is None:
        msg: str = f"eigenvalue {theta} of L1 does not have a one-dimensional eigenspace with u[0] = 1"
        raise UnexpectedSpectrum(msg)
    return (QuadraticScalar.rational(1, theta.m), *solution)


def _inverse(table: Table) -> Table:
    size: int = len(table)
    m: int = table[0][0].m
    columns: list[Row] = []
    for c in range(size):
        unit: list[QuadraticScalar] = [QuadraticScalar.rational(int(r == c), m) for r in range(size)]
        solution = _solve([list(row) for row in table], unit)
        if solution is None:
            msg = "first eigenmatrix is singular"
            raise UnexpectedSpectrum(msg)
        columns.append(tuple(solution))
    return tuple(tuple(columns[c][r] for c in range(size)) for r in range(size))


def _canonical_order(rows: list[Row], valency: int, ell: int) -> tuple[list[Row], tuple[str, ...]]:
    """Trivial row first; for l = 1 the complex pair precedes the real rows, for l > 1 it follows them."""
    trivial: list[Row] = [row for row in rows if row[1] == valency]
    if len(trivial) != 1:
        msg: str = f"expected exactly one eigenvalue equal to the valency {valency}"
        raise UnexpectedSpectrum(msg)
    others: list[Row] = [row for row in rows if row is not trivial[0]]
    reals: list[Row] = sorted((row for row in others if row[1].is_rational), key=lambda row: row[1].a, reverse=True)
    plus: list[Row] = [row for row in others if not row[1].is_rational and row[2].b > 0]
    minus: list[Row] = [row for row in others if not row[1].is_rational and row[2].b < 0]

    complex_rows: list[Row] = plus + minus
    complex_tags: list[str] = [COMPLEX_PLUS] * len(plus) + [COMPLEX_MINUS] * len(minus)
    if ell == 1:
        ordered: list[Row] = [trivial[0], *complex_rows, *reals]
        tags: list[str] = [TRIVIAL, *complex_tags, *[REAL] * len(reals)]
    else:
        ordered = [trivial[0], *reals, *complex_rows]
        tags = [TRIVIAL, *[REAL] * len(reals), *complex_tags]
    return ordered, tuple(tags)


def eigenmatrices_from_L1(L1: Matrix, rel: SchemeRelations) -> Eigenmatrices:
    """Compute P and Q of a certified scheme from its intersection matrix L₁.

    Args:
        L1: intersection_matrix_L1(rel).
        rel: The certified relations; supplies m, the vertex count and the valencies.

    Raises:
        UncertifiedInput: If rel fails certify_scheme.
        ShapeMismatch: If L1 does not have order d+1.
        UnexpectedSpectrum: If some eigenvalue is outside Q(sqrt(-m)) or repeated.

    Returns:
        Eigenmatrices in canonical row order.
    """
    if not rel.certificate.passed:
        msg: str = "eigenmatrices need a certified scheme"
        raise UncertifiedInput(msg)
    if L1.order != rel.d + 1:
        msg = f"L1 has order {L1.order}, expected {rel.d + 1}"
        raise ShapeMismatch(msg)

    m: int = rel.params.m
    thetas: list[QuadraticScalar] = _spectrum(L1, m)
    rows: list[Row] = [_eigenvector(L1, theta) for theta in thetas]
    ordered, tags = _canonical_order(rows, rel.valencies[1], rel.params.ell)

    P: Table = tuple(ordered)
    n: int = rel.order
    Q: Table = tuple(tuple(value * n for value in row) for row in _inverse(P))
    logger.info("Computed eigenmatrices of a %d-class scheme on %d vertices", rel.d, n)
    return Eigenmatrices(P=P, Q=Q, m=m, n=n, row_order=tags)


def _table(values: Sequence[Sequence[tuple[Fraction | int, Fraction | int]]], m: int) -> Table:
    return tuple(tuple(QuadraticScalar(Fraction(a), Fraction(b), m) for a, b in row) for row in values)


def closed_form_P(k: int, m: int, ell: int) -> Eigenmatrices:
    """Evaluate the displayed eigenmatrices at (k, m, l).

    Entries of the form c·sqrt(-1)/sqrt(m) are stored as (c/m)·sqrt(-m). For l > 1 the complex columns of Q are
    paired with the complex rows of P so that P Q = n I.
    """
    F = Fraction
    N: int = k * ell + 1
    n: int = (k * m + 1) * ell * N
    c: Fraction = F(k * m + 1)

    if ell == 1:
        valency: Fraction = F(k * (k + 1) * m, 2)
        half: Fraction = F(k + 1, 2)
        P = [
            [(1, 0), (valency, 0), (valency, 0), (k, 0)],
            [(1, 0), (0, -half), (0, half), (-1, 0)],
            [(1, 0), (0, half), (0, -half), (-1, 0)],
            [(1, 0), (-half, 0), (-half, 0), (k, 0)],
        ]
        imaginary: Fraction = c / (2 * m)
        Q = [
            [(1, 0), (k * c / 2, 0), (k * c / 2, 0), (k * m, 0)],
            [(1, 0), (0, imaginary), (0, -imaginary), (-1, 0)],
            [(1, 0), (0, -imaginary), (0, imaginary), (-1, 0)],
            [(1, 0), (-c / 2, 0), (-c / 2, 0), (k * m, 0)],
        ]
        tags: tuple[str, ...] = (TRIVIAL, COMPLEX_PLUS, COMPLEX_MINUS, REAL)
    else:
        valency = F(k * ell * m * N, 2)
        half = F(N, 2)
        P = [
            [(1, 0), (valency, 0), (valency, 0), (k * ell, 0), ((ell - 1) * N, 0)],
            [(1, 0), (0, 0), (0, 0), (k * ell, 0), (-N, 0)],
            [(1, 0), (-ell * half, 0), (-ell * half, 0), (k * ell, 0), ((ell - 1) * N, 0)],
            [(1, 0), (0, -half), (0, half), (-1, 0), (0, 0)],
            [(1, 0), (0, half), (0, -half), (-1, 0), (0, 0)],
        ]
        imaginary = ell * c / (2 * m)
        complex_multiplicity: Fraction = k * ell * ell * c / 2
        Q = [
            [(1, 0), ((ell - 1) * c, 0), (k * m, 0), (complex_multiplicity, 0), (complex_multiplicity, 0)],
            [(1, 0), (0, 0), (-1, 0), (0, imaginary), (0, -imaginary)],
            [(1, 0), (0, 0), (-1, 0), (0, -imaginary), (0, imaginary)],
            [(1, 0), ((ell - 1) * c, 0), (k * m, 0), (-ell * c / 2, 0), (-ell * c / 2, 0)],
            [(1, 0), (-c, 0), (k * m, 0), (0, 0), (0, 0)],
        ]
        tags = (TRIVIAL, REAL, REAL, COMPLEX_PLUS, COMPLEX_MINUS)

    return Eigenmatrices(P=_table(P, m), Q=_table(Q, m), m=m, n=n, row_order=tags)


def _same(left: QuadraticScalar, right: QuadraticScalar) -> bool:
    return left.a == right.a and left.b == right.b


def _same_row(left: Row, right: Row) -> bool:
    return all(_same(x, y) for x, y in zip(left, right, strict=True))


def _first_difference(left: Row, right: Row) -> int:
    return next(index for index, (x, y) in enumerate(zip(left, right, strict=True)) if not _same(x, y))


def match_rows(computed: Eigenmatrices, closed: Eigenmatrices) -> tuple[int | None, ...]:
    """For each row of closed.P, the index of the equal row of computed.P, or None; row 0 only matches row 0."""
    matches: list[int | None] = [0 if _same_row(computed.P[0], closed.P[0]) else None]
    for row in closed.P[1:]:
        matches.append(next((i for i in range(1, len(computed.P)) if _same_row(computed.P[i], row)), None))
    return tuple(matches)


def compare(computed: Eigenmatrices, closed: Eigenmatrices) -> Certificate:
    """Compare eigenmatrices up to a permutation of the non-trivial eigenspaces.

    Checks radicand, first_eigenmatrix (rows of P match as a set, row 0 fixed) and second_eigenmatrix (Q equals
    closed.Q once its columns follow the same permutation). The permutation is reported in the detail.

    Raises:
        ShapeMismatch: If the eigenmatrices have different sizes.
    """
    if len(computed.P) != len(closed.P):
        msg: str = f"cannot compare {len(computed.P)}x{len(computed.P)} and {len(closed.P)}x{len(closed.P)} tables"
        raise ShapeMismatch(msg)

    checks: list[Check] = []
    if computed.m == closed.m:
        checks.append(Check(name="radicand", passed=True))
    else:
        checks.append(Check("radicand", False, Witness(location=(), found=str(computed.m), expected=str(closed.m))))

    matches: tuple[int | None, ...] = match_rows(computed, closed)
    missing: int | None = next((i for i, match in enumerate(matches) if match is None), None)
    if missing is not None:
        column: int = _first_difference(computed.P[missing], closed.P[missing])
        witness = Witness(
            location=(missing, column),
            found=str(computed.P[missing][column]),
            expected=str(closed.P[missing][column]),
        )
        checks.append(Check("first_eigenmatrix", False, witness, detail="no matching row"))
        checks.append(Check(name="second_eigenmatrix", passed=False, witness=witness, detail="rows unmatched"))
        return Certificate(subject="eigenmatrices", checks=tuple(checks))

    permutation: tuple[int, ...] = tuple(match for match in matches if match is not None)
    if len(set(permutation)) != len(permutation):
        witness = Witness(location=(), found=str(permutation), expected="a permutation")
        checks.append(Check("first_eigenmatrix", False, witness))
        return Certificate(subject="eigenmatrices", checks=tuple(checks))
    checks.append(Check(name="first_eigenmatrix", passed=True, detail=f"permutation={permutation}"))

    q_check = Check(name="second_eigenmatrix", passed=True)
    for r, row in enumerate(closed.Q):
        for j, value in enumerate(row):
            found: QuadraticScalar = computed.Q[r][permutation[j]]
            if not _same(found, value):
                q_check = Check("second_eigenmatrix", False, Witness((r, j), str(found), str(value)))
                break
        if not q_check.passed:
            break
    checks.append(q_check)
    return Certificate(subject="eigenmatrices", checks=tuple(checks))


def _lcm_denominator(values: Sequence[Fraction]) -> int:
    return math.lcm(*(value.denominator for value in values))


def _minimal_factor(A: Matrix, theta: QuadraticScalar) -> IntMatrix:
    """An integer multiple of A - θI, or of (A - θI)(A - θ̄I) when θ is not rational."""
    I = identity(A.order)
    if theta.is_rational:
        scale_by: int = theta.a.denominator
        return scale(scale_by, A) - scale(int(theta.a * scale_by), I)
    linear: Fraction = 2 * theta.a
    constant: Fraction = theta.norm()
    scale_by = _lcm_denominator([linear, constant])
    return scale(scale_by, A @ A) - scale(int(linear * scale_by), A) + scale(int(constant * scale_by), I)


def check_eigen_identities(eig: Eigenmatrices, rel: SchemeRelations) -> Certificate:
    """Check the eigenmatrices against the relations.

    Checks duality (P Q = n I), valencies (row 0 of P), trivial_column (column 0 of P is all ones),
    minimal_polynomial (the product of A_j - θ I over the distinct θ in column j is zero; conjugate pairs are
    multiplied out so the arithmetic stays integral) and multiplicities (row 0 of Q holds positive integers that sum
    to n).
    """
    size: int = eig.d + 1
    checks: list[Check] = []

    duality = Check(name="duality", passed=True)
    for i in range(size):
        for j in range(size):
            value: QuadraticScalar = sum((eig.P[i][t] * eig.Q[t][j] for t in range(size)), start=eig.P[0][0] * 0)
            expected: int = eig.n if i == j else 0
            if value != expected:
                duality = Check("duality", False, Witness((i, j), str(value), str(expected)))
                break
        if not duality.passed:
            break
    checks.append(duality)

    valencies: tuple[int, ...] = rel.valencies
    bad: int | None = next((j for j in range(size) if eig.P[0][j] != valencies[j]), None)
    if bad is None:
        checks.append(Check(name="valencies", passed=True))
    else:
        checks.append(Check("valencies", False, Witness((0, bad), str(eig.P[0][bad]), str(valencies[bad]))))

    bad_row: int | None = next((i for i in range(size) if eig.P[i][0] != 1), None)
    checks.append(
        Check(name="trivial_column", passed=True)
        if bad_row is None
        else Check("trivial_column", False, Witness((bad_row, 0), str(eig.P[bad_row][0]), "1"))
    )

    minimal = Check(name="minimal_polynomial", passed=True)
    for j, A in enumerate(rel.relations):
        distinct: list[QuadraticScalar] = []
        for theta in eig.eigenvalues(j):
            if theta not in distinct and theta.conjugate() not in distinct:
                distinct.append(theta)
        product: Matrix = identity(A.order)
        for theta in distinct:
            product = product @ _minimal_factor(A, theta)
        if not product.is_zero():
            first = next((r, c) for r in range(A.order) for c in range(A.order) if product[r, c] != 0)
            minimal = Check("minimal_polynomial", False, Witness((j, *first), str(product[first]), "0"))
            break
    checks.append(minimal)

    multiplicities = Check(name="multiplicities", passed=True, detail=str([str(v) for v in eig.multiplicities]))
    for j, value in enumerate(eig.Q[0]):
        if not value.is_rational or value.a.denominator != 1 or value.a <= 0:
            multiplicities = Check("multiplicities", False, Witness((0, j), str(value), "a positive integer"))
            break
    else:
        if sum(eig.multiplicities) != eig.n:
            found: str = str(sum(eig.multiplicities))
            multiplicities = Check("multiplicities", False, Witness((), found, str(eig.n)), detail="sum")
    checks.append(multiplicities)

    return Certificate(subject=rel.relations[1].content_hash(), checks=tuple(checks))


def ratio_bound(eig: Eigenmatrices) -> Fraction:
    """n(-θ_min)/(k₁ - θ_min), θ_min being the least real part of an A₁ eigenvalue and k₁ the A₁ valency."""
    theta_min: Fraction = min(value.a for value in eig.eigenvalues(1))
    k1: Fraction = eig.P[0][1].a
    return eig.n * (-theta_min) / (k1 - theta_min)
