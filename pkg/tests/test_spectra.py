from fractions import Fraction
from functools import cache

import pytest

from disjoint_weighing.construct import builtin_seed_dw
from disjoint_weighing.errors import ShapeMismatch, UncertifiedInput
from disjoint_weighing.matcore import IntMatrix
from disjoint_weighing.quadratic import QuadraticScalar
from disjoint_weighing.registry import base_dw
from disjoint_weighing.scheme import (
    SchemeParams,
    SchemeRelations,
    build_relations,
    intersection_matrix_L1,
    sylvester_hadamard,
)
from disjoint_weighing.spectra import (
    COMPLEX_MINUS,
    COMPLEX_PLUS,
    REAL,
    TRIVIAL,
    Eigenmatrices,
    check_eigen_identities,
    closed_form_P,
    compare,
    eigenmatrices_from_L1,
    match_rows,
    ratio_bound,
)

CASES: list[tuple[int, int, int]] = [(1, 1, 1), (1, 1, 3), (3, 9, 1)]


@cache
def _relations(k: int, m: int, ell: int) -> SchemeRelations:
    dw = base_dw() if (k, m) == (1, 1) else builtin_seed_dw("dw28")
    return build_relations(SchemeParams(k=k, m=m, ell=ell, dw=dw, hadamard=sylvester_hadamard(k * ell + 1)))


@cache
def _computed(k: int, m: int, ell: int) -> Eigenmatrices:
    rel = _relations(k, m, ell)
    return eigenmatrices_from_L1(intersection_matrix_L1(rel), rel)


def _q(a: int | Fraction, b: int | Fraction, m: int) -> QuadraticScalar:
    return QuadraticScalar(Fraction(a), Fraction(b), m)


def test_four_vertex_eigenmatrix() -> None:
    """Test P of the 4-vertex scheme, with sqrt(-1) as i."""
    eig = _computed(1, 1, 1)
    i = QuadraticScalar.root(1)
    expected = [[1, 1, 1, 1], [1, -i, i, -1], [1, i, -i, -1], [1, -1, -1, 1]]
    assert [list(row) for row in eig.P] == expected
    assert eig.row_order == (TRIVIAL, COMPLEX_PLUS, COMPLEX_MINUS, REAL)


def test_complex_eigenvalue_for_k3_m9() -> None:
    """Test that A₁ has eigenvalue -2·sqrt(-9) on the first complex eigenspace."""
    eig = _computed(3, 9, 1)
    assert eig.P[1][1] == _q(0, -2, 9)
    assert eig.P[1][2] == _q(0, 2, 9)


def test_first_row_for_l3() -> None:
    """Test the valencies and the canonical order of the 4-class scheme."""
    eig = _computed(1, 1, 3)
    assert [row[0] for row in eig.P] == [1] * 5
    assert list(eig.P[0]) == [1, 6, 6, 3, 8]
    assert eig.row_order == (TRIVIAL, REAL, REAL, COMPLEX_PLUS, COMPLEX_MINUS)


@pytest.mark.parametrize("case", CASES)
def test_computed_matches_closed_form(case: tuple[int, int, int]) -> None:
    """Test both eigenmatrices against the closed forms, in the same order."""
    closed = closed_form_P(*case)
    certificate = compare(_computed(*case), closed)
    assert certificate.passed, certificate.failures()
    assert certificate.check("first_eigenmatrix").detail == f"permutation={tuple(range(len(closed.P)))}"


@pytest.mark.parametrize("case", CASES)
def test_eigen_identities(case: tuple[int, int, int]) -> None:
    """Test duality, valencies, the trivial column, minimal polynomials and multiplicities."""
    certificate = check_eigen_identities(_computed(*case), _relations(*case))
    assert certificate.passed, certificate.failures()


@pytest.mark.parametrize("case", CASES)
def test_closed_form_duality(case: tuple[int, int, int]) -> None:
    """Test P Q = n I for the closed forms themselves."""
    eig = closed_form_P(*case)
    size: int = eig.d + 1
    for i in range(size):
        for j in range(size):
            value = sum((eig.P[i][t] * eig.Q[t][j] for t in range(size)), start=_q(0, 0, eig.m))
            assert value == (eig.n if i == j else 0), (i, j)


def test_multiplicities() -> None:
    """Test that multiplicities are row 0 of Q and sum to the vertex count."""
    eig = _computed(3, 9, 1)
    assert eig.multiplicities == (1, 42, 42, 27)
    assert sum(eig.multiplicities) == 112


@pytest.mark.parametrize(("case", "bound"), [((1, 1, 1), 2), ((1, 1, 3), 12), ((3, 9, 1), 4)])
def test_ratio_bound(case: tuple[int, int, int], bound: int) -> None:
    """Test that the ratio bound is l(kl+1)."""
    assert ratio_bound(_computed(*case)) == bound


def test_swapped_rows_still_match() -> None:
    """Test that comparison is up to a permutation of the non-trivial eigenspaces."""
    closed = closed_form_P(1, 1, 1)
    swapped = Eigenmatrices(
        P=(closed.P[0], closed.P[2], closed.P[1], closed.P[3]),
        Q=tuple((row[0], row[2], row[1], row[3]) for row in closed.Q),
        m=closed.m,
        n=closed.n,
        row_order=closed.row_order,
    )
    assert match_rows(swapped, closed) == (0, 2, 1, 3)
    certificate = compare(swapped, closed)
    assert certificate.passed
    assert certificate.check("first_eigenmatrix").detail == "permutation=(0, 2, 1, 3)"


def test_wrong_radicand() -> None:
    """Test that tables over different fields do not compare equal."""
    certificate = compare(closed_form_P(1, 1, 1), closed_form_P(1, 3, 1))
    assert not certificate.check("radicand").passed


def test_compare_sizes() -> None:
    """Test that a 3-class and a 4-class table cannot be compared."""
    with pytest.raises(ShapeMismatch):
        compare(closed_form_P(1, 1, 1), closed_form_P(1, 1, 3))


def test_l1_order_must_match() -> None:
    """Test that an L₁ of the wrong order is refused."""
    with pytest.raises(ShapeMismatch):
        eigenmatrices_from_L1(IntMatrix([[0, 1], [1, 0]]), _relations(1, 1, 1))


def test_eigenmatrices_need_certified_scheme() -> None:
    """Test that an uncertified scheme is refused."""
    rel = _relations(1, 1, 1)
    broken = SchemeRelations(params=rel.params, relations=(rel.relations[0], rel.relations[2], rel.relations[2]))
    with pytest.raises(UncertifiedInput):
        eigenmatrices_from_L1(intersection_matrix_L1(rel), broken)
