from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from disjoint_weighing.errors import RadicandMismatch
from disjoint_weighing.quadratic import QuadraticScalar

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


def test_root_squares_to_minus_m() -> None:
    """Test sqrt(-9)² = -9."""
    root = QuadraticScalar.root(9)
    assert root * root == -9


def test_mixing_radicands_fails() -> None:
    """Test that sqrt(-1) and sqrt(-2) cannot be added."""
    with pytest.raises(RadicandMismatch):
        QuadraticScalar.root(1) + QuadraticScalar.root(2)


def test_radicand_must_be_positive() -> None:
    """Test that m = 0 is refused."""
    with pytest.raises(ValueError, match="radicand"):
        QuadraticScalar(Fraction(1), Fraction(0), 0)


def test_division_by_zero() -> None:
    """Test that dividing by zero raises."""
    with pytest.raises(ZeroDivisionError):
        QuadraticScalar.root(3) / 0


@pytest.mark.parametrize(
    ("value", "text"),
    [
        (QuadraticScalar(Fraction(0), Fraction(-2), 9), "-2*sqrt(-9)"),
        (QuadraticScalar(Fraction(1), Fraction(1), 1), "1+sqrt(-1)"),
        (QuadraticScalar(Fraction(1, 2), Fraction(-1), 3), "1/2-sqrt(-3)"),
        (QuadraticScalar(Fraction(4), Fraction(0), 3), "4"),
    ],
)
def test_text_form(value: QuadraticScalar, text: str) -> None:
    """Test the a+b*sqrt(-m) text form used in reports."""
    assert str(value) == text


@given(fractions, fractions, fractions, fractions)
def test_division_inverts_multiplication(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> None:
    """Test (x·y)/y = x whenever y is non-zero."""
    x = QuadraticScalar(a, b, 5)
    y = QuadraticScalar(c, d, 5)
    if y.norm() != 0:
        assert (x * y) / y == x


@given(fractions, fractions)
def test_norm_is_product_with_conjugate(a: Fraction, b: Fraction) -> None:
    """Test x·conj(x) = norm(x), a rational."""
    x = QuadraticScalar(a, b, 7)
    product = x * x.conjugate()
    assert product.is_rational
    assert product == x.norm()
