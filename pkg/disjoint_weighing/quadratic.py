"""Exact arithmetic in Q(sqrt(-m)) for a fixed positive integer m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from disjoint_weighing.errors import RadicandMismatch

Scalar = Union["QuadraticScalar", Fraction, int]


@dataclass(frozen=True)
class QuadraticScalar:
    """a + b·sqrt(-m) with rational a and b."""

    a: Fraction
    b: Fraction
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            msg: str = f"radicand must be a positive integer, got {self.m}"
            raise ValueError(msg)
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def rational(cls, value: Fraction | int, m: int) -> QuadraticScalar:
        return cls(Fraction(value), Fraction(0), m)

    @classmethod
    def root(cls, m: int) -> QuadraticScalar:
        """sqrt(-m) itself."""
        return cls(Fraction(0), Fraction(1), m)

    def _coerce(self, other: Scalar) -> QuadraticScalar:
        if isinstance(other, QuadraticScalar):
            if other.m != self.m:
                msg: str = f"cannot combine sqrt(-{self.m}) and sqrt(-{other.m})"
                raise RadicandMismatch(msg)
            return other
        return QuadraticScalar.rational(Fraction(other), self.m)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> QuadraticScalar:
        return QuadraticScalar(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        """a² + m·b², the product with the conjugate."""
        return self.a * self.a + self.m * self.b * self.b

    def __add__(self, other: Scalar) -> QuadraticScalar:
        o: QuadraticScalar = self._coerce(other)
        return QuadraticScalar(self.a + o.a, self.b + o.b, self.m)

    __radd__ = __add__

    def __neg__(self) -> QuadraticScalar:
        return QuadraticScalar(-self.a, -self.b, self.m)

    def __sub__(self, other: Scalar) -> QuadraticScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> QuadraticScalar:
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> QuadraticScalar:
        o: QuadraticScalar = self._coerce(other)
        return QuadraticScalar(self.a * o.a - self.m * self.b * o.b, self.a * o.b + self.b * o.a, self.m)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> QuadraticScalar:
        o: QuadraticScalar = self._coerce(other)
        norm: Fraction = o.norm()
        if norm == 0:
            msg = "division by zero in Q(sqrt(-m))"
            raise ZeroDivisionError(msg)
        product: QuadraticScalar = self * o.conjugate()
        return QuadraticScalar(product.a / norm, product.b / norm, self.m)

    def __rtruediv__(self, other: Scalar) -> QuadraticScalar:
        return self._coerce(other) / self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadraticScalar):
            return NotImplemented
        return self.m == other.m and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.m))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root: str = f"sqrt(-{self.m})"
        imaginary: str = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if self.a == 0:
            return imaginary
        sign: str = "" if imaginary.startswith("-") else "+"
        return f"{self.a}{sign}{imaginary}"
