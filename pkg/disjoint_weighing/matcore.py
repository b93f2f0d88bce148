"""Exact integer and ternary square matrices.

Matrices wrap a read-only numpy array. Products and sums run in int64 while the result provably fits and switch
to Python integers (object arrays) otherwise, so arithmetic never overflows silently.
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Sequence
from functools import reduce
from typing import TypeVar

import numpy as np
from numpy.typing import NDArray

from disjoint_weighing.errors import InvalidEntry, ShapeMismatch

# Largest magnitude we let int64 arithmetic produce.
_INT64_SAFE: int = 2**62

MatrixT = TypeVar("MatrixT", bound="Matrix")


def _max_abs(array: NDArray) -> int:
    if array.size == 0:
        return 0
    return int(np.abs(array).max())


def _as_integer_array(entries: object) -> NDArray:
    array: NDArray = np.array(entries, dtype=object if _is_object(entries) else None)
    if array.dtype.kind == "b":
        array = array.astype(np.int64)
    elif array.dtype.kind in {"i", "u"}:
        array = array.astype(np.int64)
    elif array.dtype.kind == "O":
        if not all(isinstance(value, int | np.integer) for value in array.flat):
            msg = "matrix entries must be integers"
            raise InvalidEntry(msg)
        array = np.array([int(value) for value in array.flat], dtype=object).reshape(array.shape)
        if _max_abs(array) < _INT64_SAFE:
            array = array.astype(np.int64)
    else:
        msg = f"matrix entries must be integers, got dtype {array.dtype}"
        raise InvalidEntry(msg)

    if array.ndim != 2 or array.shape[0] != array.shape[1]:  # noqa: PLR2004
        msg = f"matrix must be square, got shape {array.shape}"
        raise ShapeMismatch(msg)
    return array


def _is_object(entries: object) -> bool:
    return isinstance(entries, np.ndarray) and entries.dtype.kind == "O"


class Matrix:
    """A square matrix of integers. Immutable; equality compares entries."""

    __slots__ = ("_entries",)

    def __init__(self, entries: object) -> None:
        array: NDArray = _as_integer_array(entries)
        self._validate(array)
        array.setflags(write=False)
        self._entries: NDArray = array

    def _validate(self, array: NDArray) -> None:
        """Subclasses restrict the alphabet here."""

    @property
    def entries(self) -> NDArray:
        return self._entries

    @property
    def order(self) -> int:
        return int(self._entries.shape[0])

    @property
    def T(self: MatrixT) -> MatrixT:  # noqa: N802
        return type(self)(self._entries.T)

    def __getitem__(self, index: tuple[int, int]) -> int:
        return int(self._entries[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self._entries, other._entries))

    def __hash__(self) -> int:
        return hash(self.content_hash())

    def __matmul__(self, other: Matrix) -> IntMatrix:
        return mul(self, other)

    def __add__(self, other: Matrix) -> IntMatrix:
        return add(self, other)

    def __sub__(self, other: Matrix) -> IntMatrix:
        return sub(self, other)

    def __neg__(self: MatrixT) -> MatrixT:
        return type(self)(-self._entries)

    def __rmul__(self, scalar: int) -> IntMatrix:
        return scale(scalar, self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, entries={self.tolist()!r})"

    def tolist(self) -> list[list[int]]:
        return [[int(value) for value in row] for row in self._entries]

    def is_zero(self) -> bool:
        return not bool(np.any(self._entries != 0))

    def content_hash(self) -> str:
        """Stable sha256 of the order and entries, independent of the numpy dtype."""
        digest = hashlib.sha256(f"{self.order}:".encode())
        digest.update(",".join(str(int(value)) for value in self._entries.flat).encode())
        return digest.hexdigest()


class IntMatrix(Matrix):
    __slots__ = ()


class TernaryMatrix(Matrix):
    """A matrix with entries in {-1, 0, 1}."""

    __slots__ = ()

    def _validate(self, array: NDArray) -> None:
        bad: NDArray = np.argwhere((array != 0) & (array != 1) & (array != -1))
        if bad.size:
            row, column = (int(v) for v in bad[0])
            msg: str = f"entry ({row}, {column}) is {array[row, column]}, expected -1, 0 or 1"
            raise InvalidEntry(msg)


def as_ternary(matrix: Matrix) -> TernaryMatrix:
    """Re-type a matrix as ternary.

    Raises:
        InvalidEntry: If some entry is outside {-1, 0, 1}.
    """
    if isinstance(matrix, TernaryMatrix):
        return matrix
    return TernaryMatrix(matrix.entries)


def identity(n: int) -> TernaryMatrix:
    return TernaryMatrix(np.eye(n, dtype=np.int64))


def ones(n: int) -> TernaryMatrix:
    return TernaryMatrix(np.ones((n, n), dtype=np.int64))


def zeros(n: int) -> TernaryMatrix:
    return TernaryMatrix(np.zeros((n, n), dtype=np.int64))


def back_identity(n: int) -> TernaryMatrix:
    """The back-diagonal identity R_n, with R[i][n-1-i] = 1."""
    return TernaryMatrix(np.fliplr(np.eye(n, dtype=np.int64)))


def circulant(first_row: Sequence[int]) -> TernaryMatrix:
    """Build the circulant whose row r is the first row cyclically shifted right by r.

    Args:
        first_row: Entries in {-1, 0, 1}.

    Raises:
        InvalidEntry: If an entry is outside {-1, 0, 1}.
        ShapeMismatch: If the row is empty.

    Returns:
        The circulant matrix.
    """
    row: NDArray = np.array(list(first_row), dtype=np.int64)
    if row.ndim != 1 or row.size == 0:
        msg = "circulant needs a non-empty first row"
        raise ShapeMismatch(msg)
    return TernaryMatrix(np.array([np.roll(row, shift) for shift in range(row.size)]))


def back_circulant(blocks: Sequence[Matrix]) -> Matrix:
    """Arrange blocks X_0..X_{m-1} so that block (r, c) is X_{(r+c) mod m}.

    The result is ternary when every block is.

    Raises:
        ShapeMismatch: If the blocks are missing or have different orders.
    """
    if not blocks:
        msg = "back_circulant needs at least one block"
        raise ShapeMismatch(msg)
    orders: set[int] = {block.order for block in blocks}
    if len(orders) != 1:
        msg = f"back_circulant blocks have different orders {sorted(orders)}"
        raise ShapeMismatch(msg)

    count: int = len(blocks)
    grid: list[list[NDArray]] = [[blocks[(r + c) % count].entries for c in range(count)] for r in range(count)]
    stacked: NDArray = np.block(grid)
    if all(isinstance(block, TernaryMatrix) for block in blocks):
        return TernaryMatrix(stacked)
    return IntMatrix(stacked)


def _widen(left: NDArray, right: NDArray, bound: int) -> tuple[NDArray, NDArray]:
    if bound < _INT64_SAFE and left.dtype.kind != "O" and right.dtype.kind != "O":
        return left, right
    return left.astype(object), right.astype(object)


def _check_conformant(left: Matrix, right: Matrix, operation: str) -> None:
    if left.order != right.order:
        msg: str = f"cannot {operation} matrices of orders {left.order} and {right.order}"
        raise ShapeMismatch(msg)


def mul(left: Matrix, right: Matrix) -> IntMatrix:
    """Exact matrix product.

    Raises:
        ShapeMismatch: If the orders differ.
    """
    _check_conformant(left, right, "multiply")
    bound: int = left.order * _max_abs(left.entries) * _max_abs(right.entries)
    a, b = _widen(left.entries, right.entries, bound)
    return IntMatrix(a @ b)


def add(left: Matrix, right: Matrix) -> IntMatrix:
    _check_conformant(left, right, "add")
    a, b = _widen(left.entries, right.entries, _max_abs(left.entries) + _max_abs(right.entries))
    return IntMatrix(a + b)


def sub(left: Matrix, right: Matrix) -> IntMatrix:
    _check_conformant(left, right, "subtract")
    a, b = _widen(left.entries, right.entries, _max_abs(left.entries) + _max_abs(right.entries))
    return IntMatrix(a - b)


def scale(scalar: int, matrix: Matrix) -> IntMatrix:
    a, _ = _widen(matrix.entries, matrix.entries, abs(int(scalar)) * _max_abs(matrix.entries))
    return IntMatrix(a * int(scalar))


def transpose(matrix: Matrix) -> Matrix:
    return matrix.T


def abs_matrix(matrix: TernaryMatrix) -> TernaryMatrix:
    """Entrywise absolute value: the support of a ternary matrix as a 0/1 matrix."""
    return TernaryMatrix(np.abs(matrix.entries))


def kronecker(left: Matrix, right: Matrix) -> Matrix:
    """Kronecker product; ternary when both factors are."""
    bound: int = _max_abs(left.entries) * _max_abs(right.entries)
    a, b = _widen(left.entries, right.entries, bound)
    product: NDArray = np.kron(a, b)
    if isinstance(left, TernaryMatrix) and isinstance(right, TernaryMatrix):
        return TernaryMatrix(product)
    return IntMatrix(product)


def kronecker_all(factors: Iterable[Matrix]) -> Matrix:
    """Left-to-right Kronecker product of several factors."""
    return reduce(kronecker, factors)


def kronecker_power(matrix: Matrix, power: int) -> Matrix:
    """matrix^{⊗power}; the power-0 case is the 1x1 identity."""
    if power == 0:
        return identity(1)
    return kronecker_all([matrix] * power)


def total(matrices: Iterable[Matrix]) -> IntMatrix:
    """Sum of a non-empty collection of matrices."""
    matrices = list(matrices)
    if not matrices:
        msg = "cannot sum an empty collection of matrices"
        raise ShapeMismatch(msg)
    result: IntMatrix = IntMatrix(matrices[0].entries)
    for matrix in matrices[1:]:
        result = add(result, matrix)
    return result


def first_mismatch(actual: Matrix, expected: Matrix) -> tuple[int, int] | None:
    """Lexicographically first (row, column) where two matrices differ, or None."""
    _check_conformant(actual, expected, "compare")
    diff: NDArray = np.argwhere(actual.entries != expected.entries)
    if diff.size == 0:
        return None
    return int(diff[0][0]), int(diff[0][1])


def subject_hash(matrices: Iterable[Matrix]) -> str:
    """sha256 over the content hashes of several matrices, in order."""
    digest = hashlib.sha256()
    for matrix in matrices:
        digest.update(matrix.content_hash().encode())
    return digest.hexdigest()
