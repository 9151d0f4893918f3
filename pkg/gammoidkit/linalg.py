"""
Exact dense linear algebra over the rationals and over F_p, p = 2^61 - 1.

Indices in this module are 0-based; the matroid-facing modules translate their 1-based
ground sets before calling in.
"""

import math
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from gammoidkit.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    NonSquareError,
    SingularMatrixError,
)
from gammoidkit.field import BaseField
from gammoidkit.field.fp import FpField
from gammoidkit.field.rational import RationalField

QQ: BaseField = RationalField()
FP: BaseField = FpField()


class FieldMatrix:
    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(
        self, field: BaseField, rows: Iterable[Iterable[Any]], ncols: Optional[int] = None
    ) -> None:
        self.field = field
        self._rows: Tuple[Tuple[Any, ...], ...] = tuple(
            tuple(field.coerce(value) for value in row) for row in rows
        )
        self.nrows = len(self._rows)
        if ncols is None:
            if not self._rows:
                raise DimensionMismatchError("ncols is required for a matrix without rows")
            ncols = len(self._rows[0])
        self.ncols = ncols
        for row in self._rows:
            if len(row) != ncols:
                raise DimensionMismatchError(f"row of length {len(row)}, expected {ncols}")

    @classmethod
    def _trusted(
        cls, field: BaseField, rows: Sequence[Sequence[Any]], ncols: int
    ) -> "FieldMatrix":
        # rows already hold field values
        m = cls.__new__(cls)
        m.field = field
        m._rows = tuple(tuple(row) for row in rows)
        m.nrows = len(m._rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field: BaseField, nrows: int, ncols: int) -> "FieldMatrix":
        zero = field.zero()
        return cls._trusted(field, [[zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: BaseField, n: int) -> "FieldMatrix":
        zero, one = field.zero(), field.one()
        return cls._trusted(
            field, [[one if i == j else zero for j in range(n)] for i in range(n)], n
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> Tuple[Tuple[Any, ...], ...]:
        return self._rows

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self._rows[i][j]

    def transpose(self) -> "FieldMatrix":
        if not self.nrows:
            return FieldMatrix._trusted(self.field, [() for _ in range(self.ncols)], 0)
        return FieldMatrix._trusted(self.field, list(zip(*self._rows)), self.nrows)

    def columns(self, indices: Sequence[int]) -> "FieldMatrix":
        """
        submatrix made of the given columns, in the given order
        """
        return FieldMatrix._trusted(
            self.field, [[row[j] for j in indices] for row in self._rows], len(indices)
        )

    def stack(self, other: "FieldMatrix") -> "FieldMatrix":
        """
        rows of self followed by rows of other
        """
        _check_field(self, other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError(f"cannot stack {self.shape} on {other.shape}")
        return FieldMatrix._trusted(self.field, self._rows + other._rows, self.ncols)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(value) for row in self._rows for value in row)

    def render(self) -> List[List[str]]:
        return [[self.field.render(value) for value in row] for row in self._rows]

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        return matmul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self._rows))

    def __repr__(self) -> str:
        return f"FieldMatrix({self.field.NAME}, {self.nrows}x{self.ncols}, {self.render()})"


def _check_field(a: FieldMatrix, b: FieldMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field.NAME} and {b.field.NAME} matrices")


def _bareiss(rows: List[List[int]]) -> int:
    """
    fraction-free elimination on an integer matrix; every division is exact
    """
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            row_i, row_k = rows[i], rows[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // previous
        previous = pivot
    return sign * rows[n - 1][n - 1]


def _rational_det(m: FieldMatrix) -> Fraction:
    # scale each row to integers, then undo the scaling
    scale = 1
    integer_rows = []
    for row in m.rows:
        lcm = math.lcm(*(value.denominator for value in row)) if row else 1
        scale *= lcm
        integer_rows.append([int(value * lcm) for value in row])
    return Fraction(_bareiss(integer_rows), scale)


def _gauss_det(m: FieldMatrix) -> Any:
    field = m.field
    rows = [list(row) for row in m.rows]
    n = len(rows)
    result = field.one()
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if not field.is_zero(rows[i][k])), None)
        if pivot_row is None:
            return field.zero()
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            result = field.neg(result)
        pivot = rows[k][k]
        result = field.mul(result, pivot)
        pivot_inv = field.inv(pivot)
        for i in range(k + 1, n):
            if field.is_zero(rows[i][k]):
                continue
            factor = field.mul(rows[i][k], pivot_inv)
            rows[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[i], rows[k])]
    return result


def det(m: FieldMatrix) -> Any:
    """
    Exact determinant.

    Rationals go through Bareiss elimination on the integer-scaled matrix, F_p through
    plain Gaussian elimination.
    :param m: square matrix
    :return: scalar of m's field
    """
    if m.nrows != m.ncols:
        raise NonSquareError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    if isinstance(m.field, RationalField):
        return _rational_det(m)
    return _gauss_det(m)


def row_reduce(m: FieldMatrix) -> Tuple[List[List[Any]], List[int]]:
    """
    reduced row echelon form
    :return: (nonzero rows of the rref, pivot columns)
    """
    field = m.field
    rows = [list(row) for row in m.rows]
    pivots: List[int] = []
    r = 0
    for c in range(m.ncols):
        if r == len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if not field.is_zero(rows[i][c])), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot_inv = field.inv(rows[r][c])
        rows[r] = [field.mul(value, pivot_inv) for value in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: FieldMatrix) -> int:
    return len(row_reduce(m)[1])


def nullspace_basis(m: FieldMatrix) -> FieldMatrix:
    """
    Basis of {y : m y^T = 0}, one vector per row.

    Each free column f of the rref contributes the vector with 1 at f and minus the rref
    column f at the pivot positions.
    """
    field = m.field
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vector = [field.zero()] * m.ncols
        vector[free] = field.one()
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = field.neg(row[free])
        basis.append(vector)
    return FieldMatrix._trusted(field, basis, m.ncols)


def inverse(m: FieldMatrix) -> FieldMatrix:
    if m.nrows != m.ncols:
        raise NonSquareError(f"inverse of a {m.nrows}x{m.ncols} matrix")
    field = m.field
    n = m.nrows
    zero, one = field.zero(), field.one()
    augmented = [
        list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m.rows)
    ]
    reduced, pivots = row_reduce(FieldMatrix._trusted(field, augmented, 2 * n))
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return FieldMatrix._trusted(field, [row[n:] for row in reduced], n)


def matmul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    _check_field(a, b)
    if a.ncols != b.nrows:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    field = a.field
    columns = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    product = []
    for row in a.rows:
        out = []
        for column in columns:
            total = field.zero()
            for x, y in zip(row, column):
                total = field.add(total, field.mul(x, y))
            out.append(total)
        product.append(out)
    return FieldMatrix._trusted(field, product, b.ncols)


def identity_minus(m: FieldMatrix) -> FieldMatrix:
    """
    I - m for a square m
    """
    if m.nrows != m.ncols:
        raise NonSquareError(f"I - M of a {m.nrows}x{m.ncols} matrix")
    field = m.field
    return FieldMatrix._trusted(
        field,
        [
            [field.sub(field.one(), v) if i == j else field.neg(v) for j, v in enumerate(row)]
            for i, row in enumerate(m.rows)
        ],
        m.ncols,
    )
