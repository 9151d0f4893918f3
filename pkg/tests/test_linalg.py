from fractions import Fraction

import pytest
from hypothesis import given, settings

from gammoidkit.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    NonSquareError,
    SingularMatrixError,
)
from gammoidkit.field import load_field
from gammoidkit.field.fp import MODULUS
from gammoidkit.linalg import (
    FP,
    QQ,
    FieldMatrix,
    det,
    identity_minus,
    inverse,
    matmul,
    nullspace_basis,
    rank,
    row_reduce,
)
from tests.strategies import square_matrices

# columns 1, 2 and 6 of the path-sum matrix of the example digraph
MINOR = [[10, 5, 0], [47, 7, 0], [39, 0, 1]]


def test_det_rational() -> None:
    assert det(FieldMatrix(QQ, MINOR)) == -165


def test_det_fp_reduces_the_rational_value() -> None:
    assert det(FieldMatrix(FP, MINOR)) == -165 % MODULUS


def test_det_symbolically_dependent_columns() -> None:
    a, b, c, d, e, f = map(Fraction, (2, 3, 5, 7, 11, 13))
    m = FieldMatrix(QQ, [[a * c, c, 0], [a * d + b * e, d, e], [b * f, 0, f]])
    assert det(m) == 0


def test_det_empty_and_non_square() -> None:
    assert det(FieldMatrix(QQ, [], ncols=0)) == 1
    with pytest.raises(NonSquareError):
        det(FieldMatrix(QQ, [[1, 2]]))


def test_det_with_fractions_and_row_swap() -> None:
    m = FieldMatrix(QQ, [[0, Fraction(1, 2)], [Fraction(2, 3), 5]])
    assert det(m) == Fraction(-1, 3)


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_bareiss_agrees_with_gauss_mod_p(rows) -> None:
    assert FP.coerce(det(FieldMatrix(QQ, rows))) == det(FieldMatrix(FP, rows))


def test_rank() -> None:
    assert rank(FieldMatrix(QQ, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])) == 2
    assert rank(FieldMatrix(FP, [[0, 0], [0, 0]])) == 0
    assert rank(FieldMatrix(QQ, [], ncols=3)) == 0


def test_row_reduce_pivots() -> None:
    reduced, pivots = row_reduce(FieldMatrix(QQ, [[0, 2, 4], [0, 1, 3]]))
    assert pivots == [1, 2]
    assert reduced == [[0, 1, 0], [0, 0, 1]]


def test_inverse() -> None:
    m = FieldMatrix(QQ, [[1 - Fraction(1, 6)]])
    assert inverse(m) == FieldMatrix(QQ, [[Fraction(6, 5)]])
    m = FieldMatrix(FP, [[2, 1], [7, 4]])
    assert matmul(m, inverse(m)) == FieldMatrix.identity(FP, 2)


def test_inverse_singular() -> None:
    with pytest.raises(SingularMatrixError):
        inverse(FieldMatrix(QQ, [[1, 2], [2, 4]]))
    with pytest.raises(NonSquareError):
        inverse(FieldMatrix(QQ, [[1, 2]]))


def test_nullspace_basis() -> None:
    m = FieldMatrix(QQ, [[1, 0, -2, 0], [0, 1, 0, -3]])
    basis = nullspace_basis(m)
    assert basis.shape == (2, 4)
    assert matmul(m, basis.transpose()).is_zero()
    assert rank(basis) == 2


def test_nullspace_of_full_rank() -> None:
    assert nullspace_basis(FieldMatrix.identity(FP, 3)).shape == (0, 3)


def test_matmul_checks() -> None:
    with pytest.raises(DimensionMismatchError):
        matmul(FieldMatrix(QQ, [[1, 2]]), FieldMatrix(QQ, [[1, 2]]))
    with pytest.raises(FieldMismatchError):
        FieldMatrix(QQ, [[1]]) @ FieldMatrix(FP, [[1]])


def test_ragged_rows() -> None:
    with pytest.raises(DimensionMismatchError):
        FieldMatrix(QQ, [[1, 2], [3]])


def test_identity_minus() -> None:
    m = FieldMatrix(QQ, [[0, Fraction(1, 2)], [0, 0]])
    assert identity_minus(m) == FieldMatrix(QQ, [[1, Fraction(-1, 2)], [0, 1]])


def test_transpose_columns_and_stack() -> None:
    m = FieldMatrix(QQ, [[1, 2, 3], [4, 5, 6]])
    assert m.transpose().shape == (3, 2)
    assert m.columns([2, 0]) == FieldMatrix(QQ, [[3, 1], [6, 4]])
    assert m.stack(m).shape == (4, 3)
    assert FieldMatrix(QQ, [], ncols=2).transpose().shape == (2, 0)


def test_fp_field() -> None:
    assert FP.coerce(Fraction(1, 2)) * 2 % MODULUS == 1
    assert FP.coerce(-1) == MODULUS - 1
    assert FP.describe() == {"name": "fp", "modulus": MODULUS}
    with pytest.raises(ZeroDivisionError):
        FP.inv(0)
    with pytest.raises(FieldMismatchError):
        FP.coerce(0.5)


def test_rational_field() -> None:
    assert QQ.render(Fraction(-6, 4)) == "-3/2"
    assert QQ.div(Fraction(1), Fraction(3)) == Fraction(1, 3)
    with pytest.raises(FieldMismatchError):
        QQ.coerce(True)


def test_load_field() -> None:
    assert load_field("fp") == FP
    assert load_field("rational") == QQ
    assert FP != QQ
    with pytest.raises(ValueError):
        load_field("gf9")
