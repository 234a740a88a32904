from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from lssd_core import (
    DimensionError,
    FormatError,
    IntMatrix,
    InvalidParametersError,
    KreinViolationError,
    LssdError,
    RatMatrix,
    common_denominator,
    int_mat_mul,
    is_perfect_square,
    kronecker,
    mat_mul,
    rank_exact,
)


def test_from_rows_rejects_ragged_rows() -> None:
    with pytest.raises(DimensionError):
        _ = IntMatrix.from_rows([[1, 2], [3]])


def test_int_matrix_is_read_only() -> None:
    m = IntMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.data[0, 0] = 7


def test_identity_product_and_transpose() -> None:
    m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert IntMatrix.identity(2) @ m == m
    assert m.T.shape == (3, 2)
    assert m.T[2, 1] == 6
    assert m.row_sums() == [6, 15]
    assert m.col_sums() == [5, 7, 9]


def test_product_shape_mismatch() -> None:
    a = IntMatrix.zeros(2, 3)
    with pytest.raises(DimensionError):
        _ = int_mat_mul(a, a)


def test_product_beyond_int64_is_exact() -> None:
    big = 2**40
    m = IntMatrix.from_rows([[big, 1], [1, big]])
    sq = m @ m
    assert sq[0, 0] == big * big + 1
    assert sq[0, 1] == 2 * big


def test_add_sub_neg_scale() -> None:
    a = IntMatrix.from_rows([[1, 0], [0, 1]])
    b = IntMatrix.ones(2, 2)
    assert (a + b).tolist() == [[2, 1], [1, 2]]
    assert (b - a).tolist() == [[0, 1], [1, 0]]
    assert (-a).tolist() == [[-1, 0], [0, -1]]
    assert b.scale(3).values() == {3}
    with pytest.raises(DimensionError):
        _ = a + IntMatrix.ones(3, 3)


def test_block_assembly() -> None:
    z, i = IntMatrix.zeros(2, 2), IntMatrix.identity(2)
    m = IntMatrix.block([[z, i], [i, z]])
    assert m.shape == (4, 4)
    assert m.is_symmetric()
    assert m.submatrix(0, 2, 2, 4) == i


def test_kronecker_of_sylvester_kernel() -> None:
    h = IntMatrix.from_rows([[1, 1], [1, -1]])
    h4 = kronecker(h, h)
    assert h4.tolist() == [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ]
    assert kronecker(IntMatrix.identity(2), IntMatrix.ones(3, 3)).shape == (6, 6)


@pytest.mark.parametrize(
    ("matrix", "rank"),
    [
        (IntMatrix.identity(5), 5),
        (IntMatrix.ones(4, 4), 1),
        (IntMatrix.zeros(3, 4), 0),
        (IntMatrix.identity(7).scale(2) + IntMatrix.ones(7, 7), 7),
        (IntMatrix.identity(4).scale(4) - IntMatrix.ones(4, 4), 3),
    ],
)
def test_rank_exact(matrix: IntMatrix, rank: int) -> None:
    assert rank_exact(matrix) == rank


def test_rank_exact_rational() -> None:
    m = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [1, Fraction(2, 3)]])
    assert rank_exact(m) == 1


def test_rational_matrix_arithmetic() -> None:
    m = RatMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [0, 1]])
    assert mat_mul(m, RatMatrix.identity(2)) == m
    scaled, den = m.to_scaled_int()
    assert den == 6
    assert scaled.tolist() == [[3, 2], [0, 6]]
    assert (m + m)[0, 0] == 1
    assert m.scale(Fraction(3))[1, 1] == 3
    assert RatMatrix.from_int(IntMatrix.identity(2)) == RatMatrix.identity(2)


def test_scalar_helpers() -> None:
    assert is_perfect_square(16) == 4
    assert is_perfect_square(0) == 0
    assert is_perfect_square(15) is None
    assert is_perfect_square(-4) is None
    assert common_denominator([Fraction(1, 2), Fraction(1, 3), Fraction(5)]) == 6


def test_errors_carry_context() -> None:
    e = InvalidParametersError("bad", "k(k-1)=lambda(v-1)")
    assert e.constraint == "k(k-1)=lambda(v-1)"
    f = FormatError("missing block", "blocks[1,3]")
    assert f.field == "blocks[1,3]"
    assert isinstance(f, ValueError) and isinstance(f, LssdError)
    k = KreinViolationError(1, 1, 1, Fraction(-2, 9))
    assert k.indices == (1, 1, 1)
    assert k.value == Fraction(-2, 9)


def test_int_matrix_rejects_floats() -> None:
    with pytest.raises(TypeError):
        _ = IntMatrix(np.array([[0.5]]))
