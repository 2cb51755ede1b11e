"""Tests for Laurent matrices."""

import pytest

from algebra.laurent import LaurentPolynomial
from algebra.matrix import LaurentMatrix, matrix_ops
from core.errors import DimensionMismatchError, NotUnimodularError
from conftest import P


def M(n, rows):
    return LaurentMatrix(n, [[P(e, n) if isinstance(e, str) else e for e in r] for r in rows])


COMPANION = [[0, 1, 0, 0], [-1, 2, 0, 0], [0, 0, 0, 1], [0, 0, -1, 2]]


def test_det_small():
    R = M(2, [["s1 - 1", 2], [1, "s2 - 1"]])
    assert R.det() == P("s1*s2 - s1 - s2 - 1", 2)
    assert M(1, COMPANION).det() == LaurentPolynomial.one(1)


def test_det_bareiss_matches_triangular_product():
    rows = [[0] * 5 for _ in range(5)]
    diag = ["s1", "2", "s1^-1 + 1", "-1", "s1 - 3"]
    for i in range(5):
        rows[i][i] = diag[i]
        for j in range(i + 1, 5):
            rows[i][j] = f"s1^{j - i} + {i}"
    expected = LaurentPolynomial.one(1)
    for e in diag:
        expected = expected * P(e, 1)
    assert M(1, rows).det() == expected
    assert M(1, rows).transpose().det() == expected


def test_inverse_of_unimodular():
    A = M(1, COMPANION)
    assert A @ A.inverse() == LaurentMatrix.identity(1, 4)
    B = M(1, [["s1", 0], ["s1^2 - 1", 2]])
    assert B.inverse() @ B == LaurentMatrix.identity(1, 2)


def test_inverse_requires_unit_det():
    with pytest.raises(NotUnimodularError):
        M(1, [["s1 - 1"]]).inverse()


def test_rank():
    assert M(2, [[1, "s1"], ["s2", "s1*s2"]]).rank() == 1
    assert M(2, [["s1 - 1", 2], [1, "s2 - 1"]]).rank() == 2
    assert LaurentMatrix(1, [], cols=3).rank() == 0


def test_apply_row():
    A = M(1, COMPANION)
    assert A.apply_row([P("1", 1), P("-1", 1), P("-1", 1), P("1", 1)]) == tuple(
        P(e, 1) for e in ["1", "-1", "-1", "1"]
    )


def test_empty_matrix_keeps_columns():
    X = LaurentMatrix(1, [], cols=4)
    assert X.shape == (0, 4)
    assert X.transpose().shape == (4, 0)


def test_shape_checks():
    with pytest.raises(DimensionMismatchError):
        M(1, [[1, 2], [3]])
    with pytest.raises(DimensionMismatchError):
        M(1, [[1, 2]]) @ M(1, [[1, 2]])
    with pytest.raises(DimensionMismatchError):
        M(1, [[1, 2]]).det()


def test_matrix_ops_by_name():
    A = M(1, [["s1", 1]])
    assert matrix_ops(A, M(1, [[1], ["s1"]]), "mul") == M(1, [["2*s1"]])
    assert matrix_ops(M(1, [["s1", 0], [0, 1]]), None, "det") == P("s1", 1)
