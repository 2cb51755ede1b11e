"""Tests for Laurent polynomial arithmetic."""

from fractions import Fraction

import pytest

from algebra.laurent import LaurentPolynomial, clear_to_polynomial, clear_vector, exact_divide, poly_arith
from core.errors import DimensionMismatchError
from conftest import P


def test_canonical_form_drops_zero_terms():
    f = LaurentPolynomial(2, {(1, 0): 0, (0, 1): 2})
    assert f == LaurentPolynomial(2, {(0, 1): 2})
    assert LaurentPolynomial(2, {(1, 1): 0}).is_zero()


def test_printing_order():
    assert str(P("1 - s1 - s2 + s1*s2", 2)) == "s1*s2 - s1 - s2 + 1"
    assert str(P("s2^-1", 2)) == "s2^-1"
    assert str(LaurentPolynomial.zero(3)) == "0"
    assert str(P("-3/2 + s1", 1)) == "s1 - 3/2"


def test_arithmetic():
    s1 = LaurentPolynomial.variable(2, 0)
    s2 = LaurentPolynomial.variable(2, 1)
    assert (s1 - 1) * (s2 - 1) == P("s1*s2 - s1 - s2 + 1", 2)
    assert s1 ** -2 == P("s1^-2", 2)
    assert (s1 + s2) ** 2 == P("s1^2 + 2*s1*s2 + s2^2", 2)
    assert 2 - s1 == P("2 - s1", 2)
    assert poly_arith(s1, s2, "mul") == P("s1*s2", 2)
    with pytest.raises(ValueError):
        poly_arith(s1, s2, "div")


def test_units_and_inverse():
    u = P("2*s1^-1*s2", 2)
    assert u.is_unit()
    assert u.inverse() == P("1/2*s1*s2^-1", 2)
    assert u * u.inverse() == LaurentPolynomial.one(2)
    assert not P("s1 - 1", 2).is_unit()
    with pytest.raises(ValueError):
        P("s1 - 1", 2).inverse()


def test_clear():
    g, mu = P("s1^-1*s2 - s1^-2", 2).clear()
    assert g == P("s1*s2 - 1", 2)
    assert mu == (2, 0)
    assert clear_to_polynomial(P("s2^-3", 2)) == (P("1", 2), (0, 3))
    with pytest.raises(ValueError):
        LaurentPolynomial.zero(2).clear()


def test_clear_vector():
    row, mu = clear_vector((P("s1^-1", 2), P("s2^-2 + 1", 2)))
    assert mu == (1, 2)
    assert row == (P("s2^2", 2), P("s1 + s1*s2^2", 2))


def test_exact_divide():
    assert exact_divide(P("s1^2 - 1", 1), P("s1 - 1", 1)) == P("s1 + 1", 1)
    assert P("s1^-1*s2^2 - s1^-1", 2) / P("s2 + 1", 2) == P("s1^-1*s2 - s1^-1", 2)
    with pytest.raises(ValueError):
        exact_divide(P("s1^2 + 1", 1), P("s1 - 1", 1))
    with pytest.raises(ZeroDivisionError):
        exact_divide(P("s1", 1), LaurentPolynomial.zero(1))


def test_degree_and_support():
    f = P("s1^-1 + s2", 2)
    assert f.total_degree() == 2
    assert f.min_exponents() == (-1, 0)
    assert f.max_exponents() == (0, 1)
    assert sorted(f.support()) == [(-1, 0), (0, 1)]
    assert f.variables() == [0, 1]


def test_coefficients_in():
    coeffs = P("s1*s2 + s2 + 3", 2).coefficients_in(1)
    assert coeffs == {1: P("s1 + 1", 2), 0: P("3", 2)}


def test_embed_and_project():
    f = P("s1*s2^2 - 1", 2)
    g = f.embed(3, [0, 2])
    assert g == P("s1*s3^2 - 1", 3)
    assert g.project([0, 2]) == f
    with pytest.raises(ValueError):
        P("s1 + s2", 2).project([0])


def test_evaluate():
    assert P("s1 - 2", 2).evaluate((2, 5)) == 0
    assert P("s1^-1 * s2", 2).evaluate((2, 3)) == Fraction(3, 2)


def test_mismatched_rings():
    with pytest.raises(DimensionMismatchError):
        P("s1", 1) + P("s1", 2)
    with pytest.raises(DimensionMismatchError):
        LaurentPolynomial(2, {(1,): 1})


def test_hash_is_value_based():
    assert len({P("s1 + 1", 1), P("1 + s1", 1)}) == 1
