"""Tests for the polynomial grammar and box syntax."""

from fractions import Fraction

import pytest

from algebra.laurent import LaurentPolynomial
from algebra.parser import from_sympy, parse_matrix, parse_polynomial, split_box, to_sympy
from core.errors import ParseError


def test_parse_basic():
    f = parse_polynomial("s1*s2^-1 - 3/2", 2)
    assert f == LaurentPolynomial(2, {(1, -1): 1, (0, 0): Fraction(-3, 2)})


def test_parse_expands_products():
    assert parse_polynomial("(s1 - 1)*(s1 + 1)", 1) == parse_polynomial("s1^2 - 1", 1)


def test_parse_integer_entry():
    assert parse_polynomial(2, 3) == LaurentPolynomial.constant(3, 2)


def test_unknown_variable_reports_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("s1 + s3", 2, line=4, column=10)
    assert info.value.line == 4
    assert info.value.column == 15
    assert info.value.exit_code == 2


@pytest.mark.parametrize("text", ["", "   ", "s1 $ 2", "s1^(1/2)", "x + 1", "s1 +* 2"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, 2)


def test_sympy_round_trip():
    f = parse_polynomial("3/4*s1^-2*s2 - s2^3 + 7", 2)
    assert from_sympy(to_sympy(f), 2) == f


def test_parse_matrix_tags_entry():
    with pytest.raises(ParseError) as info:
        parse_matrix([["s1", "s1 +"]], 1)
    assert info.value.details["row"] == 0
    assert info.value.details["col"] == 1


def test_split_box():
    assert split_box("-3:3,0:2") == [(-3, 3), (0, 2)]
    with pytest.raises(ParseError):
        split_box("3:1")
    with pytest.raises(ParseError):
        split_box("1-2")
