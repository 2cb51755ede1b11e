"""Tests for kernel representations, the annihilator and autonomy."""

from fractions import Fraction

import pytest

from algebra.equations import EquationModule
from core.errors import InsufficientSupportError
from systems.behavior import (
    QuotientModulePresentation,
    act_on_trajectory,
    annihilator,
    characteristic_ideal,
    is_autonomous,
    required_box_for,
)
from systems.trajectory import TrajectoryWindow
from conftest import P, system


def test_annihilator_of_scalar_system_is_the_ideal(spl1):
    ann = annihilator(spl1)
    assert ann.spans_equal(spl1)
    assert ann.contains_element(P("s2^2 - 2*s2 + 1", 3))


def test_annihilator_of_coupled_system(coupled):
    det = P("s1*s2 - s1 - s2 - 1", 2)
    ann = annihilator(coupled)
    assert ann.spans_equal(EquationModule.ideal(2, [det]))
    assert characteristic_ideal(coupled).spans_equal(ann)


def test_annihilator_can_be_smaller_than_minors():
    # R = diag(s1 - 1, s1 - 1): ann = <s1 - 1>, minors = <(s1 - 1)^2>
    R = system(1, [["s1 - 1", "0"], ["0", "s1 - 1"]])
    assert annihilator(R).contains_element(P("s1 - 1", 1))
    assert not characteristic_ideal(R).contains_element(P("s1 - 1", 1))


def test_autonomy(spl1, coupled, nnl):
    assert is_autonomous(spl1)
    assert is_autonomous(coupled)
    assert is_autonomous(nnl)
    assert not is_autonomous(EquationModule.zero(2, 1))
    assert not is_autonomous(system(2, [["s1 - 1", "s2 - 1"]]))


def test_underdetermined_characteristic_ideal_is_zero():
    assert characteristic_ideal(system(2, [["s1", "s2"]])).is_zero()


def test_action_on_trajectory():
    w = TrajectoryWindow.from_function((0, 0), (3, 3), 1, lambda nu: [nu[0] * nu[0]])
    out = act_on_trajectory((P("s1 - 1", 2),), w)
    assert out.box == ((0, 0), (2, 3))
    assert out[(2, 1)] == (Fraction(5),)
    assert required_box_for((P("s1^-1 + s2", 2),), (0, 0), (1, 1)) == ((-1, 0), (1, 2))


def test_action_needs_support():
    w = TrajectoryWindow.zeros((0,), (1,), 1)
    with pytest.raises(InsufficientSupportError):
        act_on_trajectory((P("s1^3 - 1", 1),), w)


def _common(u, v):
    lo = tuple(max(a, b) for a, b in zip(u.lo, v.lo))
    hi = tuple(min(a, b) for a, b in zip(u.hi, v.hi))
    return u.restrict(lo, hi), v.restrict(lo, hi)


def test_lifts_of_one_class_act_alike(geometric):
    # w = 2^nu1 3^nu2 solves (s1 - 2) w = (s2 - 3) w = 0
    w = TrajectoryWindow.from_function(
        (-3, -3), (3, 3), 1, lambda nu: [Fraction(2) ** nu[0] * Fraction(3) ** nu[1]])
    r = P("s1 + s2^-1", 2)
    for k, row in [(P("s1*s2 - 1", 2), 0), (P("s1^-1 + 4", 2), 1)]:
        other = r + k * geometric.rows[row][0]
        assert QuotientModulePresentation(geometric).same_class((r,), (other,))
        u, v = _common(act_on_trajectory((r,), w), act_on_trajectory((other,), w))
        assert u == v
    out = act_on_trajectory((r,), w)
    assert out[(0, 1)] == (Fraction(2 * 3 + 1),)


def test_action_is_linear():
    w1 = TrajectoryWindow.from_function((0, 0), (4, 4), 1, lambda nu: [nu[0] - 2 * nu[1]])
    w2 = TrajectoryWindow.from_function((0, 0), (4, 4), 1, lambda nu: [nu[0] * nu[1] + 1])
    r1, r2 = P("s1*s2 - s2", 2), P("s2^2 + 3", 2)

    lhs = act_on_trajectory((r1,), w1 + w2.scale(3))
    assert lhs == act_on_trajectory((r1,), w1) + act_on_trajectory((r1,), w2).scale(3)

    combined = act_on_trajectory((r1 * 2 - r2,), w1)
    u, v = _common(act_on_trajectory((r1,), w1), act_on_trajectory((r2,), w1))
    expected = u.scale(2) - v
    got, expected = _common(combined, expected)
    assert got == expected


def test_quotient_presentation(coupled):
    M = QuotientModulePresentation(coupled)
    one, zero = P("1", 2), P("0", 2)
    # e1 (s1 - 1) = -2 e2 in the quotient
    assert M.same_class((P("s1 - 1", 2), zero), (zero, P("-2", 2)))
    assert not M.is_zero_class((one, zero))
    assert M.reduce((P("s1*s2 - s1 - s2 - 1", 2), zero)) == (zero, zero)
    assert len(M.basis_classes()) == 2
