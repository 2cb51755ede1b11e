"""Tests for unimodular coordinate changes and the maps they induce."""

import pytest

from algebra.matrix import LaurentMatrix
from core.errors import DimensionMismatchError, NotUnimodularError
from systems.behavior import annihilator
from systems.flow import renormalize
from systems.trajectory import TrajectoryWindow, apply_operator, evaluate_at
from systems.transform import UnimodularTransform, phi_T, phi_hat_T
from conftest import P, random_elementary, random_poly, system

SHEAR = UnimodularTransform.from_rows([[1, 0], [2, 1]])


def test_shear_image():
    assert SHEAR.phi(P("s1*s2 - s1 - s2 + 1", 2)) == P("s1*s2^3 - s1*s2^2 - s2 + 1", 2)
    assert phi_T(P("s1^-1", 2), SHEAR) == P("s1^-1*s2^-2", 2)


def test_module_image(coupled):
    image = SHEAR.phi_hat(coupled)
    assert image.rows == (
        (P("s1*s2^2 - 1", 2), P("2", 2)),
        (P("1", 2), P("s2 - 1", 2)),
    )
    assert phi_hat_T(coupled, SHEAR).rows == image.rows


def test_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError):
        UnimodularTransform.from_rows([[2, 0], [0, 1]])
    with pytest.raises(NotUnimodularError):
        UnimodularTransform.from_rows([[1, 0]])


def test_composition_and_inverse():
    S = UnimodularTransform.from_rows([[0, 1], [1, 0]])
    f = P("s1^2*s2 - 3*s2^-1 + 1", 2)
    assert (SHEAR @ S).phi(f) == SHEAR.phi(S.phi(f))
    assert (SHEAR @ SHEAR.inverse()).is_identity()
    assert SHEAR.inverse().phi(SHEAR.phi(f)) == f
    assert SHEAR.apply((1, 1)) == (1, 3)


def test_block_diagonal():
    T = UnimodularTransform.block_diagonal(SHEAR, 3)
    assert T.tolist() == [[1, 0, 0], [2, 1, 0], [0, 0, 1]]


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        SHEAR.phi(P("s1", 3))
    with pytest.raises(DimensionMismatchError):
        SHEAR.apply((1, 2, 3))


def test_ring_morphism(rng):
    for _ in range(100):
        T = random_elementary(rng, 3)
        f, g = random_poly(rng, 3), random_poly(rng, 3)
        assert T.phi(f * g) == T.phi(f) * T.phi(g)
        assert T.phi(f + g) == T.phi(f) + T.phi(g)
        assert T.phi(P("1", 3)) == P("1", 3)
        if f.is_unit():
            assert T.phi(f.inverse()) == T.phi(f).inverse()


def test_pull_back_intertwines(rng):
    # r(s) Phi_T(w) = Phi_T(phi_T(r) w)
    for _ in range(100):
        T = random_elementary(rng, 2)
        r = random_poly(rng, 2)
        if not r:
            continue
        w = TrajectoryWindow.random((-20, -20), (20, 20), 1, rng)
        pulled = renormalize(w, T, ((-5, -5), (5, 5)))
        lhs = apply_operator(LaurentMatrix(2, [[r]]), pulled)
        op = LaurentMatrix(2, [[T.phi(r)]])
        for nu in lhs.points():
            assert lhs[nu] == evaluate_at(op, w, T.apply(nu))


@pytest.mark.slow
def test_annihilator_commutes_with_transform(rng):
    for _ in range(100):
        T = random_elementary(rng, 2)
        rows = [[random_poly(rng, 2, terms=2) for _ in range(2)] for _ in range(2)]
        if any(not any(r) for r in rows):
            continue
        R = system(2, [[str(p) for p in r] for r in rows])
        assert annihilator(T.phi_hat(R)).spans_equal(T.phi_hat(annihilator(R)))
