"""Tests for separating shears and the normalization flow chart."""

import numpy as np
import pytest

from algebra.equations import EquationModule, contract_to_subring
from core.config import EngineSettings
from systems.behavior import annihilator
from systems.dnnl import (
    dnnl_ideal,
    dnnl_module,
    krull_dimension,
    normalize,
    normalize_polynomial,
    separating_vector,
    step_down,
)
from systems.transform import UnimodularTransform
from conftest import P

SHEAR = UnimodularTransform.from_rows([[1, 0], [2, 1]])


def test_minimal_separating_vector():
    f = P("s1*s2 - s1 - s2 + 1", 2)
    assert separating_vector(f) == (2,)
    T, image = normalize_polynomial(f)
    assert T == SHEAR
    assert image == P("s1*s2^3 - s1*s2^2 - s2 + 1", 2)


def test_separating_vector_fallback():
    f = P("1 + s1*s2", 3)
    assert separating_vector(f, bound=0) == (9, 3)
    assert separating_vector(f) == (0, 1)


def test_normalized_polynomial_has_single_term_coefficients(rng):
    for _ in range(30):
        exps = {tuple(int(x) for x in rng.integers(-2, 3, size=3)) for _ in range(4)}
        f = P(" + ".join("s1^%d*s2^%d*s3^%d" % e for e in exps), 3)
        T, image = normalize_polynomial(f)
        assert all(len(c) == 1 for c in image.coefficients_in(2).values())
        assert T.matrix[2][2] == 1


def test_trivial_polynomials_need_no_shear():
    T, image = normalize_polynomial(P("3*s1^2*s2^-1", 2))
    assert T.is_identity()
    with pytest.raises(ValueError):
        normalize_polynomial(P("0", 2))


def test_flow_chart_on_shear_example(nnl):
    result = dnnl_ideal(nnl)
    assert result.transform == SHEAR
    assert result.d == 1
    assert result.path == [2]
    assert contract_to_subring(result.transformed, 1).is_zero()
    assert result.transformed.spans_equal(EquationModule.ideal(2, [P("s1*s2^3 - s1*s2^2 - s2 + 1", 2)]))
    (cert,) = result.certificates
    assert cert.var_index == 1
    assert cert.degree == 3
    assert cert.polynomial == P("s2^3 - s2^2 - s1^-1*s2 + s1^-1", 2)
    result.check_invariants()


def test_flow_chart_keeps_strongly_relevant_coordinates(spl1):
    result = dnnl_module(spl1)
    assert result.transform.is_identity()
    assert result.d == 1
    assert result.path == [3, 2]
    polys = {c.var_index: c.polynomial for c in result.certificates}
    assert polys == {1: P("s2^2 - 2*s2 + 1", 3), 2: P("s3^2 - 2*s3 + 1", 3)}
    assert all(w.is_well_formed(w.var_index) for w in result.witnesses)
    result.check_invariants()


def test_module_normalization(coupled):
    result = dnnl_module(coupled)
    assert result.transform == SHEAR
    assert result.d == 1
    assert result.transformed.rows == SHEAR.phi_hat(coupled).rows
    assert result.annihilator.spans_equal(EquationModule.ideal(2, [P("s1*s2^3 - s1*s2^2 - s2 - 1", 2)]))
    (cert,) = result.certificates
    assert cert.polynomial == P("s2^3 - s2^2 - s1^-1*s2 - s1^-1", 2)
    result.check_invariants()


def test_zero_dimensional(geometric):
    result = dnnl_module(geometric)
    assert result.d == 0
    assert result.transform.is_identity()
    assert sorted(str(c.polynomial) for c in result.certificates) == ["s1 - 2", "s2 - 3"]


def test_full_and_zero_ideals():
    full = dnnl_ideal(EquationModule.full(2))
    assert full.d == 0
    assert full.transform.is_identity()
    zero = dnnl_ideal(EquationModule.zero(2))
    assert zero.d == 2
    assert zero.certificates == []


def test_step_down_returns_none_on_trivial_intersection(nnl):
    assert step_down(SHEAR.phi_hat(nnl), 1) is None


def test_krull_dimension(spl1, nnl, geometric):
    assert krull_dimension(annihilator(spl1)) == 1
    assert krull_dimension(nnl) == 1
    assert krull_dimension(geometric) == 0


def test_random_selection_is_seeded(nnl):
    settings = EngineSettings(selection="random", seed=7)
    first = normalize(nnl, settings)
    second = normalize(nnl, settings, np.random.default_rng(7))
    assert first.transform == second.transform
    assert first.d == second.d == 1
    first.check_invariants()


@pytest.mark.parametrize("seed", [3, 11, 2024])
@pytest.mark.parametrize("fixture", [
    "nnl",
    "coupled",
    pytest.param("spl1", marks=pytest.mark.slow),
])
def test_random_selection_agrees_on_d(request, fixture, seed):
    system = request.getfixturevalue(fixture)
    expected = dnnl_module(system).d
    result = dnnl_module(system, selection="random", rng=np.random.default_rng(seed))
    assert result.d == expected == 1
    result.check_invariants()
