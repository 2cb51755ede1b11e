"""Tests for state-space freeness and non-autonomy."""

from types import SimpleNamespace

from algebra.laurent import LaurentPolynomial
from algebra.matrix import LaurentMatrix
from systems.dnnl import dnnl_module
from systems.realization import build_realization
from systems.state import (
    analyze_state_space,
    faithful_over,
    freeness_check,
    minor_ideal,
    nonautonomy_check,
)
from conftest import P


def test_spl1_state_space_is_free(spl1):
    real = build_realization(spl1, 1)
    report = analyze_state_space(real)
    assert report.rank == 2
    assert report.is_free
    assert report.is_nonautonomous
    assert "bezout" in report.witnesses
    assert report.to_dict() == analyze_state_space(real).to_dict()


def test_bezout_witness_combines_to_one(spl1):
    real = build_realization(spl1, 1)
    witness = freeness_check(real).witnesses["bezout"]
    minors = [P(m, 1) for m in witness["minors"]]
    cofactors = [P(c, 1) for c in witness["cofactors"]]
    total = sum((a * b for a, b in zip(minors, cofactors)), LaurentPolynomial.zero(1))
    assert total == LaurentPolynomial.one(1)


def test_torsion_state_space_is_not_free():
    X = LaurentMatrix(1, [[P("s1 - 1", 1)]])
    fake = SimpleNamespace(X=X, gamma=1, d=1)
    report = freeness_check(fake)
    assert not report.is_free
    assert report.rank == 1
    assert "minor_ideal" in report.witnesses
    assert not minor_ideal(fake).is_full()


def test_empty_relations_are_free(geometric):
    real = build_realization(geometric, 0)
    report = analyze_state_space(real)
    assert report.rank == 0
    assert report.is_free
    assert report.witnesses == {}


def test_nonautonomy_after_normalization(nnl):
    norm = dnnl_module(nnl)
    assert nonautonomy_check(norm)
    assert not faithful_over(norm.transformed, 2)
