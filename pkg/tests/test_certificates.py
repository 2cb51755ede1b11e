"""Tests for integrality certificates."""

import pytest

from algebra.equations import EquationModule
from core.errors import NotStronglyRelevantError
from systems.certificates import (
    IntegralityCertificate,
    extract_certificate,
    extract_certificates,
    is_strongly_relevant,
    monic_unit_form,
)
from systems.dnnl import dnnl_module
from systems.transform import UnimodularTransform
from conftest import P, system


def test_monic_unit_form():
    p, L = monic_unit_form(P("s1*s2^3 - s1*s2^2 - s2 + 1", 2), 1)
    assert L == 3
    assert p == P("s2^3 - s2^2 - s1^-1*s2 + s1^-1", 2)
    assert monic_unit_form(P("s1*s2 - s1 - s2 + 1", 2), 1) is None
    assert monic_unit_form(P("s1 - 1", 2), 1) is None


def test_shifted_input_is_normalized():
    p, L = monic_unit_form(P("2*s2^-1 - 4 + 2*s2", 2), 1)
    assert (p, L) == (P("s2^2 - 2*s2 + 1", 2), 2)


def test_certificates_of_scalar_system(spl1):
    certs = extract_certificates(spl1, 1)
    assert [(c.var_index, c.degree) for c in certs] == [(1, 2), (2, 2)]
    for c in certs:
        assert c.is_well_formed(1)
        assert c.annihilates(spl1)


def test_certificate_of_planar_system():
    R = system(2, [["s2^2 - 2*s2 + 1"], ["s1*s2 - s2 - s1 + 1"]])
    (cert,) = extract_certificates(R, 1)
    assert cert.polynomial == P("s2^2 - 2*s2 + 1", 2)
    assert str(cert) == "s2: s2^2 - 2*s2 + 1"


def test_certificate_from_non_monic_generators():
    # neither generator is monic in s2; their difference is
    R = system(2, [["(s1 + 1)*(s2 - 1)^2"], ["s1*(s2 - 1)^2"]])
    (cert,) = extract_certificates(R, 1)
    assert cert.degree == 2
    assert cert.is_well_formed(1)
    assert cert.annihilates(R)


def test_not_strongly_relevant(nnl, spl1):
    with pytest.raises(NotStronglyRelevantError) as info:
        extract_certificates(nnl, 1)
    assert info.value.exit_code == 3
    assert not is_strongly_relevant(nnl, 1)
    # below the Krull dimension nothing is integral
    assert not is_strongly_relevant(spl1, 0)
    with pytest.raises(NotStronglyRelevantError):
        extract_certificates(EquationModule.zero(2), 1)


@pytest.mark.parametrize("fixture, order", [("nnl", 1), ("coupled", 1), ("geometric", 0), ("spl1", 1)])
def test_normalized_order_is_minimal(request, fixture, order):
    norm = dnnl_module(request.getfixturevalue(fixture))
    assert norm.d == order
    assert len(extract_certificates(norm.transformed, norm.d)) == norm.transformed.nvars - norm.d
    for lower in range(norm.d):
        with pytest.raises(NotStronglyRelevantError):
            extract_certificates(norm.transformed, lower)
        assert not is_strongly_relevant(norm.transformed, lower)


def test_full_annihilator_gives_trivial_relation():
    cert = extract_certificate(EquationModule.full(2), 1, 1)
    assert cert.polynomial == P("s2 - 1", 2)


def test_transport_keeps_shape():
    cert = IntegralityCertificate(2, P("s3^2 - s1*s3 + s2", 3), 2)
    T = UnimodularTransform.from_rows([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    moved = cert.transport(T)
    assert moved.polynomial == P("s3^2 - s1*s2*s3 + s2", 3)
    assert moved.is_well_formed(2)
    assert not cert.is_well_formed(1)


def test_out_of_range_order(spl1):
    with pytest.raises(ValueError):
        extract_certificates(spl1, 4)
