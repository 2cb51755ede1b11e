"""Shared fixtures: seeded randomness and the worked example systems."""

import numpy as np
import pytest

from algebra.equations import EquationModule
from algebra.matrix import LaurentMatrix
from algebra.parser import parse_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def system(n, rows):
    parsed = [[P(e, n) for e in r] for r in rows]
    return EquationModule.from_matrix(LaurentMatrix(n, parsed, cols=len(rows[0])))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def spl1():
    """3-D scalar system, strongly relevant of order 1 without a transform."""
    return system(3, [
        ["s3^2 - 2*s3 + 1"],
        ["s2^2 - 2*s2 + 1"],
        ["s1*s3 - s1 - s2 - s3 + 2"],
    ])


@pytest.fixture
def nnl():
    """ker(s1 s2 - s1 - s2 + 1): needs a shear before it is strongly relevant."""
    return system(2, [["s1*s2 - s1 - s2 + 1"]])


@pytest.fixture
def coupled():
    """Two coupled equations, q = 2."""
    return system(2, [["s1 - 1", "2"], ["1", "s2 - 1"]])


@pytest.fixture
def geometric():
    """ker col(s1 - 2, s2 - 3): w = 2^nu1 3^nu2, d = 0."""
    return system(2, [["s1 - 2"], ["s2 - 3"]])


def random_poly(rng, n, terms=3, low=-1, high=1):
    """Sparse integer Laurent polynomial with exponents in [low, high]^n."""
    from algebra.laurent import LaurentPolynomial

    coeffs = {}
    for _ in range(terms):
        exp = tuple(int(e) for e in rng.integers(low, high + 1, size=n))
        coeffs[exp] = int(rng.integers(-3, 4))
    return LaurentPolynomial(n, coeffs)


def random_elementary(rng, n):
    from systems.transform import UnimodularTransform

    i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
    return UnimodularTransform.elementary(n, i, j, int(rng.choice([-2, -1, 1, 2])))
