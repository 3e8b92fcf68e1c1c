import math

import numpy as np
import pytest
from scipy import integrate

from rgt import DepthExceeded, DomainError, Method, continue_to_strip, direct_transform
from rgt.continuation import GRID_STEP, forcing_grid


def oracle_minus_three_halves(xi):
    # |Gamma(-3/2 + it)|^2 by partial fractions of the a = 1/2 modulus
    def f(t):
        e = math.exp(-math.pi * t)
        return math.pi * 2 * e / (1 + e * e) / ((2.25 + t * t) * (0.25 + t * t))
    val, _ = integrate.quad(f, 0, 40, weight="cos", wvar=xi, epsabs=1e-14, epsrel=1e-12, limit=1000)
    return 2 * val


@pytest.mark.parametrize("xi", [0.0, 1.0, -1.0, 4.0])
def test_matches_partial_fraction_oracle(xi):
    res = continue_to_strip(-1.5, xi)
    assert res.method is Method.CONTINUATION
    assert res.value.real == pytest.approx(oracle_minus_three_halves(xi), rel=1e-6)


@pytest.mark.parametrize("a", [-1.25, -1.75, -1.5 + 0.3j])
@pytest.mark.parametrize("xi", [0.0, 1.0])
def test_matches_direct(a, xi):
    c = continue_to_strip(a, xi).value
    d = direct_transform(a, xi).value
    assert abs(c - d) <= 1e-4 * abs(d)


def test_real_for_real_parameter():
    res = continue_to_strip(-1.25, 0.3)
    assert abs(res.value.imag) <= 10 * res.err_estimate


def test_even_in_xi():
    assert continue_to_strip(-1.25, 0.8).value == pytest.approx(continue_to_strip(-1.25, -0.8).value, rel=1e-12)


@pytest.mark.slow
def test_second_strip_matches_direct():
    a = -2.5
    c = continue_to_strip(a, 0.5).value
    d = direct_transform(a, 0.5).value
    assert abs(c - d) <= 1e-4 * abs(d)


@pytest.mark.parametrize("a", [-0.5, 0.5])
def test_rejects_shallow_strips(a):
    with pytest.raises(DomainError):
        continue_to_strip(a, 0.0)


def test_rejects_deep_strips():
    with pytest.raises(DepthExceeded):
        continue_to_strip(-3.5, 0.0)


def test_rejects_excluded_line():
    with pytest.raises(DomainError):
        continue_to_strip(-2.0, 0.0)


def test_grid_is_cached_and_even():
    g = forcing_grid(-0.5)
    assert forcing_grid(-0.5) is g
    assert g.nodes[1] == pytest.approx(GRID_STEP)
    s = np.array([0.37, 3.1])
    assert np.array_equal(g(s), g(-s))
    assert g(np.array([g.extent + 1.0]))[0] == 0
