import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rgt import DomainError, PoleError, beta, duplication_check, gamma, phi
from rgt.gamma import EPS_EXCL, GammaParameter, StripLocation, classify_strip

mpmath.mp.dps = 30

finite = st.floats(min_value=-20, max_value=20, allow_nan=False)
points = st.builds(complex, finite, finite).filter(
    lambda z: not (z.real <= 0.5 and abs(z - round(z.real)) < 1e-3))


def mp_gamma(z):
    return complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))


@pytest.mark.parametrize("z, expected", [
    (1.0, 1.0),
    (0.5, math.sqrt(math.pi)),
    (5.0, 24.0),
    (-0.5, -2.0 * math.sqrt(math.pi)),
    (1.5, math.sqrt(math.pi) / 2.0),
])
def test_known_values(z, expected):
    assert gamma(z) == pytest.approx(expected, rel=1e-14)


def test_imaginary_unit_modulus():
    # |Gamma(i)|^2 = pi / sinh(pi)
    assert abs(gamma(1j)) ** 2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)


@settings(max_examples=300, deadline=None)
@given(points)
def test_matches_mpmath(z):
    ref = mp_gamma(z)
    assert abs(gamma(z) - ref) <= 1e-12 * abs(ref)


def test_array_matches_scalar():
    zs = np.array([0.3 + 1j, -2.5 + 0.1j, 7.0, -0.7 - 3j])
    out = gamma(zs)
    assert out.shape == zs.shape
    for z, v in zip(zs, out):
        assert v == gamma(complex(z))


@settings(max_examples=200, deadline=None)
@given(points)
def test_conjugate_symmetry_is_exact(z):
    assert gamma(z.conjugate()) == gamma(z).conjugate()


@settings(max_examples=200, deadline=None)
@given(points)
def test_recurrence(z):
    lhs = gamma(z + 1)
    assert abs(lhs - z * gamma(z)) <= 1e-12 * abs(lhs)


@pytest.mark.parametrize("n", [0, -1, -2, -7])
def test_poles_raise(n):
    with pytest.raises(PoleError):
        gamma(n)
    with pytest.raises(PoleError):
        gamma(n + 0.1 * EPS_EXCL)


def test_pole_error_is_a_domain_error():
    with pytest.raises(DomainError):
        gamma(-3.0)


def test_near_pole_but_outside_band_is_finite():
    z = -2 + 10 * EPS_EXCL
    ref = mp_gamma(z)
    assert abs(gamma(z) - ref) <= 1e-6 * abs(ref)


@pytest.mark.parametrize("p, q, expected", [(1, 1, 1.0), (0.5, 0.5, math.pi), (2, 3, 1 / 12)])
def test_beta_exact_points(p, q, expected):
    assert beta(p, q) == pytest.approx(expected, rel=1e-13)


def test_beta_symmetric():
    p, q = 0.7 + 0.3j, 2.1 - 1.2j
    assert abs(beta(p, q) - beta(q, p)) <= 1e-13 * abs(beta(p, q))


@pytest.mark.parametrize("p, q", [(0, 1), (-0.5, 1), (1, -0.1 + 2j)])
def test_beta_domain(p, q):
    with pytest.raises(DomainError):
        beta(p, q)


def test_phi_at_half_is_pi():
    assert phi(0.5) == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("a", [0.25, 1.0, 3.3 + 2j, -0.75, -1.3 + 0.4j])
def test_duplication(a):
    assert duplication_check(a) <= 1e-12


@pytest.mark.parametrize("a, k", [(0.3, None), (2 + 5j, None), (-0.5, 0), (-1.25, 1), (-2.9j - 2.1, 2)])
def test_classify_strip(a, k):
    assert classify_strip(a) == StripLocation(k)


@pytest.mark.parametrize("a", [0, -1, -2 + 3j, 1e-10, -1 - 5e-10])
def test_excluded_lines(a):
    with pytest.raises(DomainError):
        classify_strip(a)


def test_parameter_records_strip():
    p = GammaParameter.from_value(-0.5 + 1j)
    assert p.strip.k == 0 and str(p.strip) == "strip0"
    assert str(GammaParameter.from_value(1).strip) == "right"
    assert cmath.isclose(p.a, -0.5 + 1j)
