"""Route agreement, frozen values and an independent scipy oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from rgt import (
    DomainError,
    Method,
    QuadratureSpec,
    boundary_constants,
    closed_form,
    direct_transform,
    i_transform,
    integrate_line,
    integrate_semi_infinite,
    ode_residual,
    phi,
    regularized_transform,
    sech_form,
    strip_transform,
    transform,
)
from rgt.transforms import sech_power, strip_formula_explicit

FOUR_PI_LN2 = 8.710344361214402


def oracle_j(modulus_sq, xi):
    """``2 int_0^inf |Gamma(a+it)|^2 cos(xi t) dt`` by QUADPACK.

    The moduli below decay like ``exp(-pi t)``, so ``[0, 40]`` loses nothing.
    """
    val, _ = integrate.quad(modulus_sq, 0, 40, weight="cos", wvar=xi,
                            epsabs=1e-14, epsrel=1e-12, limit=1000)
    return 2 * val


def sech(x):
    e = math.exp(-abs(x))
    return 2 * e / (1 + e * e)


def sq_minus_half(t):
    return math.pi * sech(math.pi * t) / (0.25 + t * t)


def sq_minus_three_halves(t):
    return math.pi * sech(math.pi * t) / ((2.25 + t * t) * (0.25 + t * t))


def test_frozen_four_pi_ln2():
    assert FOUR_PI_LN2 == pytest.approx(4 * math.pi * math.log(2), rel=1e-15)
    assert oracle_j(sq_minus_half, 0.0) == pytest.approx(FOUR_PI_LN2, rel=1e-10)


@pytest.mark.parametrize("a, xi, expected", [
    (0.5, 0.0, math.pi),
    (1.0, 0.0, math.pi / 2),
    (0.5, 2.0, math.pi / math.cosh(1.0)),
    (-0.5, 0.0, FOUR_PI_LN2),
])
def test_direct_transform_values(a, xi, expected):
    res = direct_transform(a, xi)
    assert res.method is Method.DIRECT
    assert abs(res.value - expected) <= 1e-9 * expected


@pytest.mark.parametrize("a, xi", [(0.5, 0.0), (1.0, 0.0), (0.5, 2.0), (2.25, -5.0), (1.5 + 0.7j, 0.5)])
def test_closed_and_sech_forms_agree(a, xi):
    c = closed_form(a, xi).value
    s = sech_form(a, xi).value
    assert abs(c - s) <= 1e-12 * abs(c)


def test_closed_form_half_at_two():
    assert closed_form(0.5, 2.0).value.real == pytest.approx(2.0359, abs=1e-4)


@pytest.mark.parametrize("a", [-0.5, 0.0, -1.0 + 1j])
def test_closed_form_rejects_left_half(a):
    with pytest.raises(DomainError):
        closed_form(a, 0.0)
    with pytest.raises(DomainError):
        sech_form(a, 0.0)


@pytest.mark.parametrize("a", [0.3, 1.0, 2.25, 1.5 + 0.7j])
@pytest.mark.parametrize("xi", [0.0, 0.5, 2.0, 5.0])
def test_direct_matches_closed_form(a, xi):
    d = direct_transform(a, xi).value
    c = closed_form(a, xi).value
    assert abs(d - c) <= 1e-8 * abs(c)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 6.0), st.floats(-3.0, 3.0), st.floats(-30.0, 30.0))
def test_closed_form_even_in_xi(re, im, xi):
    a = complex(re, im)
    assert closed_form(a, xi).value == closed_form(a, -xi).value


def test_sech_power_survives_large_argument():
    assert sech_power(800.0, 2.0) == 0.0 or sech_power(800.0, 2.0) < 1e-300
    assert math.isfinite(abs(sech_power(-50.0, 3 + 2j)))


@pytest.mark.parametrize("a", [-0.25, -0.5, -0.75, -0.5 + 0.4j])
@pytest.mark.parametrize("xi", [0.0, 1.0, -3.0])
def test_strip_matches_direct(a, xi):
    s = strip_transform(a, xi).value
    d = direct_transform(a, xi).value
    assert abs(s - d) <= 1e-6 * abs(d)


@pytest.mark.parametrize("xi", [0.0, 0.7, 3.0, 9.0])
def test_strip_matches_scipy_oracle(xi):
    assert strip_transform(-0.5, xi).value.real == pytest.approx(oracle_j(sq_minus_half, xi), rel=1e-8)


def test_strip_four_pi_ln2():
    res = strip_transform(-0.5, 0.0)
    assert abs(res.value - FOUR_PI_LN2) <= 1e-8 * FOUR_PI_LN2
    assert res.method is Method.STRIP_FORMULA


@pytest.mark.parametrize("a", [-0.25, -0.5, -0.75])
def test_strip_positive_at_origin(a):
    assert strip_transform(a, 0.0).value.real > 0


def test_i_transform_at_minus_half():
    assert i_transform(-0.5, 0.0).value.real == pytest.approx(-2 * math.pi * math.log(2), rel=1e-9)
    assert i_transform(1.0, 0.0).value.real == pytest.approx(math.pi / 2, rel=1e-12)


@pytest.mark.parametrize("a", [0.5, -1.5, -0.5 + 1e-12])
def test_strip_transform_domain(a):
    if -1 < a < 0:
        strip_transform(a, 0.0)
        return
    with pytest.raises(DomainError):
        strip_transform(a, 0.0)


def test_strip_even_in_xi():
    a = -0.3 + 0.2j
    assert abs(strip_transform(a, 2.0).value - strip_transform(a, -2.0).value) <= 1e-12


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_large_xi_stays_stable():
    # the transform decays; the stable route must not blow up
    ref = oracle_j(sq_minus_half, 20.0)
    assert strip_transform(-0.5, 20.0).value.real == pytest.approx(ref, rel=1e-6)


def test_explicit_formula_matches_stable_route():
    for xi in (0.0, 1.0, -2.0):
        e = strip_formula_explicit(-0.5, xi).value
        s = strip_transform(-0.5, xi).value
        assert abs(e - s) <= 1e-8 * abs(s)


def test_cosh_kernel_disagrees():
    # replacing sinh by cosh in the finite-range kernel is not a solution
    a, xi = -0.5, 1.0
    w = lambda s: sech_power(s / 2.0, 2.0 * a + 2.0)
    tail = integrate.quad(lambda s: math.exp(a * s) * w(s).real, 0, np.inf)[0]
    head = integrate.quad(lambda s: math.cosh(a * (xi - s)) * w(s).real, 0, xi)[0]
    literal = -phi(a + 1).real * (math.cosh(a * xi) * tail + head) / a
    good = strip_transform(a, xi).value.real
    assert abs(literal - good) > 0.1 * abs(good)


def test_boundary_constants_at_minus_half():
    a = -0.5
    forcing = lambda s: -a * phi(a + 1) * sech_power(s / 2.0, 2 * a + 2)
    big_a, big_b = boundary_constants(a, forcing)
    expected = -math.pi * math.log(2)
    assert big_a == pytest.approx(expected, rel=1e-9)
    assert big_b == pytest.approx(expected, rel=1e-9)


def test_boundary_constant_sign_in_right_half():
    a = 0.5
    w = lambda s: sech_power(s / 2.0, 2 * a + 2)
    forcing = lambda s: -a * phi(a + 1) * w(s)
    big_a, _ = boundary_constants(a, forcing)
    moment = integrate_semi_infinite(lambda s: np.exp(-a * s) * w(s), 0.0).value
    assert big_a == pytest.approx(phi(a + 1) / 2 * moment, rel=1e-9)


def test_strip_weight_moment():
    res = integrate_semi_infinite(lambda s: np.exp(-s / 2) / np.cosh(s / 2), 0.0)
    assert res.value.real == pytest.approx(2 * math.log(2), rel=1e-10)


def test_strip_moment_independent_of_truncation():
    a = 0.5
    f = lambda s: sech_power(s / 2.0, 2 * a + 2) * np.exp(a * s)
    coarse = integrate_semi_infinite(f, 0.0, QuadratureSpec(truncation_tail_tol=1e-12)).value
    fine = integrate_semi_infinite(f, 0.0, QuadratureSpec(truncation_tail_tol=1e-15)).value
    assert coarse.real > 0
    assert abs(coarse - fine) <= 1e-10


def test_line_examples():
    assert integrate_line(lambda t: 2 / (np.exp(t) + np.exp(-t)) ** 2).value == pytest.approx(1, rel=1e-10)
    assert integrate_line(lambda t: 1 / np.cosh(np.pi * t)).value == pytest.approx(1, rel=1e-10)


@pytest.mark.parametrize("a, xi, tol", [(1.0, 0.5, 1e-5), (-0.5, 1.0, 1e-4), (0.3, 1.5, 1e-4)])
def test_ode_residual(a, xi, tol):
    assert ode_residual(a, xi) <= tol


def test_i_even_at_origin():
    h = 1e-3
    lo = i_transform(0.5, -h).value
    hi = i_transform(0.5, h).value
    assert abs(hi - lo) <= 1e-12


def test_transform_dispatch():
    assert transform(1.0, 0.0).method is Method.CLOSED_FORM
    assert transform(-0.5, 0.0).method is Method.STRIP_FORMULA
    assert transform(-1.5, 0.0).method is Method.CONTINUATION
    assert transform(1.0, 0.0, "direct").method is Method.DIRECT
    with pytest.raises(DomainError):
        transform(-0.5, 0.0, Method.CLOSED_FORM)


@pytest.mark.parametrize("xi", [math.nan, math.inf])
def test_nonfinite_xi_rejected(xi):
    with pytest.raises(DomainError):
        direct_transform(0.5, xi)


def test_regularized_converges():
    target = math.pi / 2
    errors = [abs(regularized_transform(1.0, 0.0, eps) - target) for eps in (1e-2, 1e-3, 1e-4)]
    assert errors[1] <= 0.01 * target
    assert errors[0] > errors[1] > errors[2]


def test_regularized_half_at_two():
    target = math.pi / math.cosh(1.0)
    assert abs(regularized_transform(0.5, 2.0, 1e-4) - target) <= 0.005 * target


def test_regularized_domain():
    with pytest.raises(DomainError):
        regularized_transform(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        regularized_transform(-0.5, 0.0, 1e-3)
