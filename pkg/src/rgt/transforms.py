"""Fourier transform of ``t -> Gamma(a+it) Gamma(a-it)`` by several routes.

Notation used throughout::

    J(a, xi) = integral over R of Gamma(a+it) Gamma(a-it) exp(-i xi t) dt
    I(a, xi) = a * J(a, xi)

``I`` satisfies ``(d^2/dxi^2 - a^2) I(a, .) = -(a/(a+1)) I(a+1, .)``, which
is what lets a transform known on one vertical strip be carried to the next
strip to the left.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .gamma import StripLocation, as_parameter, gamma, phi
from .quad import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_finite,
    integrate_line,
    integrate_semi_infinite,
)

__all__ = [
    "GAMMA_REL_FLOOR",
    "Method",
    "TransformRequest",
    "TransformResult",
    "boundary_constants",
    "closed_form",
    "direct_transform",
    "i_transform",
    "ode_residual",
    "regularized_transform",
    "sech_form",
    "sech_power",
    "strip_formula_explicit",
    "strip_transform",
    "transform",
]

#: Relative accuracy assumed for any value built from a handful of gamma calls.
GAMMA_REL_FLOOR = 1e-13

_LOG2 = math.log(2.0)


class Method(str, enum.Enum):
    DIRECT = "direct"
    CLOSED_FORM = "closed"
    STRIP_FORMULA = "strip"
    CONTINUATION = "continuation"
    AUTO = "auto"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TransformResult:
    value: complex
    err_estimate: float
    evaluations: int
    method: Method
    strip: StripLocation


@dataclass(frozen=True)
class TransformRequest:
    a: complex
    xi: float
    method: Method = Method.AUTO
    spec: QuadratureSpec = DEFAULT_SPEC

    def run(self):
        return transform(self.a, self.xi, self.method, self.spec)


def log_cosh(x):
    """``log(cosh(x))`` for real ``x`` without overflow."""
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - _LOG2


def sech_power(x, w):
    """``sech(x) ** w`` for real ``x`` and complex ``w``.

    ``cosh(x)`` is positive on the real line, so the principal power is
    ``exp(-w * log(cosh(x)))`` with the real logarithm.
    """
    return np.exp(-w * log_cosh(x))


def _check_xi(xi):
    xi = float(xi)
    if not math.isfinite(xi):
        raise DomainError("xi must be finite")
    return xi


def direct_transform(a, xi, spec=DEFAULT_SPEC):
    """``J(a, xi)`` by quadrature of the defining integral.

    Works in every strip and serves as the reference for the other routes.
    """
    p = as_parameter(a)
    xi = _check_xi(xi)
    a = p.a

    def integrand(t):
        return gamma(a + 1j * t) * gamma(a - 1j * t) * np.exp(-1j * xi * t)

    res = integrate_line(integrand, spec.with_wavenumber(xi))
    return TransformResult(res.value, res.err_estimate, res.evaluations, Method.DIRECT, p.strip)


def _require_right_half(p, name):
    if not p.strip.is_right_half:
        raise DomainError(f"{name} needs Re(a) > 0, got a = {p.a!r}")


def closed_form(a, xi):
    """``2 pi Gamma(2a) / (4**a cosh(xi/2)**(2a))``, valid for ``Re(a) > 0``."""
    p = as_parameter(a)
    _require_right_half(p, "closed_form")
    xi = _check_xi(xi)
    a = p.a
    value = 2.0 * math.pi * gamma(2.0 * a) * np.exp(-a * 2.0 * _LOG2 - 2.0 * a * log_cosh(xi / 2.0))
    value = complex(value)
    return TransformResult(value, GAMMA_REL_FLOOR * abs(value), 0, Method.CLOSED_FORM, p.strip)


def sech_form(a, xi):
    """``sqrt(pi) Gamma(a) Gamma(a+1/2) sech(xi/2)**(2a)`` for ``Re(a) > 0``.

    Equal to :func:`closed_form` by the duplication formula.
    """
    p = as_parameter(a)
    _require_right_half(p, "sech_form")
    xi = _check_xi(xi)
    value = complex(phi(p.a) * sech_power(xi / 2.0, 2.0 * p.a))
    return TransformResult(value, GAMMA_REL_FLOOR * abs(value), 0, Method.CLOSED_FORM, p.strip)


def _shifted(points, offset, sign=1.0):
    if points is None:
        return None
    return sign * (np.asarray(points) - offset)


def _constant_integrals(a, forcing, spec, knots=None):
    # B uses G(s) for s > 0, A uses G(-s); both weighted by the decaying mode.
    rate = a if a.real < 0 else -a
    plus = integrate_semi_infinite(lambda s: np.exp(rate * s) * forcing(s), 0.0, spec, knots)
    minus = integrate_semi_infinite(lambda s: np.exp(rate * s) * forcing(-s), 0.0, spec,
                                    None if knots is None else -np.asarray(knots))
    return plus, minus


def boundary_constants(a, forcing, spec=DEFAULT_SPEC, knots=None):
    """Constants ``(A, B)`` of the decaying solution of ``I'' - a^2 I = G``.

    The general solution is::

        I(xi) = e^{a xi} (A + 1/(2a) int_0^xi e^{-as} G ds)
              + e^{-a xi} (B - 1/(2a) int_0^xi e^{as} G ds)

    and ``A``, ``B`` are fixed by ``I -> 0`` at both ends. ``forcing`` is a
    vectorized callable ``G``; ``knots`` lists points where it is not smooth.
    """
    p = as_parameter(a)
    plus, minus = _constant_integrals(p.a, forcing, spec.with_wavenumber(2 * abs(p.a.imag)), knots)
    return _constants_from(p.a, plus.value, minus.value)


def _constants_from(a, plus, minus):
    if a.real < 0:
        return minus / (2.0 * a), plus / (2.0 * a)
    return -plus / (2.0 * a), -minus / (2.0 * a)


def _decaying_solution(a, forcing, xi, spec, knots=None, constants=None):
    """Evaluate the decaying solution of ``I'' - a^2 I = G`` at ``xi`` (``Re(a) < 0``).

    The growing mode is folded into a tail integral so that no term is ever
    larger than the answer: for ``xi >= 0``::

        I(xi) = A e^{a xi} + 1/(2a) [int_0^xi e^{a(xi-s)} G(s) ds
                                     + int_0^inf e^{ar} G(xi+r) dr]

    and the mirror image for ``xi < 0``. Returns ``(value, err, evals)``.
    """
    spec = spec.with_wavenumber(2 * abs(a.imag))
    if constants is None:
        plus, minus = _constant_integrals(a, forcing, spec, knots)
        constants = (plus, minus)
    plus, minus = constants
    big_a, big_b = _constants_from(a, plus.value, minus.value)
    err = (plus.err_estimate + minus.err_estimate) / abs(2.0 * a)
    evals = plus.evaluations + minus.evaluations

    if xi >= 0:
        near = integrate_finite(lambda s: np.exp(a * (xi - s)) * forcing(s), 0.0, xi, spec, knots)
        far = integrate_semi_infinite(lambda r: np.exp(a * r) * forcing(xi + r), 0.0, spec,
                                      _shifted(knots, xi))
        homog = big_a * np.exp(a * xi)
    else:
        near = integrate_finite(lambda s: np.exp(a * (s - xi)) * forcing(s), xi, 0.0, spec, knots)
        far = integrate_semi_infinite(lambda r: np.exp(a * r) * forcing(xi - r), 0.0, spec,
                                      _shifted(knots, xi, -1.0))
        homog = big_b * np.exp(-a * xi)
    value = complex(homog + (near.value + far.value) / (2.0 * a))
    err += (near.err_estimate + far.err_estimate) / abs(2.0 * a)
    evals += near.evaluations + far.evaluations
    return value, err, evals


def _strip_weight(a):
    expo = 2.0 * a + 2.0
    return lambda s: sech_power(s / 2.0, expo)


@lru_cache(maxsize=256)
def _strip_constant_integrals(a, spec):
    # forcing is -a Phi(a+1) w(s); keep the scalar outside the quadrature
    return _constant_integrals(a, _strip_weight(a), spec.with_wavenumber(2 * abs(a.imag)))


def _strip_i(a, xi, spec):
    scale = -a * phi(a + 1.0)
    plus, minus = _strip_constant_integrals(a, spec)
    value, err, evals = _decaying_solution(a, _strip_weight(a), xi, spec,
                                           constants=(plus, minus))
    return scale * value, abs(scale) * err + GAMMA_REL_FLOOR * abs(scale * value), evals


def strip_transform(a, xi, spec=DEFAULT_SPEC):
    """``J(a, xi)`` for ``-1 < Re(a) < 0`` by variation of parameters.

    Here ``I(a, .)`` solves ``I'' - a^2 I = -a Phi(a+1) sech(xi/2)**(2a+2)``
    with ``I -> 0`` at both ends; the result is ``J = I / a``.
    """
    p = as_parameter(a)
    if p.strip.k != 0:
        raise DomainError(f"strip_transform needs -1 < Re(a) < 0, got a = {p.a!r}")
    xi = _check_xi(xi)
    value, err, evals = _strip_i(p.a, xi, spec)
    return TransformResult(value / p.a, err / abs(p.a), evals, Method.STRIP_FORMULA, p.strip)


def strip_formula_explicit(a, xi, spec=DEFAULT_SPEC):
    """``J(a, xi)`` on ``-1 < Re(a) < 0`` from the closed variation-of-parameters
    expression::

        I = -Phi(a+1) [cosh(a xi) int_0^inf e^{as} w(s) ds
                       + int_0^xi sinh(a(xi - s)) w(s) ds],   w = sech(s/2)**(2a+2)

    The two terms grow like ``exp(|Re a| |xi|)`` and cancel, so this loses
    digits for large ``|xi|``; :func:`strip_transform` does not.
    """
    p = as_parameter(a)
    if p.strip.k != 0:
        raise DomainError(f"strip_formula_explicit needs -1 < Re(a) < 0, got a = {p.a!r}")
    xi = _check_xi(xi)
    a = p.a
    w = _strip_weight(a)
    spec = spec.with_wavenumber(2 * abs(a.imag))
    tail = integrate_semi_infinite(lambda s: np.exp(a * s) * w(s), 0.0, spec)
    head = integrate_finite(lambda s: np.sinh(a * (xi - s)) * w(s), 0.0, xi, spec)
    scale = -phi(a + 1.0)
    value = scale * (np.cosh(a * xi) * tail.value + head.value)
    err = abs(scale) * (abs(np.cosh(a * xi)) * tail.err_estimate + head.err_estimate)
    return TransformResult(complex(value / a), err / abs(a),
                           tail.evaluations + head.evaluations, Method.STRIP_FORMULA, p.strip)


def transform(a, xi, method=Method.AUTO, spec=DEFAULT_SPEC):
    """Dispatch to one route by ``method``.

    ``auto`` picks the closed form on ``Re(a) > 0``, the strip formula on
    ``-1 < Re(a) < 0`` and continuation further left.
    """
    from .continuation import continue_to_strip

    p = as_parameter(a)
    method = Method(method)
    if method is Method.AUTO:
        if p.strip.is_right_half:
            method = Method.CLOSED_FORM
        elif p.strip.k == 0:
            method = Method.STRIP_FORMULA
        else:
            method = Method.CONTINUATION
    if method is Method.DIRECT:
        return direct_transform(p, xi, spec)
    if method is Method.CLOSED_FORM:
        return closed_form(p, xi)
    if method is Method.STRIP_FORMULA:
        return strip_transform(p, xi, spec)
    return continue_to_strip(p, xi, spec)


def i_transform(a, xi, spec=DEFAULT_SPEC):
    """``I(a, xi) = a J(a, xi)`` with ``J`` from the automatic route."""
    p = as_parameter(a)
    res = transform(p, xi, Method.AUTO, spec)
    return TransformResult(p.a * res.value, abs(p.a) * res.err_estimate, res.evaluations,
                           res.method, res.strip)


def ode_residual(a, xi, h=1e-3, spec=DEFAULT_SPEC):
    """Relative residual of ``I'' - a^2 I + (a/(a+1)) I(a+1, .)`` at ``xi``.

    The second derivative is the central difference with step ``h``, so a
    correct implementation leaves ``O(h^2)`` plus noise from the values.
    """
    p = as_parameter(a)
    q = as_parameter(p.a + 1.0)
    if h <= 0:
        raise ValueError("h must be positive")
    xi = _check_xi(xi)
    a = p.a
    lo = i_transform(p, xi - h, spec).value
    mid = i_transform(p, xi, spec).value
    hi = i_transform(p, xi + h, spec).value
    nxt = i_transform(q, xi, spec).value
    d2 = (hi - 2.0 * mid + lo) / (h * h)
    return abs(d2 - a * a * mid + (a / (a + 1.0)) * nxt) / abs(nxt)


def regularized_transform(a, xi, eps, spec=DEFAULT_SPEC):
    """Gaussian-damped transform, evaluated as an iterated integral::

        Gamma(2a) int dt exp(-eps t^2 - i t xi)
                  int du (e^{2itu} + e^{-2itu}) (e^u + e^{-u})^{-2a}

    The inner integral (in ``u``) is done first at every outer node. As
    ``eps -> 0`` the result tends to :func:`closed_form`.
    """
    p = as_parameter(a)
    _require_right_half(p, "regularized_transform")
    if not eps > 0:
        raise DomainError("eps must be positive")
    xi = _check_xi(xi)
    a = p.a
    # Inner values carry absolute noise near inner_spec.abs_tol; the outer
    # tail test cannot see below that, so its threshold sits above it.
    inner_spec = QuadratureSpec(abs_tol=1e-12, rel_tol=0.0,
                                max_subdivisions=max(spec.max_subdivisions, 8000),
                                truncation_tail_tol=1e-14)
    outer_spec = dataclasses.replace(
        spec, truncation_tail_tol=max(spec.truncation_tail_tol, 1000 * inner_spec.abs_tol))

    def inner(t):
        # (e^u + e^{-u})^{-2a} = exp(-2a (log 2 + log cosh u))
        def f(u):
            return 2.0 * np.cos(2.0 * t * u) * np.exp(-2.0 * a * (_LOG2 + log_cosh(u)))
        return integrate_line(f, inner_spec.with_wavenumber(2.0 * t)).value

    # the inner integral is even in t and the outer panels are symmetric
    seen = {}

    def inner_even(t):
        t = abs(float(t))
        if t not in seen:
            seen[t] = inner(t)
        return seen[t]

    def outer(ts):
        vals = np.array([inner_even(t) for t in ts])
        return np.exp(-eps * ts * ts - 1j * ts * xi) * vals

    res = integrate_line(outer, outer_spec.with_wavenumber(xi))
    return complex(gamma(2.0 * a) * res.value)

