"""Continuation of ``J(a, xi)`` into the strips ``-k-1 < Re(a) < -k``, ``k >= 1``.

On strip ``k`` the function ``I(a, .)`` solves

    I'' - a^2 I = G,    G(xi) = -(a/(a+1)) I(a+1, xi),

with ``I -> 0`` at both ends, and ``I(a+1, .)`` comes from strip ``k-1``.
Instead of nesting quadratures ``k+1`` deep, ``I(a+1, .)`` is tabulated once
on a uniform grid and interpolated with a cubic spline; the table is cached
per ``(a+1, spec)``.
"""

from __future__ import annotations

import dataclasses
import math
import threading

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DepthExceeded, DomainError
from .gamma import as_parameter
from .quad import DEFAULT_SPEC
from .transforms import (
    Method,
    TransformResult,
    _decaying_solution,
    _check_xi,
    strip_transform,
)

__all__ = ["GRID_STEP", "K_MAX", "ForcingGrid", "continue_to_strip", "forcing_grid"]

K_MAX = 2
GRID_STEP = 0.05
_MAX_EXTENT = 1024.0


class ForcingGrid:
    """Tabulated ``I(b, s)`` for ``s >= 0`` with an even cubic-spline extension.

    Beyond ``extent`` the table is treated as zero; ``extent`` is the first
    power of two (from 8 on) where ``|I(b, s)|`` is below
    ``spec.truncation_tail_tol``.
    """

    def __init__(self, b, spec):
        self.b = b
        self.spec = spec
        route = _route_for(b)

        def i_value(s):
            res = route(b, s, spec)
            return b * res.value, abs(b) * res.err_estimate, res.evaluations

        extent = 8.0
        while extent < _MAX_EXTENT and abs(i_value(extent)[0]) >= spec.truncation_tail_tol:
            extent *= 2.0
        n = int(round(extent / GRID_STEP))
        nodes = GRID_STEP * np.arange(n + 1)
        values = np.empty(n + 1, dtype=complex)
        err = 0.0
        evals = 0
        for j, s in enumerate(nodes):
            values[j], e, m = i_value(s)
            err = max(err, e)
            evals += m
        # I(b, .) is even, so its slope at 0 vanishes
        self.spline = CubicSpline(nodes, values, bc_type=((1, 0.0), "not-a-knot"))
        coarse = CubicSpline(nodes[::2], values[::2], bc_type=((1, 0.0), "not-a-knot"))
        # halving the step cuts the interpolation error by about 16
        interp = float(np.max(np.abs(coarse(nodes[1::2]) - values[1::2]))) / 16.0
        self.extent = float(nodes[-1])
        self.nodes = nodes
        self.knots = np.concatenate([-nodes[:0:-1], nodes])
        self.err_estimate = err + interp
        self.evaluations = evals

    def __call__(self, s):
        s = np.abs(np.asarray(s, dtype=float))
        out = np.zeros(s.shape, dtype=complex)
        inside = s <= self.extent
        out[inside] = self.spline(s[inside])
        return out


_cache = {}
_cache_lock = threading.Lock()


def forcing_grid(b, spec=DEFAULT_SPEC):
    """Return the cached :class:`ForcingGrid` for ``I(b, .)``, building it once.

    Concurrent callers asking for the same key wait on one build; the
    result does not depend on who builds it.
    """
    key = (complex(b), spec)
    with _cache_lock:
        entry = _cache.get(key)
        if entry is None:
            entry = _cache[key] = [threading.Lock(), None]
    lock = entry[0]
    with lock:
        if entry[1] is None:
            entry[1] = ForcingGrid(complex(b), spec)
    return entry[1]


def clear_cache():
    with _cache_lock:
        _cache.clear()


def _route_for(b):
    k = as_parameter(b).strip.k
    if k == 0:
        return strip_transform
    return continue_to_strip


def continue_to_strip(a, xi, spec=DEFAULT_SPEC):
    """``J(a, xi)`` for ``-k-1 < Re(a) < -k`` with ``1 <= k <= K_MAX``.

    Raises
    ------
    DomainError
        If ``a`` is not in a strip with ``k >= 1``.
    DepthExceeded
        If ``k > K_MAX``.
    """
    p = as_parameter(a)
    k = p.strip.k
    if k is None or k < 1:
        raise DomainError(f"continuation needs Re(a) < -1, got a = {p.a!r}")
    if k > K_MAX:
        raise DepthExceeded(f"strip {k} is deeper than the supported depth {K_MAX}")
    xi = _check_xi(xi)
    a = p.a
    b = a + 1.0
    grid = forcing_grid(b, spec)
    factor = -a / b

    def forcing(s):
        return factor * grid(s)

    # knot panels are structural, not adaptive refinement
    wide = dataclasses.replace(spec, max_subdivisions=spec.max_subdivisions + len(grid.knots))
    value, err, evals = _decaying_solution(a, forcing, xi, wide, knots=grid.knots)
    # a forcing error d moves I by at most d / |a Re(a)|
    err += abs(factor) * grid.err_estimate / (abs(a) * abs(a.real))
    if not math.isfinite(err):
        err = math.inf
    return TransformResult(value / a, err / abs(a), evals, Method.CONTINUATION, p.strip)
