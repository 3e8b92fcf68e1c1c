"""Jump of ``J(a, xi)`` (or ``I = a J``) as ``a`` crosses the imaginary axis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ExtrapolationUnstable
from .gamma import EPS_EXCL, gamma
from .quad import DEFAULT_SPEC
from .transforms import closed_form, strip_transform

__all__ = ["JumpEstimate", "default_deltas", "jump_closed_form", "jump_estimate", "neville_at_zero"]


@dataclass(frozen=True)
class JumpEstimate:
    p: complex
    xi: float
    deltas: tuple
    two_sided_values: tuple
    extrapolated: complex
    closed_form: complex
    discrepancy: float
    level: str = "J"
    extrapolants: tuple = field(default=())


def _check_p(p):
    p = complex(p)
    if p.real != 0.0 or p == 0:
        raise DomainError(f"p must be purely imaginary and nonzero, got {p!r}")
    return p


def jump_closed_form(p, xi, level="J"):
    """``4 pi cosh(p xi) Gamma(2p)``; with ``level="I"`` the jump of
    ``a J`` instead, ``2 pi cosh(p xi) Gamma(1 + 2p)``."""
    p = _check_p(p)
    xi = float(xi)
    if level == "J":
        return complex(4.0 * math.pi * np.cosh(p * xi) * gamma(2.0 * p))
    if level == "I":
        return complex(2.0 * math.pi * np.cosh(p * xi) * gamma(1.0 + 2.0 * p))
    raise ValueError(f"level must be 'J' or 'I', got {level!r}")


def default_deltas(p):
    """Three halving steps starting at ``min(0.05, 0.1 |p|)``.

    ``Gamma(2a)`` has a pole at ``a = 0``, a distance ``|p|`` away, so the
    steps shrink with ``|p|`` to keep the extrapolation inside its radius.
    """
    s = min(0.05, 0.1 * abs(complex(p)))
    return (s, s / 2.0, s / 4.0)


def neville_at_zero(x, y):
    """Successive polynomial extrapolants to ``x = 0``.

    Entry ``j`` interpolates the first ``j + 1`` points.
    """
    x = [float(v) for v in x]
    p = [complex(v) for v in y]
    out = [p[0]]
    n = len(x)
    # p[i] holds the interpolant through points i..i+m
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i])
        out.append(p[0])
    return out


def jump_estimate(p, xi, deltas=None, spec=DEFAULT_SPEC, level="J", rtol=1e-3):
    """Estimate the jump at ``p`` from one-sided values at ``p +- delta``.

    The right limit uses the closed form, the left one the strip formula.
    The differences are extrapolated to ``delta = 0`` by polynomial
    (Richardson) extrapolation through all supplied deltas.

    Raises
    ------
    ExtrapolationUnstable
        If the last extrapolation correction is more than twice the one
        before it and exceeds ``rtol`` relative to the estimate.
    """
    p = _check_p(p)
    xi = float(xi)
    if deltas is None:
        deltas = default_deltas(p)
    deltas = tuple(float(d) for d in deltas)
    if not deltas:
        raise ValueError("at least one delta is required")
    if any(d <= 0 for d in deltas) or any(d1 <= d2 for d1, d2 in zip(deltas, deltas[1:])):
        raise ValueError("deltas must be positive and strictly decreasing")
    if deltas[-1] < 10 * EPS_EXCL:
        raise ValueError(f"smallest delta must be at least {10 * EPS_EXCL:g}")
    if deltas[0] >= 1.0:
        raise DomainError("deltas must be below 1 to stay inside -1 < Re(a) < 0")

    pairs = []
    diffs = []
    for d in deltas:
        right = closed_form(p + d, xi).value
        left = strip_transform(p - d, xi, spec).value
        if level == "I":
            right *= p + d
            left *= p - d
        pairs.append((right, left))
        diffs.append(right - left)

    ext = neville_at_zero(deltas, diffs)
    if len(ext) >= 3:
        last = abs(ext[-1] - ext[-2])
        prev = abs(ext[-2] - ext[-3])
        if last > 2.0 * prev and last > rtol * abs(ext[-1]):
            raise ExtrapolationUnstable(
                f"extrapolants diverge: corrections {prev:.3g} then {last:.3g}")
    reference = jump_closed_form(p, xi, level)
    estimate = ext[-1]
    return JumpEstimate(p, xi, deltas, tuple(pairs), estimate, reference,
                        abs(estimate - reference) / abs(reference), level, tuple(ext))
