"""Fourier transforms of the squared modulus of the gamma function on vertical lines."""

from .errors import (
    DepthExceeded,
    DomainError,
    ExtrapolationUnstable,
    NonConvergence,
    PoleError,
)
from .gamma import GammaParameter, StripLocation, beta, duplication_check, gamma, phi
from .quad import QuadratureResult, QuadratureSpec, integrate_finite, integrate_line, integrate_semi_infinite
from .transforms import (
    Method,
    TransformResult,
    boundary_constants,
    closed_form,
    direct_transform,
    i_transform,
    ode_residual,
    regularized_transform,
    sech_form,
    strip_transform,
    transform,
)
from .continuation import continue_to_strip
from .jump import JumpEstimate, jump_closed_form, jump_estimate

__version__ = "0.1.0"
