"""Exception hierarchy shared by all modules."""


class RGTError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RGTError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class PoleError(DomainError):
    """The gamma function was asked for a value at (or next to) a pole."""


class NonConvergence(RGTError, ArithmeticError):
    """A quadrature could not meet its tolerance within budget.

    The partial result, when one exists, is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DepthExceeded(RGTError):
    """Continuation was requested for a strip deeper than supported."""


class ExtrapolationUnstable(RGTError, ArithmeticError):
    """Successive Richardson extrapolants move apart instead of settling."""
