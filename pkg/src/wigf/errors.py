"""Exception hierarchy shared by every module."""


class WigfError(Exception):
    """Base class for all errors raised by :mod:`wigf`."""


class DomainError(WigfError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class UnsupportedModelError(WigfError, ValueError):
    """Requested operation or closed form is not available for this model."""


class SupportMismatchError(DomainError):
    """Reference density vanishes where the numerator density is positive."""


class IntegrationError(WigfError, ArithmeticError):
    """Quadrature failed (NaN integrand, bad interval)."""


class NonConvergenceError(IntegrationError):
    """Adaptive quadrature hit its subdivision limit without meeting tolerance."""


class DivergenceError(NonConvergenceError):
    """The integral does not appear to be finite."""


class InfiniteMeanError(DivergenceError):
    """Construction needs a finite mean, but the mean is infinite."""


class EstimationError(WigfError, ArithmeticError):
    """Estimator could not be evaluated (vanishing survival, empty sample)."""


class InputError(WigfError, OSError):
    """Unreadable or malformed input data."""
