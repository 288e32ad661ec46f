"""Exceptions and warnings shared across the package."""


class DomainError(ValueError):
    """Argument outside the supported domain (caps, sign constraints, bad kind)."""


class NonConvergenceError(RuntimeError):
    """A series hit its term cap before meeting the tolerance.

    Carries the partial value and the running error estimate so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message, partial=None, est_error=None, terms=None):
        super().__init__(message)
        self.partial = partial
        self.est_error = est_error
        self.terms = terms


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to meet its tolerance."""

    def __init__(self, message, estimate=None, achieved=None):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class ContourTooCloseError(RuntimeError):
    """A zero lies (numerically) on a counting contour; perturb the rectangle."""


class JetDepthError(ValueError):
    """A jet of insufficient truncation order was supplied."""


class UnsupportedParametersError(ValueError):
    """Parameter combination outside the implemented range (e.g. odd q inversion)."""


class CalibrationError(RuntimeError):
    """Inversion constant calibration disagreed between calibration points."""


class NotEnoughZerosError(RuntimeError):
    """A radial scan found fewer zeros than the construction needs."""


class TangentZeroWarning(UserWarning):
    """A near-tangent dip of the scanned function was detected but not bracketed."""
