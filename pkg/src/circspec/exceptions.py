"""Structured numerical failures, distinct from argument validation (ValueError)."""


class CircspecError(Exception):
    """Base class for numerical failures in circspec routines."""


class PrecisionEscalationRequired(CircspecError):
    """Double precision is insufficient; retry with precision='extended'."""


class SmallDivisorError(CircspecError):
    """A recurrence divisor fell below threshold; fall back to the determinant route."""


class BranchTrackingError(CircspecError):
    """Continuity-based branch selection became ambiguous (trajectory near 0)."""


class PoleError(CircspecError):
    """Evaluation requested at a pole of a prefactor (e.g. xi = 2 for beta = 1)."""


class SingularityError(CircspecError):
    """ODE step size collapsed, consistent with a movable singularity."""

    def __init__(self, message, t_estimate=None):
        super().__init__(message)
        self.t_estimate = t_estimate


class InstabilityError(CircspecError):
    """ODE integration lost stability; carries the last trusted abscissa."""

    def __init__(self, message, t_last=None):
        super().__init__(message)
        self.t_last = t_last


class ResourceError(CircspecError):
    """Requested discretisation exceeds the configured resource cap."""
