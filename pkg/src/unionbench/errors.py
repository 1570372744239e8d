"""Exception types shared across the package."""

from __future__ import annotations


class Error(Exception):
    """Base class for all package-specific errors."""


class TangencyError(Error):
    """Two boundaries touch instead of crossing (within tolerance)."""


class CoincidentError(Error):
    """Two members are identical within tolerance."""


class KindError(Error):
    """Operation applied to a family of the wrong kind."""


class ParameterError(Error, ValueError):
    """Invalid parameter value."""


class GenerationFailure(Error):
    """A generator exhausted its re-sampling budget without a valid family."""


class FormatError(Error):
    """A family file is structurally malformed."""


class ValidationError(Error):
    """A family fails general-position validation."""


class DegeneracyError(Error):
    """Charging hit a degenerate configuration that validation should exclude."""


class CertificateFailure(Error):
    """A charge-certificate check failed.

    The claims behind the certificate are proven, so a failure indicates an
    implementation bug rather than a property of the input family.
    """

    def __init__(self, message: str, curve_id: int | None = None,
                 points: tuple | None = None) -> None:
        super().__init__(message)
        self.curve_id = curve_id
        self.points = points


class BudgetExceeded(Error):
    """Exact clique search exceeded its node budget."""
