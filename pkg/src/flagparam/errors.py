"""Exception hierarchy shared by every module.

All library errors derive from :class:`FlagparamError` so callers can catch
one base class.  ``ValidationError`` also derives from ``ValueError`` and
carries a short machine-readable ``code`` used by the CLI.
"""


class FlagparamError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FlagparamError, ValueError):
    """Malformed input: bad shapes, broken invariants, invalid JSON."""

    def __init__(self, message, code="INVALID"):
        super().__init__(message)
        self.code = code


class NotPSDError(FlagparamError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class SingularInputError(FlagparamError):
    """A matrix required to be nonsingular is singular at the working tolerance."""


class OutOfChartError(FlagparamError):
    """The point does not belong to the requested chart."""


class NoChartError(FlagparamError):
    """No chart accepts the point; the input is not a valid projector."""


class GapAmbiguityError(FlagparamError):
    """An eigenvalue gap falls inside the clustering ambiguity band."""


class PrincipalRangeWarning(UserWarning):
    """A generator lies outside the certified principal range of the closed form."""
