"""Exception hierarchy.

Every error the library raises derives from :class:`StrongBlocksError`, so
the CLI can map "could not run" failures to a single exit code while keeping
mathematically negative verdicts (which are *results*, not errors) separate.
"""

from __future__ import annotations


class StrongBlocksError(Exception):
    """Base class for all library errors."""


class NonPrimeError(StrongBlocksError):
    """The claimed characteristic is not a prime number."""


class CapExceededError(StrongBlocksError):
    """An enumeration or scan would exceed the configured cap."""


class AmbientMismatchError(StrongBlocksError):
    """Objects live in different ambient spaces or over different fields."""


class DegenerateCodeError(StrongBlocksError):
    """The generator matrix has an identically-zero column."""


class NonSpanningSystemError(StrongBlocksError):
    """The point multiset lies on a hyperplane."""


class ZeroCodewordError(StrongBlocksError):
    """The zero codeword was passed where a nonzero one is required."""


class DimensionMismatchError(StrongBlocksError):
    """Matrix or subspace dimensions are inconsistent."""


class LengthMismatchError(StrongBlocksError):
    """The number of inner codes does not match the outer length."""


class NotCollinearError(StrongBlocksError):
    """Points expected on a common line are not collinear."""


class NotDistinctError(StrongBlocksError):
    """Points expected distinct coincide."""


class WrongTowerDegreeError(StrongBlocksError):
    """Operation requires a specific extension degree (e.g. h = 2)."""


class TooFewParametersError(StrongBlocksError):
    """The field is too small for the requested construction."""


class SublineViolationError(StrongBlocksError):
    """A selected 4-point set unexpectedly lies on a proper subline."""


class InvalidHError(StrongBlocksError):
    """Subspace dimension parameter out of range for a bound."""


class FormatError(StrongBlocksError):
    """A text input file does not follow the documented format."""


class ConsistencyError(StrongBlocksError):
    """Independent verification engines disagree (internal bug guard)."""
