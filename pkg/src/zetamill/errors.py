"""Exception types shared across the package."""


class ZetamillError(Exception):
    """Base class for all package-specific errors."""


class CapExceeded(ZetamillError):
    """An enumeration or table build would exceed its configured cost cap.

    Carries the estimated cost so callers (and the CLI) can report how far
    over budget the request was.
    """

    def __init__(self, message, estimated=None, cap=None):
        super().__init__(message)
        self.estimated = estimated
        self.cap = cap


class MathInconsistency(ZetamillError):
    """An exact computation produced structurally impossible output.

    Raised e.g. when a zeta reconstruction yields non-integer coefficients,
    a Hodge-number identity fails, or a factor violates its degree bound.
    These signal wrong inputs (irregular f, wrong polytope, corrupted
    counts), never recoverable conditions.
    """


class ReconstructionError(MathInconsistency):
    """Counts do not determine a rational function within the degree bound."""
