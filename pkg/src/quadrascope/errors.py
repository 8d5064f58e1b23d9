"""Exception types shared across the package."""


class QuadrascopeError(Exception):
    """Base class for all package errors."""


class InvalidMatrix(QuadrascopeError):
    """Matrix input is malformed (non-square, non-finite, wrong dtype)."""


class InvalidInput(QuadrascopeError):
    """Generic bad argument: dimension mismatch, bad range, bad schema."""


class NotPositiveDefinite(QuadrascopeError):
    """A matrix required to be positive-definite is not."""


class NotPSD(QuadrascopeError):
    """A matrix required to be positive-semidefinite has a negative eigenvalue."""


class NotDefiniteDirection(QuadrascopeError):
    """The requested coefficient direction does not give a positive-definite combination."""


class DegenerateDirection(QuadrascopeError):
    """The coefficient direction is (anti)parallel to the supporting direction."""


class UnsupportedDomain(QuadrascopeError):
    """The domain falls outside the certification hypotheses (real field, n = 1)."""


class Unsupported(QuadrascopeError):
    """Operation not available for these dimensions (e.g. edge tracing needs m = 2)."""
