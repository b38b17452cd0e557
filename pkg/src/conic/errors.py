"""Exception types shared across the package."""


class ConicError(Exception):
    """Base class for all package errors."""


class InputError(ConicError):
    """Invalid user-supplied data: bad cone, malformed input, violated precondition."""


class UnsupportedOperationError(ConicError):
    """Operation not defined for this cone (wrong rank, non-simplicial, ...)."""


class InternalInvariantError(ConicError):
    """A structural invariant failed.  Indicates a bug, not bad input."""


class SupportNotClosedError(ConicError):
    """A partial support cannot resolve a class even after one substitution round."""

    def __init__(self, message, cells=()):
        super().__init__(message)
        self.cells = tuple(cells)
