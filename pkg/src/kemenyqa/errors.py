"""Exception types raised by kemenyqa."""
from typing import Any, Optional


class KemenyError(Exception):
    """Base class for all kemenyqa errors."""


class InvalidArgumentError(KemenyError, ValueError):
    """An argument or input file violates a precondition."""


class InvalidStateError(KemenyError, ValueError):
    """An object is in a state the operation cannot handle (e.g. undecided bits)."""


class ProblemTooLargeError(KemenyError, ValueError):
    """An exhaustive method was asked to enumerate beyond its cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} too large: {size} exceeds cap {cap}")


class DecodeError(KemenyError, ValueError):
    """A sampler configuration does not decode to a ranking."""


class PairRemovalError(KemenyError, RuntimeError):
    """Pair-removal restarts were exhausted."""

    def __init__(self, message: str, best: Optional[Any] = None):
        super().__init__(message)
        self.best = best
