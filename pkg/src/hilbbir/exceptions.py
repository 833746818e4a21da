"""Exception types shared across the package."""

from __future__ import annotations


class HilbBirError(Exception):
    """Base class for all errors raised by hilbbir."""


class SquareRadicand(HilbBirError, ValueError):
    """The radicand of a Pell equation is a perfect square."""

    def __init__(self, r: int):
        super().__init__(f"radicand {r} is a perfect square")
        self.r = r


class ZeroClass(HilbBirError, ValueError):
    """Divisibility was requested for the zero class."""


class NotApplicable(HilbBirError):
    """A standing hypothesis of a construction fails for the given parameters."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ParameterViolation(HilbBirError, ValueError):
    """Input parameters violate a documented constraint."""


class InvariantViolation(HilbBirError, AssertionError):
    """Two independent computations that must agree did not."""
