"""Exception types shared across the solvers."""


class RabiError(Exception):
    """Base class for all errors raised by this package."""


class PoleAtBaseline(RabiError, ArithmeticError):
    """Raised when an energy sits on an integer pole ``x = n`` of a displaced-basis function."""

    def __init__(self, n, x):
        super().__init__(f"x={x!r} is within the pole guard of baseline n={n}")
        self.n = n
        self.x = x


class PoleParameter(RabiError, ArithmeticError):
    """Raised when the lower Kummer parameter is a non-positive integer."""


class NonConverged(RabiError):
    """Raised when a truncation doubling check fails at the maximum truncation."""


class Underflow(RabiError, ArithmeticError):
    """Raised when a rescaled recurrence collapses to zero."""


class LostBracket(RabiError):
    """Raised when a bisection step lands inside a pole exclusion zone."""
