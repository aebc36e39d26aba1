"""Exceptions module for the sosggm project."""


class SosGgmError(Exception):
    """Base exception class for all sosggm errors."""


class InvalidTemperature(SosGgmError):
    """Exception raised when tau does not admit a temperature theta in (0, 1)."""


class ConstraintViolation(SosGgmError):
    """Exception raised when initial values violate u_{-1} + u_1 < tau."""


class EmptyProblem(SosGgmError):
    """Exception raised when a root search is asked of a constant polynomial."""


class NotARoot(SosGgmError):
    """Exception raised when deflating a polynomial by a value that is not its root."""


class NoTransition(SosGgmError):
    """Exception raised when a bisection bracket shows the same solution count at both ends."""


class EnumerationTooLarge(SosGgmError):
    """Exception raised when a marginal table would exceed the configured support size."""


class BallTooLarge(SosGgmError):
    """Exception raised when a tree ball radius exceeds the configured guard."""


class InternalError(SosGgmError):
    """Exception raised when a quantity that must be finite is not."""


class OutputError(SosGgmError):
    """Exception raised when a result file cannot be written."""
