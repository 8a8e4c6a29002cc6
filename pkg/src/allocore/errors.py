"""Exception types shared across the package."""


class EnumerationLimitError(Exception):
    """Raised when an operation would enumerate more coalitions than allowed."""


class PreconditionError(Exception):
    """Raised when an operation's structural precondition does not hold."""


class UndefinedRatioError(PreconditionError):
    """Raised when a ratio-based quantity is requested for a game with c(N) = 0."""


class InstanceParseError(Exception):
    """Raised when an instance file cannot be parsed."""
