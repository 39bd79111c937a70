"""Exception types shared by the library and the CLI."""


class FlagRankError(Exception):
    """Base class for library errors."""


class InvalidInput(FlagRankError, ValueError):
    """Arguments violate a documented precondition."""


class BudgetExceeded(FlagRankError, RuntimeError):
    """An exhaustive scan would exceed the configured codeword budget."""
