"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """An input value violates a documented precondition.

    ``field`` optionally names the first offending field of a parsed file,
    so command-line diagnostics can point at it.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ResourceLimitError(RuntimeError):
    """An operation would exceed its configured size ceiling."""


class AlreadyCompleteError(ValidationError):
    """A Latin rectangle is already square and cannot gain a row."""
