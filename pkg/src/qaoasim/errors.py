"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called with arguments that break its preconditions."""


class ResourceError(RuntimeError):
    """An allocation or retry budget was exceeded."""


class ParseError(ValueError):
    """A text input (graph, term or params file) could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
