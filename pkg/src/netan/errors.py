class PreconditionError(ValueError):
    """An algorithm was called on input that violates its contract."""


class ParseError(ValueError):
    """A graph file is malformed; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
