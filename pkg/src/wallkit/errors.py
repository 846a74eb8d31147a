"""Exception types shared by the library and the command line."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad file, bad generator index, non-subgroup...)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QueryError(KeyError):
    """A query point lies outside the materialized window."""

    def __str__(self):
        return str(self.args[0]) if self.args else "query outside window"


class EstimationError(ValueError):
    """Sample is too degenerate for a regression."""
