"""Exception hierarchy.

Every error carries a ``category`` used by the CLI to pick an exit code.
"""


class SDepthError(Exception):
    category = "error"
    exit_code = 1


class ValidationError(SDepthError, ValueError):
    category = "validation"
    exit_code = 2


class DimensionMismatch(ValidationError):
    pass


class NumericError(SDepthError, ValueError):
    category = "numeric"
    exit_code = 3


class NotSymmetric(NumericError):
    pass


class NotPositiveDefinite(NumericError):
    pass


class RankDeficient(NumericError):
    """Generators do not span the expected dimension (data not in general position)."""


class InsideBall(NumericError):
    pass


class DataIOError(SDepthError):
    category = "io"
    exit_code = 4


class ParseError(DataIOError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyDataset(DataIOError, ValueError):
    pass


class RaggedRows(ParseError):
    pass
