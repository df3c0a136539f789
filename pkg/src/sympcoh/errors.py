"""Exception types raised across the package."""


class SympError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SympError, ValueError):
    pass


class RingMismatch(SympError, ValueError):
    pass


class DegreeError(SympError, ValueError):
    """Degree out of range, or a homogeneous form was required."""


class ParseError(SympError, ValueError):
    """Malformed form string or model file.

    ``line`` and ``column`` are 1-based; ``column`` points at the offending
    character of the (stripped) line.
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ModelError(SympError, ValueError):
    """Unknown built-in name or structurally unusable model."""


class TripleError(SympError, ValueError):
    """No compatible triple could be built or a supplied J is invalid."""


class NotPrimitiveError(SympError, ValueError):
    pass


class InclusionError(SympError, AssertionError):
    """An exact subspace failed to lie inside its closed subspace.

    This signals an internal inconsistency, never bad user input.
    """
