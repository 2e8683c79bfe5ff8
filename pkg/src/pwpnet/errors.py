"""Exception hierarchy.

Two families: ``ValidationError`` for bad input (CLI exit code 2) and
``NumericalError`` for failures during computation (CLI exit code 3).
"""


class PWPError(Exception):
    """Base class for all errors raised by pwpnet."""


class ValidationError(PWPError, ValueError):
    """Input does not satisfy the preconditions of an operation."""


class NumericalError(PWPError, ArithmeticError):
    """A computation could not produce a finite, meaningful result."""


class DuplicateId(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class InvalidMap(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ProbabilityOutOfRange(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class NegativeWeights(ValidationError):
    pass


class InvalidPartition(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed input file; carries optional line/offset diagnostics."""

    def __init__(self, message, *, line=None, offset=None, field=None):
        parts = [message]
        if line is not None:
            parts.append(f"line {line}")
        if offset is not None:
            parts.append(f"byte offset {offset}")
        if field is not None:
            parts.append(f"field {field!r}")
        super().__init__(", ".join(parts))
        self.line = line
        self.offset = offset
        self.field = field


class NonFiniteInput(NumericalError, ValueError):
    pass


class ZeroTotalWeight(NumericalError):
    pass


class ZeroTotalInfluence(NumericalError):
    pass


class OracleBudgetExceeded(NumericalError):
    pass


class RankerFailure(NumericalError):
    pass
