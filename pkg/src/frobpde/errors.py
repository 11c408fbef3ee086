"""Exception hierarchy shared by all frobpde modules."""


class FrobPDEError(Exception):
    """Base class for all library errors."""


class ZeroConstantTerm(FrobPDEError):
    """Raised when an operation needs a unit series (nonzero constant term)."""


class DivisionBySeriesWithZeroConstantTerm(ZeroConstantTerm):
    """Division where the divisor series has zero constant term."""


class ExprSyntaxError(FrobPDEError):
    """Syntax error while parsing a coefficient expression.

    Carries the 0-based byte offset, 1-based line/column, and the set of
    token kinds that would have been accepted at that position.
    """

    def __init__(self, message, offset, line, column, expected=()):
        super().__init__(f"{message} at line {line}, column {column}")
        self.offset = offset
        self.line = line
        self.column = column
        self.expected = frozenset(expected)


class UnboundParameter(FrobPDEError):
    """A parameter name in an expression has no bound value."""


class ComplexCoefficients(FrobPDEError):
    """Conic classification requested for a genuinely complex conic."""


class NoSolution(FrobPDEError):
    """solve_for_s degenerated to a nonzero constant equation."""


class BasePointNotOnConic(FrobPDEError):
    """The supplied exponent pair does not satisfy the indicial conic."""


class ResonantPoint(FrobPDEError):
    """The recurrence would divide by (numerically) zero at some shift Q."""

    def __init__(self, message, hits=()):
        super().__init__(message)
        # list of ((q1, q2), magnitude) pairs
        self.hits = list(hits)


class MissingPriorCoefficient(FrobPDEError):
    """recurrence_rhs was handed an incomplete prior coefficient table."""


class MissingParameter(FrobPDEError):
    """A catalog entry was instantiated without a required parameter."""


class ConstraintViolated(FrobPDEError):
    """Integer-point family preconditions failed (e.g. B^2 != 4AC)."""


class SchemaError(FrobPDEError):
    """Problem JSON does not match the expected schema.

    `pointer` is a JSON pointer to the offending member.
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


class OutsideEstimatedDomain(UserWarning):
    """Evaluation point lies outside the estimated bidisc of convergence."""
