from real_roots.exceptions import RealRootsError


class ContextError(RealRootsError):
    """Invalid variable context (duplicate or malformed names)."""


class ContextMismatch(RealRootsError):
    """Operands live in different polynomial rings."""


class InexactDivision(RealRootsError):
    """The divisor does not divide the dividend."""


class ZeroPolynomialError(RealRootsError):
    """An operation that needs a non-zero polynomial received zero."""


class LengthMismatch(RealRootsError):
    """A point does not have one coordinate per parameter."""


class InsufficientGrid(RealRootsError):
    """Evaluation points do not cover the interpolation grid."""


class DuplicatePoint(RealRootsError):
    """The same point was given twice with different values."""


class InterpolationMismatch(RealRootsError):
    """The interpolant disagrees with a held-out evaluation or exceeds its degree bound."""


class ParseError(RealRootsError):
    """Polynomial text could not be parsed."""

    exit_code = 4

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UndeclaredIdentifier(ParseError):
    """A polynomial mentions a name that is neither a parameter nor a variable."""
