"""Exception hierarchy shared by every lndkit module."""


class LndError(Exception):
    """Base class for all library errors."""


class RingMismatch(LndError, TypeError):
    pass


class BothZero(LndError, ValueError):
    pass


class NotDivisible(LndError, ArithmeticError):
    pass


class DivisorZero(LndError, ZeroDivisionError):
    pass


class UnsupportedRing(LndError, ValueError):
    pass


class ZeroInput(LndError, ValueError):
    """deg_D(0) is -infinity; callers must handle the zero element themselves."""


class BoundExceeded(LndError):
    """An iterate was still nonzero after the allowed number of applications."""

    def __init__(self, message, witness=None, bound=None):
        super().__init__(message)
        self.witness = witness
        self.bound = bound


class DimensionError(LndError, ValueError):
    pass


class NotInKernel(LndError, ValueError):
    pass


class NoLinearKernel(LndError, ValueError):
    pass


class NoPreimage(LndError, ValueError):
    pass


class ShapeViolation(LndError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotHomogeneous(LndError, ValueError):
    pass


class NotAPthPower(LndError, ValueError):
    pass


class RewriteNonExact(LndError, ArithmeticError):
    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class NonTermination(LndError, RuntimeError):
    pass


class ParseError(LndError, ValueError):
    def __init__(self, message, line=None, column=None, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        loc = f"{line}:{column}: " if line is not None else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}{message}{exp}")


class UndeclaredIdentifier(ParseError):
    pass
