"""Exception hierarchy.

``MathError`` subclasses signal a mathematically invalid input (a map that is
not a bijection, a singular matrix, ...); everything else under
``TameSignError`` is a usage or contract error.
"""


class TameSignError(Exception):
    pass


class MathError(TameSignError):
    pass


class NotPrime(TameSignError, ValueError):
    pass


class ReducibleModulus(TameSignError, ValueError):
    pass


class UnsupportedField(TameSignError, ValueError):
    pass


class FieldMismatch(TameSignError, ValueError):
    pass


class ZeroElement(MathError, ZeroDivisionError):
    """Raised for the inverse, order or logarithm of zero."""


class NotAGenerator(TameSignError, ValueError):
    pass


class RankOutOfRange(TameSignError, ValueError):
    pass


class ArityMismatch(TameSignError, ValueError):
    pass


class VariableUsed(TameSignError, ValueError):
    pass


class SingularMatrix(MathError):
    pass


class ZeroDiagonal(MathError):
    pass


class TailUsesEarlyVariable(TameSignError, ValueError):
    pass


class NotStrict(TameSignError, ValueError):
    pass


class ArityTooSmall(TameSignError, ValueError):
    pass


class SizeMismatch(TameSignError, ValueError):
    pass


class BudgetExceeded(TameSignError):
    pass


class NotBijective(MathError):
    def __init__(self, message, first=None, second=None, image=None):
        super().__init__(message)
        self.first = first
        self.second = second
        self.image = image


class NotFormulaEligible(MathError):
    pass


class ClosureTooLarge(TameSignError):
    pass


class ParseError(TameSignError, ValueError):
    """Malformed expression text.

    ``offset`` counts non-whitespace characters before the failure point
    (whitespace is insignificant in the grammar); ``column`` is the raw index.
    """

    def __init__(self, message, offset, column):
        super().__init__(f"{message} at offset {offset} (column {column})")
        self.offset = offset
        self.column = column


class UnknownVariable(ParseError):
    pass


class CoefficientOutOfField(ParseError):
    pass
