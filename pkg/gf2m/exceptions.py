"""
Errors raised across the toolkit.

Every failure a caller can act on has its own class so the management
commands can map it to an exit code.
"""


class ApntriError(Exception):
    """Base class for toolkit errors"""


class NonIrreducibleModulus(ApntriError):
    """Modulus is not an irreducible polynomial of the requested degree"""


class DegreeOutOfRange(ApntriError):
    """Extension degree or Frobenius exponent outside the supported range"""


class GcdViolation(ApntriError):
    """Theorem mode requires gcd(i, m) = 1"""


class OddDegreeRequired(ApntriError):
    """Theorem mode requires an odd extension degree"""


class DivisionByZero(ApntriError, ZeroDivisionError):
    """Inverse of the zero element"""


class ZeroParameter(ApntriError):
    """Family parameter a must be nonzero"""


class ZeroDirection(ApntriError):
    """Differential direction must be nonzero"""


class FieldTooLarge(ApntriError):
    """Requested computation exceeds the configured size budget"""

    def __init__(self, what, m, limit):
        self.what = what
        self.m = m
        self.limit = limit
        super().__init__(f'{what} is capped at m <= {limit}, got m = {m}')


class BudgetExceeded(ApntriError):
    """Search stopped at its budget before reaching a verdict"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ContextMismatch(ApntriError):
    """Element tagged with one field context used in another"""


class InvalidElement(ApntriError, ValueError):
    """Value does not encode an element of the field"""
