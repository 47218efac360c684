"""
Exception hierarchy shared by the library modules and the CLI
"""

from typing import Optional


class WronskiError(Exception):
    """Base class of every error raised by the library"""


class FieldError(WronskiError, ValueError):
    """Invalid field description or unsupported modulus"""


class FieldMismatchError(FieldError):
    """Operands live in different coefficient fields"""


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    """Inversion of zero in the coefficient field"""


class PrecisionError(WronskiError):
    """A truncated computation has no known coefficient left"""


class CharacteristicError(WronskiError):
    """The operation is only valid in characteristic zero"""


class SeriesValueError(WronskiError, ValueError):
    """A series operation was called outside its preconditions"""


class CertificateError(WronskiError):
    """A certificate does not have the shape the verifier expects"""


class FamilyParseError(WronskiError):
    """Syntax error in a family file, with its location"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        self.reason = message
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)
