"""
Exact coefficient arithmetic over Q and GF(p)

Values wrap the elements of sympy's ``QQ`` and ``GF(p)`` domains, so
rationals are always reduced with a positive denominator and residues
always live in [0, p).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Union

from sympy import Rational, isprime
from sympy.functions.combinatorial.factorials import ff
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from config import Config
from exceptions import FieldError, FieldMismatchError, FieldZeroDivisionError


class FieldKind(Enum):
    RATIONALS = "Q"
    PRIME_FIELD = "Fp"


@lru_cache(maxsize=None)
def _domain(kind: FieldKind, modulus: Optional[int]) -> Domain:
    if kind is FieldKind.RATIONALS:
        return QQ
    return GF(modulus, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field K: Q, or GF(p) for a prime p"""

    kind: FieldKind
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.modulus is not None:
                raise FieldError("The rational field takes no modulus")
        elif self.modulus is None or self.modulus < 2 or not isprime(self.modulus):
            raise FieldError(f"Modulus {self.modulus} is not a prime number")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """
        Parse the CLI field notation

        Args:
            text: "Q" or "Fp:<prime>"

        Returns:
            the corresponding FieldSpec
        """
        is_valid, error_msg = Config.validate_field_string(text)
        if not is_valid:
            raise FieldError(error_msg)
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        return cls.prime_field(int(text.split(":", 1)[1]))

    @property
    def domain(self) -> Domain:
        return _domain(self.kind, self.modulus)

    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.modulus

    def convert(self, value: Any) -> Any:
        """Embed an int, a fraction or a FieldElement into the raw domain"""
        K = self.domain
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError(f"Element of {value.spec} used in {self}")
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return K(value)
        if isinstance(value, (Fraction, Rational)):
            return self.fraction(int(value.numerator), int(value.denominator))
        if K.of_type(value):
            return value
        raise TypeError(f"Cannot embed {value!r} into {self}")

    def fraction(self, numerator: int, denominator: int) -> Any:
        K = self.domain
        den = K(denominator)
        if K.is_zero(den):
            raise FieldZeroDivisionError(f"Denominator {denominator} vanishes in {self}")
        return K(numerator) / den

    def element(self, value: Any) -> "FieldElement":
        return FieldElement(self, self.convert(value))

    def zero(self) -> "FieldElement":
        return FieldElement(self, self.domain.zero)

    def one(self) -> "FieldElement":
        return FieldElement(self, self.domain.one)

    def format_raw(self, raw: Any) -> str:
        """Canonical text of a raw domain element ("-3/2", "5")"""
        K = self.domain
        if self.kind is FieldKind.RATIONALS:
            num, den = int(K.numer(raw)), int(K.denom(raw))
            return str(num) if den == 1 else f"{num}/{den}"
        return str(K.to_int(raw))

    def __str__(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"Fp:{self.modulus}"


Scalar = Union["FieldElement", int, Fraction]


@dataclass(frozen=True)
class FieldElement:
    """An immutable exact scalar of a FieldSpec"""

    spec: FieldSpec
    value: Any

    def _raw(self, other: Scalar) -> Any:
        if isinstance(other, FieldElement) and other.spec != self.spec:
            raise FieldMismatchError(f"Cannot combine {self.spec} and {other.spec}")
        return self.spec.convert(other)

    def __add__(self, other: Scalar) -> "FieldElement":
        return FieldElement(self.spec, self.value + self._raw(other))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        return FieldElement(self.spec, self.value - self._raw(other))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return FieldElement(self.spec, self._raw(other) - self.value)

    def __mul__(self, other: Scalar) -> "FieldElement":
        return FieldElement(self.spec, self.value * self._raw(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "FieldElement":
        return self * FieldElement(self.spec, self._raw(other)).inverse()

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, -self.value)

    def inverse(self) -> "FieldElement":
        K = self.spec.domain
        if K.is_zero(self.value):
            raise FieldZeroDivisionError(f"0 is not invertible in {self.spec}")
        return FieldElement(self.spec, K.one / self.value)

    def is_zero(self) -> bool:
        return self.spec.domain.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def plain(self) -> Union[int, Fraction]:
        """The value as a Python number: a Fraction over Q, the residue in [0, p) over GF(p)"""
        K = self.spec.domain
        if self.spec.kind is FieldKind.RATIONALS:
            return Fraction(int(K.numer(self.value)), int(K.denom(self.value)))
        return int(K.to_int(self.value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            # GF(p) elements equal only their canonical residue
            return self.plain() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.plain())

    def __str__(self) -> str:
        return self.spec.format_raw(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.spec})"


# ============================================================
# OPERATIONS
# ============================================================

def _check_same(a: FieldElement, b: FieldElement):
    if a.spec != b.spec:
        raise FieldMismatchError(f"Cannot combine {a.spec} and {b.spec}")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


@lru_cache(maxsize=4096)
def falling_factorial_int(d: int, k: int) -> int:
    """(d)_k = d(d-1)...(d-k+1) as an integer; d may be negative"""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    return int(ff(d, k))


def falling_factorial(d: int, k: int, spec: FieldSpec) -> FieldElement:
    """
    Falling factorial (d)_k embedded in the field

    Args:
        d: any integer, negative values serve Laurent exponents
        k: nonnegative length of the product

    Returns:
        the field element d(d-1)...(d-k+1), with (d)_0 = 1
    """
    return spec.element(falling_factorial_int(d, k))
