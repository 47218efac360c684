"""
Truncated univariate power/Laurent series and truncated multivariate series
Provides derivatives, orders, leading monomials and the ring operations
used by Wronskian determinants.

Precision is pessimistic everywhere: a coefficient is only reported as
known when every operand that contributes to it was known.
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.densearith import dup_mul, dup_pow
from sympy.polys.densebasic import dup_strip
from sympy.polys.densetools import dup_eval, dup_revert, dup_shift
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from exceptions import FieldMismatchError, PrecisionError, SeriesValueError
from numeric_field import FieldElement, FieldSpec, Scalar

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


# ============================================================
# MONOMIALS AND THE LEX ORDER
# ============================================================

@dataclass(frozen=True)
class Monomial:
    """A nonzero term coefficient * x^exponent (length-1 exponent when univariate)"""

    coefficient: FieldElement
    exponent: Exponent

    def __post_init__(self):
        if self.coefficient.is_zero():
            raise SeriesValueError("A monomial needs a nonzero coefficient")

    @property
    def degree(self) -> int:
        return sum(self.exponent)

    def __str__(self) -> str:
        return _format_term(self.coefficient, self.exponent) or "0"


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Lex comparator on multi-indices, first index compared first"""
    if len(a) != len(b):
        raise SeriesValueError("Multi-indices of different lengths")
    for x, y in zip(a, b):
        if x != y:
            return -1 if x < y else 1
    return 0


lex_key = cmp_to_key(lex_compare)


def _var_name(index: int, num_vars: int) -> str:
    return "x" if num_vars == 1 else f"x{index + 1}"


def _format_term(coefficient: FieldElement, exponent: Exponent) -> str:
    factors = []
    for index, power in enumerate(exponent):
        if power == 0:
            continue
        name = _var_name(index, len(exponent))
        factors.append(name if power == 1 else f"{name}^{power}")
    coeff = str(coefficient)
    if not factors:
        return coeff
    monomial = "*".join(factors)
    if coeff == "1":
        return monomial
    if coeff == "-1":
        return f"-{monomial}"
    return f"{coeff}*{monomial}"


def _join_terms(terms: Iterable[str]) -> str:
    text = ""
    for term in terms:
        if not text:
            text = term
        elif term.startswith("-"):
            text += f" - {term[1:]}"
        else:
            text += f" + {term}"
    return text or "0"


# ============================================================
# UNIVARIATE SERIES
# ============================================================

def _poly_mul(a: List[Any], b: List[Any], K) -> List[Any]:
    """Product of two low-to-high coefficient lists"""
    if not a or not b:
        return []
    high = dup_mul(a[::-1], b[::-1], K)
    return high[::-1]


@dataclass(frozen=True)
class Series:
    """
    A truncated univariate power or Laurent series.

    ``coeffs[i]`` is the raw domain coefficient of x^(valuation_offset + i);
    coefficients at exponents >= precision are unknown, unless ``exact`` is
    set, in which case the series is a Laurent polynomial and they are zero.
    """

    spec: FieldSpec
    valuation_offset: int
    coeffs: Tuple[Any, ...]
    precision: int
    exact: bool = False

    def __post_init__(self):
        if self.precision <= self.valuation_offset:
            raise PrecisionError(
                f"Empty precision window [{self.valuation_offset}, {self.precision})")
        if len(self.coeffs) != self.precision - self.valuation_offset:
            raise SeriesValueError("Coefficient count does not match the precision window")

    # ---------- construction ----------

    @classmethod
    def build(cls, spec: FieldSpec, offset: int, coeffs: Sequence[Any],
              precision: Optional[int] = None, exact: bool = False) -> "Series":
        """
        Canonical constructor from raw domain coefficients

        Args:
            offset: exponent of coeffs[0]
            coeffs: raw domain elements, low to high
            precision: end of the known window; None means offset + len(coeffs)
            exact: the coefficients past the window are zero

        Returns:
            the series with trailing zeros trimmed (exact case) and the
            offset moved to min(0, order)
        """
        K = spec.domain
        if precision is None:
            precision = offset + len(coeffs)
        coeffs = list(coeffs[:max(precision - offset, 0)])
        coeffs += [K.zero] * (precision - offset - len(coeffs))
        first = next((i for i, c in enumerate(coeffs) if c), None)
        if exact:
            if first is None:
                return cls(spec, 0, (K.zero,), 1, True)
            last = max(i for i, c in enumerate(coeffs) if c)
            coeffs = coeffs[:last + 1]
            precision = offset + len(coeffs)
        if first is not None:
            new_offset = min(0, offset + first)
        else:
            new_offset = min(0, offset)
        if new_offset > offset:
            coeffs = coeffs[new_offset - offset:]
        elif new_offset < offset:
            coeffs = [K.zero] * (offset - new_offset) + coeffs
        return cls(spec, new_offset, tuple(coeffs), precision, exact)

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: Mapping[int, Scalar],
                   precision: Optional[int] = None) -> "Series":
        """
        Build a series from {exponent: coefficient}

        A missing precision makes the result an exact Laurent polynomial;
        a given precision truncates and marks the series as truncated.
        """
        raw = {e: spec.convert(c) for e, c in terms.items()}
        exponents = [e for e, c in raw.items() if c]
        low = min([0] + exponents)
        exact = precision is None
        if exact:
            precision = max(exponents) + 1 if exponents else 1
        K = spec.domain
        coeffs = [raw.get(e, K.zero) for e in range(low, max(precision, low + 1))]
        return cls.build(spec, low, coeffs, max(precision, low + 1) if exact else precision, exact)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Series":
        return cls(spec, 0, (spec.domain.zero,), 1, True)

    @classmethod
    def constant(cls, spec: FieldSpec, value: Scalar) -> "Series":
        return cls.from_terms(spec, {0: value})

    # ---------- inspection ----------

    def coeff_raw(self, exponent: int) -> Any:
        if exponent < self.valuation_offset:
            return self.spec.domain.zero
        if exponent >= self.precision:
            if self.exact:
                return self.spec.domain.zero
            raise PrecisionError(f"Coefficient of x^{exponent} is beyond precision {self.precision}")
        return self.coeffs[exponent - self.valuation_offset]

    def coefficient(self, exponent: int) -> FieldElement:
        return FieldElement(self.spec, self.coeff_raw(exponent))

    def order(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.valuation_offset + i
        return None

    def degree(self) -> Optional[int]:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return self.valuation_offset + i
        return None

    def is_zero(self) -> bool:
        return self.order() is None

    def valuation_bound(self) -> Optional[int]:
        """Lower bound for the true order; None for the exact zero series"""
        order = self.order()
        if order is not None:
            return order
        return None if self.exact else self.precision

    def leading_key(self) -> Optional[int]:
        return self.order()

    def leading_coefficient_raw(self) -> Any:
        return self.coeff_raw(self.order())

    def leading_monomial(self) -> Monomial:
        return series_leading_monomial(self)

    def truncate(self, precision: int) -> "Series":
        if not self.exact and precision >= self.precision:
            return self
        coeffs = [self.coeff_raw(e) for e in range(self.valuation_offset, max(precision, self.valuation_offset + 1))]
        return Series.build(self.spec, self.valuation_offset, coeffs, precision, False)

    def shift(self, k: int) -> "Series":
        """Multiply by x^k"""
        return Series.build(self.spec, self.valuation_offset + k, self.coeffs,
                            self.precision + k, self.exact)

    def agrees_with(self, other: "Series") -> bool:
        """Coefficientwise equality on the common known window"""
        if self.spec != other.spec:
            return False
        if self.exact and other.exact:
            return self == other
        top = min(s.precision for s in (self, other) if not s.exact)
        low = min(self.valuation_offset, other.valuation_offset)
        return all(self.coeff_raw(e) == other.coeff_raw(e) for e in range(low, top))

    # ---------- arithmetic ----------

    def __add__(self, other: "Series") -> "Series":
        return series_add(self, other)

    def __sub__(self, other: "Series") -> "Series":
        return series_sub(self, other)

    def __neg__(self) -> "Series":
        return series_neg(self)

    def __mul__(self, other: Union["Series", Scalar]) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = [_format_term(FieldElement(self.spec, c), (self.valuation_offset + i,))
                 for i, c in enumerate(self.coeffs) if c]
        text = _join_terms(terms)
        return text if self.exact else f"{text} @prec={self.precision}"


def _check_specs(items: Sequence[Any]):
    specs = {item.spec for item in items}
    if len(specs) > 1:
        raise FieldMismatchError("Family members live in different fields")


def series_add(a: Series, b: Series) -> Series:
    _check_specs([a, b])
    if a.exact and b.exact:
        precision, exact = max(a.precision, b.precision), True
    elif a.exact or b.exact:
        precision, exact = (b.precision if a.exact else a.precision), False
    else:
        precision, exact = min(a.precision, b.precision), False
    offset = min(a.valuation_offset, b.valuation_offset)
    coeffs = [a.coeff_raw(e) + b.coeff_raw(e) for e in range(offset, precision)]
    return Series.build(a.spec, offset, coeffs, precision, exact)


def series_neg(a: Series) -> Series:
    return Series(a.spec, a.valuation_offset, tuple(-c for c in a.coeffs), a.precision, a.exact)


def series_sub(a: Series, b: Series) -> Series:
    return series_add(a, series_neg(b))


def series_scale(a: Series, weight: Scalar) -> Series:
    w = a.spec.convert(weight)
    if not w:
        return Series.zero(a.spec)
    return Series(a.spec, a.valuation_offset, tuple(w * c for c in a.coeffs), a.precision, a.exact)


def series_mul(a: Series, b: Series) -> Series:
    """Product with precision min(prec_a + val_b, prec_b + val_a)"""
    _check_specs([a, b])
    K = a.spec.domain
    va, vb = a.valuation_bound(), b.valuation_bound()
    if (va is None) or (vb is None):
        return Series.zero(a.spec)
    bounds = []
    if not a.exact:
        bounds.append(a.precision + vb)
    if not b.exact:
        bounds.append(b.precision + va)
    offset = a.valuation_offset + b.valuation_offset
    if not bounds:
        product = _poly_mul(list(a.coeffs), list(b.coeffs), K)
        return Series.build(a.spec, offset, product, None, True)
    precision = min(bounds)
    # only coefficients that can land below the precision matter
    keep_a = max(precision - offset, 0)
    product = _poly_mul(list(a.coeffs[:keep_a]), list(b.coeffs[:keep_a]), K)
    return Series.build(a.spec, offset, product, precision, False)


# ============================================================
# SERIES OPERATIONS
# ============================================================

def series_derivative(f: Series) -> Series:
    """
    Termwise d/dx; precision drops by exactly one

    Raises:
        PrecisionError: the derivative of a truncated series has no known coefficient
    """
    K = f.spec.domain
    new_offset = f.valuation_offset - 1 if f.valuation_offset < 0 else 0
    new_precision = f.precision - 1
    coeffs = []
    for e in range(new_offset + 1, f.precision):
        coeffs.append(f.coeff_raw(e) * K(e))
    if f.exact:
        return Series.build(f.spec, new_offset, coeffs, max(new_precision, new_offset + 1), True)
    if new_precision <= new_offset:
        raise PrecisionError("Derivative leaves an empty precision window")
    return Series.build(f.spec, new_offset, coeffs, new_precision, False)


def series_order(f: Series) -> Optional[int]:
    """Least exponent with a nonzero coefficient, None when no order is known"""
    return f.order()


def series_leading_monomial(f: Series) -> Monomial:
    order = f.order()
    if order is None:
        raise SeriesValueError("Zero up to precision: no leading monomial")
    return Monomial(f.coefficient(order), (order,))


def series_linear_combine(family: Sequence[Series], weights: Sequence[Scalar]) -> Series:
    """Sum of w_i * f_i; used to check dependence certificates"""
    if not family:
        raise SeriesValueError("Cannot combine an empty family")
    if len(family) != len(weights):
        raise SeriesValueError("Family and weights differ in length")
    _check_specs(family)
    total = None
    for f, w in zip(family, weights):
        term = series_scale(f, w)
        total = term if total is None else series_add(total, term)
    return total


def series_inverse(f: Series, precision: int) -> Series:
    """
    Power series inverse of f modulo x^precision

    Args:
        f: a series with nonzero constant term
        precision: number of coefficients wanted

    Returns:
        g with f*g = 1 + O(x^precision)
    """
    K = f.spec.domain
    if precision < 1:
        raise PrecisionError("Inverse needs a positive precision")
    if f.order() != 0:
        raise SeriesValueError("Series inverse needs a nonzero constant term")
    if not f.exact:
        precision = min(precision, f.precision)
    low = [f.coeff_raw(e) for e in range(0, precision)]
    high = dup_strip(low[::-1])
    inverse = dup_revert(high, precision, K)[::-1][:precision]
    if f.exact and f.degree() == 0:
        return Series.build(f.spec, 0, inverse[:1], None, True)
    return Series.build(f.spec, 0, inverse, precision, False)


def _positive_part(f: Series) -> List[Any]:
    return [f.coeff_raw(e) for e in range(0, max(f.precision, 1))]


def series_translate(f: Series, c: Scalar, precision: Optional[int] = None) -> Series:
    """
    Exact substitution x -> x + c

    Polynomials translate exactly by the binomial theorem; negative powers
    x^-k become power series (x + c)^-k expanded around 0 up to ``precision``.
    """
    if not f.exact:
        raise SeriesValueError("Only finitely supported series can be translated")
    spec, K = f.spec, f.spec.domain
    shift = spec.convert(c)
    negative = {e: f.coeff_raw(e) for e in range(f.valuation_offset, 0) if f.coeff_raw(e)}
    if not shift:
        if negative:
            raise SeriesValueError("Translation by 0 keeps the pole at the origin")
        return f
    positive = dup_strip(_positive_part(f)[::-1])
    translated = dup_shift(positive, shift, K)[::-1] if positive else []
    if not negative:
        return Series.build(spec, 0, translated, None, True)
    if precision is None:
        precision = max(f.precision - f.valuation_offset, 1)
    if precision < 1:
        raise PrecisionError("Translation needs a positive precision")
    total = list(translated[:precision]) + [K.zero] * max(0, precision - len(translated))
    for e, a in negative.items():
        power = dup_pow([K.one, shift], -e, K)
        expansion = dup_revert(power, precision, K)[::-1][:precision]
        for i, coeff in enumerate(expansion):
            total[i] += a * coeff
    return Series.build(spec, 0, total, precision, False)


# ============================================================
# RATIONAL FUNCTIONS
# ============================================================

@dataclass(frozen=True)
class RationalFunction:
    """numerator / denominator with exact polynomial parts"""

    numerator: Series
    denominator: Series

    def __post_init__(self):
        if not (self.numerator.exact and self.denominator.exact):
            raise SeriesValueError("Rational functions need exact numerator and denominator")
        if self.numerator.spec != self.denominator.spec:
            raise FieldMismatchError("Numerator and denominator live in different fields")
        if self.denominator.is_zero():
            raise SeriesValueError("Zero denominator")
        if min(self.numerator.valuation_offset, self.denominator.valuation_offset) < 0:
            raise SeriesValueError("Numerator and denominator must be polynomials")

    @classmethod
    def from_series(cls, f: Series) -> "RationalFunction":
        """View an exact Laurent polynomial as p / x^k"""
        k = max(0, -f.valuation_offset)
        denominator = Series.from_terms(f.spec, {k: 1})
        return cls(f.shift(k), denominator)

    @property
    def spec(self) -> FieldSpec:
        return self.numerator.spec

    def evaluate_denominator(self, c: Scalar) -> FieldElement:
        K = self.spec.domain
        high = dup_strip(_positive_part(self.denominator)[::-1])
        return FieldElement(self.spec, dup_eval(high, self.spec.convert(c), K))

    def __str__(self) -> str:
        return f"({self.numerator})/({self.denominator})"


def laurent_expand(r: RationalFunction, precision: int) -> Series:
    """
    Laurent expansion around 0, known for exponents below ``precision``

    Exact when the denominator is a monomial.
    """
    den_order = r.denominator.order()
    unit = r.denominator.shift(-den_order)
    if unit.degree() == 0:
        scale = FieldElement(r.spec, unit.coeff_raw(0)).inverse()
        return series_scale(r.numerator, scale).shift(-den_order)
    num_order = r.numerator.order()
    if num_order is None:
        return Series.zero(r.spec)
    wanted = max(precision + den_order - num_order, 1)
    inverse = series_inverse(unit, wanted)
    expansion = series_mul(r.numerator, inverse).shift(-den_order)
    return expansion.truncate(precision)


def translate_rational(r: RationalFunction, c: Scalar, precision: int) -> Series:
    """Expand r(x + c) as a power series; c must not be a pole"""
    if r.evaluate_denominator(c).is_zero():
        raise SeriesValueError(f"{c} is a pole of {r}")
    shifted = RationalFunction(series_translate(r.numerator, c),
                               series_translate(r.denominator, c))
    return laurent_expand(shifted, precision)


# ============================================================
# MULTIVARIATE SERIES
# ============================================================

@lru_cache(maxsize=None)
def polynomial_ring(spec: FieldSpec, num_vars: int) -> PolyRing:
    """K[x1..xm] with the lex order, first variable dominant"""
    names = tuple(f"x{i + 1}" for i in range(num_vars))
    return PolyRing(names, spec.domain, lex)


def _total_degree(exponent: Exponent) -> int:
    return sum(exponent)


@dataclass(frozen=True)
class MSeries:
    """
    A sparse multivariate series truncated by total degree.

    Terms of total degree >= precision are unknown unless ``exact`` is set.
    """

    spec: FieldSpec
    num_vars: int
    poly: PolyElement
    precision: int
    exact: bool = False

    def __post_init__(self):
        if self.num_vars < 1:
            raise SeriesValueError("A multivariate series needs at least one variable")
        if any(_total_degree(e) >= self.precision for e in self.poly.keys()):
            raise SeriesValueError("Stored term beyond the total degree precision")
        if any(not c for c in self.poly.values()):
            raise SeriesValueError("Stored zero coefficient")

    @classmethod
    def build(cls, spec: FieldSpec, num_vars: int, terms: Mapping[Exponent, Any],
              precision: Optional[int] = None) -> "MSeries":
        """
        Canonical constructor from raw domain coefficients

        A missing precision makes the result exact with precision
        max total degree + 1; otherwise terms past the window are dropped.
        """
        R = polynomial_ring(spec, num_vars)
        exact = precision is None
        kept = {e: c for e, c in terms.items()
                if c and (exact or _total_degree(e) < precision)}
        if exact:
            precision = max((_total_degree(e) for e in kept), default=0) + 1
        return cls(spec, num_vars, R.from_dict(kept), precision, exact)

    @classmethod
    def from_terms(cls, spec: FieldSpec, num_vars: int, terms: Mapping[Sequence[int], Scalar],
                   precision: Optional[int] = None) -> "MSeries":
        raw = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars or min(e, default=0) < 0:
                raise SeriesValueError(f"Bad exponent {e} for {num_vars} variables")
            raw[e] = raw.get(e, spec.domain.zero) + spec.convert(c)
        return cls.build(spec, num_vars, raw, precision)

    @classmethod
    def zero(cls, spec: FieldSpec, num_vars: int) -> "MSeries":
        return cls.build(spec, num_vars, {})

    @property
    def terms(self) -> Dict[Exponent, FieldElement]:
        return {e: FieldElement(self.spec, c) for e, c in self.poly.items()}

    def coefficient(self, exponent: Sequence[int]) -> FieldElement:
        exponent = tuple(exponent)
        if not self.exact and _total_degree(exponent) >= self.precision:
            raise PrecisionError(f"Coefficient of {exponent} is beyond precision {self.precision}")
        return FieldElement(self.spec, self.poly.get(exponent, self.spec.domain.zero))

    def is_zero(self) -> bool:
        return not self.poly

    def valuation_bound(self) -> Optional[int]:
        if self.poly:
            return min(_total_degree(e) for e in self.poly.keys())
        return None if self.exact else self.precision

    def leading_key(self) -> Optional[Exponent]:
        return min(self.poly.keys(), key=lex_key) if self.poly else None

    def leading_coefficient_raw(self) -> Any:
        return self.poly[self.leading_key()]

    def leading_monomial(self) -> Monomial:
        return mseries_leading_monomial(self)

    def agrees_with(self, other: "MSeries") -> bool:
        if self.spec != other.spec or self.num_vars != other.num_vars:
            return False
        if self.exact and other.exact:
            return self.poly == other.poly
        top = min(s.precision for s in (self, other) if not s.exact)
        mine = {e: c for e, c in self.poly.items() if _total_degree(e) < top}
        theirs = {e: c for e, c in other.poly.items() if _total_degree(e) < top}
        return mine == theirs

    def __add__(self, other: "MSeries") -> "MSeries":
        return mseries_add(self, other)

    def __sub__(self, other: "MSeries") -> "MSeries":
        return mseries_sub(self, other)

    def __neg__(self) -> "MSeries":
        return mseries_scale(self, -1)

    def __mul__(self, other: Union["MSeries", Scalar]) -> "MSeries":
        if isinstance(other, MSeries):
            return mseries_mul(self, other)
        return mseries_scale(self, other)

    __rmul__ = __mul__

    def __str__(self) -> str:
        ordered = sorted(self.poly.items(), key=lambda item: (_total_degree(item[0]), [-x for x in item[0]]))
        terms = [_format_term(FieldElement(self.spec, c), e) for e, c in ordered]
        text = _join_terms(terms)
        return text if self.exact else f"{text} @prec={self.precision}"


def _check_mseries(items: Sequence[MSeries]):
    _check_specs(items)
    if len({item.num_vars for item in items}) > 1:
        raise SeriesValueError("Family members have different numbers of variables")


def mseries_add(a: MSeries, b: MSeries) -> MSeries:
    _check_mseries([a, b])
    if a.exact and b.exact:
        precision = None
    elif a.exact or b.exact:
        precision = b.precision if a.exact else a.precision
    else:
        precision = min(a.precision, b.precision)
    return MSeries.build(a.spec, a.num_vars, dict((a.poly + b.poly).items()), precision)


def mseries_scale(a: MSeries, weight: Scalar) -> MSeries:
    w = a.spec.convert(weight)
    if not w:
        return MSeries.zero(a.spec, a.num_vars)
    return MSeries(a.spec, a.num_vars, a.poly.mul_ground(w), a.precision, a.exact)


def mseries_sub(a: MSeries, b: MSeries) -> MSeries:
    return mseries_add(a, mseries_scale(b, -1))


def mseries_mul(a: MSeries, b: MSeries) -> MSeries:
    """Product with total-degree precision min(prec_a + val_b, prec_b + val_a)"""
    _check_mseries([a, b])
    va, vb = a.valuation_bound(), b.valuation_bound()
    if va is None or vb is None:
        return MSeries.zero(a.spec, a.num_vars)
    bounds = []
    if not a.exact:
        bounds.append(a.precision + vb)
    if not b.exact:
        bounds.append(b.precision + va)
    precision = min(bounds) if bounds else None
    return MSeries.build(a.spec, a.num_vars, dict((a.poly * b.poly).items()), precision)


def mseries_linear_combine(family: Sequence[MSeries], weights: Sequence[Scalar]) -> MSeries:
    if not family:
        raise SeriesValueError("Cannot combine an empty family")
    if len(family) != len(weights):
        raise SeriesValueError("Family and weights differ in length")
    _check_mseries(family)
    total = None
    for f, w in zip(family, weights):
        term = mseries_scale(f, w)
        total = term if total is None else mseries_add(total, term)
    return total


def mseries_partial(f: MSeries, var: int) -> MSeries:
    """
    Partial derivative in x_(var+1); total degree precision drops by one

    Raises:
        PrecisionError: no term of the result would be known
    """
    if not 0 <= var < f.num_vars:
        raise SeriesValueError(f"Variable index {var} out of range")
    K = f.spec.domain
    terms = {}
    for e, c in f.poly.items():
        if e[var]:
            d = c * K(e[var])
            if d:
                terms[e[:var] + (e[var] - 1,) + e[var + 1:]] = d
    if f.exact:
        return MSeries.build(f.spec, f.num_vars, terms)
    if f.precision - 1 <= 0:
        raise PrecisionError("Partial derivative leaves an empty precision window")
    return MSeries.build(f.spec, f.num_vars, terms, f.precision - 1)


def mseries_apply(f: MSeries, multi_index: Sequence[int]) -> MSeries:
    """Apply (d/dx_1)^j_1 ... (d/dx_m)^j_m"""
    for var, times in enumerate(multi_index):
        for _ in range(times):
            f = mseries_partial(f, var)
    return f


def mseries_leading_monomial(f: MSeries) -> Monomial:
    """Term with the lex-minimal exponent"""
    key = f.leading_key()
    if key is None:
        raise SeriesValueError("Zero up to precision: no leading monomial")
    return Monomial(FieldElement(f.spec, f.poly[key]), key)
