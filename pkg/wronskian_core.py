"""
Wronskian matrices and determinants
Covers univariate Wronskians, the closed form for monomial families,
the enumeration of generalized Wronskians over multi-index differential
operators and the Vandermonde-of-linear-forms diagnostic.

Determinants over series entries use cofactor expansion for n <= 4.
Above that, the entries are lifted to polynomials (truncated series become
their known part) and sympy's DomainMatrix computes a fraction-free
(Bareiss) determinant over K[x] or K[x1..xm]. The result is truncated
again at min(prec - row minimum of val) over the truncated entries plus
the sum of the row minima of val.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Any, Iterator, List, Optional, Sequence, Tuple, TypeVar

from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing
from sympy.polys.domains import QQ

from config import Config
from exceptions import CharacteristicError, SeriesValueError
from numeric_field import FieldElement, FieldSpec, falling_factorial_int
from series_ring import (
    Exponent,
    Monomial,
    MSeries,
    Series,
    mseries_apply,
    mseries_sub,
    polynomial_ring,
    series_derivative,
)

logger = logging.getLogger(__name__)

Entry = TypeVar("Entry", Series, MSeries)


# ============================================================
# DETERMINANTS
# ============================================================

def field_det(rows: Sequence[Sequence[int]], field: FieldSpec) -> FieldElement:
    """Determinant of an integer matrix, computed in the field"""
    n = len(rows)
    if n == 0:
        return field.one()
    K = field.domain
    matrix = DomainMatrix([[K(int(v)) for v in row] for row in rows], (n, n), K)
    return FieldElement(field, matrix.det())


def _zero_like(entry: Entry) -> Entry:
    if isinstance(entry, MSeries):
        return MSeries.zero(entry.spec, entry.num_vars)
    return Series.zero(entry.spec)


def _cofactor_det(rows: List[List[Entry]]) -> Entry:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, head in enumerate(rows[0]):
        if head.is_zero() and head.exact:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = head * _cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return _zero_like(rows[0][0])
    return total


def _precision_bound(rows: List[List[Entry]]) -> Optional[int]:
    """Lower bound for the valid window of a determinant; None when exact"""
    if all(e.exact for row in rows for e in row):
        return None
    row_minima = []
    for row in rows:
        vals = [e.valuation_bound() for e in row if e.valuation_bound() is not None]
        if not vals:
            return None
        row_minima.append(min(vals))
    gaps = [e.precision - low for row, low in zip(rows, row_minima) for e in row if not e.exact]
    return min(gaps) + sum(row_minima)


def _bareiss_series_det(rows: List[List[Series]]) -> Series:
    spec = rows[0][0].spec
    bound = _precision_bound(rows)
    if any(all(e.is_zero() and e.exact for e in row) for row in rows):
        return Series.zero(spec)
    R = polynomial_ring(spec, 1)
    shifts = []
    lifted = []
    for row in rows:
        low = min(e.valuation_offset for e in row)
        shifts.append(low)
        lifted.append([R.from_dict({(e.valuation_offset + i - low,): c
                                    for i, c in enumerate(e.coeffs) if c}) for e in row])
    n = len(rows)
    det = DomainMatrix(lifted, (n, n), R.to_domain()).det()
    offset = sum(shifts)
    terms = {k[0] + offset: c for k, c in det.items()}
    zero = spec.domain.zero
    if bound is None:
        if not terms:
            return Series.zero(spec)
        low = min(0, min(terms))
        coeffs = [terms.get(e, zero) for e in range(low, max(terms) + 1)]
        return Series.build(spec, low, coeffs, None, True)
    low = min([0, bound - 1] + list(terms))
    coeffs = [terms.get(e, zero) for e in range(low, bound)]
    return Series.build(spec, low, coeffs, bound, False)


def _bareiss_mseries_det(rows: List[List[MSeries]]) -> MSeries:
    first = rows[0][0]
    R = polynomial_ring(first.spec, first.num_vars)
    n = len(rows)
    det = DomainMatrix([[e.poly for e in row] for row in rows], (n, n), R.to_domain()).det()
    return MSeries.build(first.spec, first.num_vars, dict(det.items()), _precision_bound(rows))


def series_matrix_det(rows: List[List[Entry]]) -> Entry:
    """Determinant of a square matrix of Series or MSeries"""
    n = len(rows)
    if n <= Config.COFACTOR_MAX_N:
        return _cofactor_det(rows)
    logger.debug("Bareiss determinant of size %d", n)
    if isinstance(rows[0][0], MSeries):
        return _bareiss_mseries_det(rows)
    return _bareiss_series_det(rows)


# ============================================================
# UNIVARIATE WRONSKIANS
# ============================================================

@dataclass(frozen=True)
class WronskianMatrix:
    """Row i holds the i-th derivatives of the family"""

    entries: Tuple[Tuple[Series, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def result_precision(self) -> Optional[int]:
        """min input precision - (n - 1); None for an exact family"""
        truncated = [f.precision for f in self.entries[0] if not f.exact]
        return min(truncated) - (self.n - 1) if truncated else None


def _check_family(family: Sequence[Any]):
    if not family:
        raise SeriesValueError("The family is empty")
    specs = {f.spec for f in family}
    if len(specs) > 1:
        raise SeriesValueError("Family members live in different fields")


def wronskian_matrix(family: Sequence[Series]) -> WronskianMatrix:
    _check_family(family)
    rows = [tuple(family)]
    for _ in range(len(family) - 1):
        rows.append(tuple(series_derivative(f) for f in rows[-1]))
    return WronskianMatrix(tuple(rows))


def wronskian(family: Sequence[Series]) -> Series:
    """
    Determinant of the Wronskian matrix

    Raises:
        PrecisionError: a derivative runs out of known coefficients
    """
    matrix = wronskian_matrix(family)
    return series_matrix_det([list(row) for row in matrix.entries])


@dataclass(frozen=True)
class VandermondeValue:
    value: FieldElement


def vandermonde(exponents: Sequence[int], spec: FieldSpec) -> VandermondeValue:
    """prod_{i<j} (d_j - d_i) in the field"""
    product = prod(exponents[j] - exponents[i]
                   for i, j in itertools.combinations(range(len(exponents)), 2))
    return VandermondeValue(spec.element(product))


def falling_factorial_matrix_det(exponents: Sequence[int], spec: FieldSpec) -> FieldElement:
    """det [(d_j)_k] for k = 0..n-1; equals the Vandermonde determinant"""
    n = len(exponents)
    rows = [[falling_factorial_int(d, k) for d in exponents] for k in range(n)]
    return field_det(rows, spec)


@dataclass(frozen=True)
class MonomialWronskianFactors:
    """V(d) * x^exponent * prod(a_i), kept as separate factors"""

    vandermonde: FieldElement
    exponent: int
    coefficient_product: FieldElement

    @property
    def monomial(self) -> Optional[Monomial]:
        if self.vandermonde.is_zero():
            return None
        return Monomial(self.vandermonde * self.coefficient_product, (self.exponent,))


def monomial_wronskian_factors(monomials: Sequence[Monomial]) -> MonomialWronskianFactors:
    if not monomials:
        raise SeriesValueError("The family is empty")
    spec = monomials[0].coefficient.spec
    exponents = [m.exponent[0] for m in monomials]
    n = len(monomials)
    coefficient = spec.one()
    for m in monomials:
        coefficient = coefficient * m.coefficient
    return MonomialWronskianFactors(vandermonde(exponents, spec).value,
                                    sum(exponents) - comb(n, 2), coefficient)


def monomial_wronskian_closed_form(monomials: Sequence[Monomial]) -> Optional[Monomial]:
    """
    Wronskian of a_1 x^d_1, ..., a_n x^d_n in closed form

    Returns:
        V(d) * x^(sum d - C(n,2)) * prod a_i, or None when the
        Vandermonde factor vanishes (colliding exponents, or char p)
    """
    return monomial_wronskian_factors(monomials).monomial


# ============================================================
# GENERALIZED WRONSKIANS
# ============================================================

@dataclass(frozen=True)
class DiffOp:
    """(d/dx_1)^j_1 ... (d/dx_m)^j_m placed at row order_bound"""

    multi_index: Exponent
    order_bound: int

    def __post_init__(self):
        if min(self.multi_index, default=0) < 0:
            raise SeriesValueError("Negative derivative order")
        if sum(self.multi_index) > self.order_bound:
            raise SeriesValueError(
                f"Operator {self.multi_index} has order above its row {self.order_bound}")

    @property
    def is_identity(self) -> bool:
        return not any(self.multi_index)

    def label(self) -> str:
        if self.is_identity:
            return "id"
        parts = []
        for var, times in enumerate(self.multi_index):
            if times:
                parts.append(f"d{var + 1}" if times == 1 else f"d{var + 1}^{times}")
        return "*".join(parts)


@dataclass(frozen=True)
class GenWronskianSpec:
    ops: Tuple[DiffOp, ...]

    def __post_init__(self):
        if not self.ops or not self.ops[0].is_identity:
            raise SeriesValueError("Row 0 of a generalized Wronskian is the identity")
        for s, op in enumerate(self.ops):
            if op.order_bound != s:
                raise SeriesValueError("Operators must sit at their own row")

    @classmethod
    def from_multi_indices(cls, indices: Sequence[Sequence[int]]) -> "GenWronskianSpec":
        return cls(tuple(DiffOp(tuple(int(x) for x in j), s) for s, j in enumerate(indices)))

    @property
    def multi_indices(self) -> List[Exponent]:
        return [op.multi_index for op in self.ops]

    def to_json(self) -> List[List[int]]:
        return [list(j) for j in self.multi_indices]

    def label(self) -> str:
        return "(" + ", ".join(op.label() for op in self.ops) + ")"


def _row_key(j: Exponent) -> Tuple[int, Tuple[int, ...]]:
    return sum(j), tuple(-x for x in j)


@lru_cache(maxsize=None)
def row_operators(s: int, m: int) -> Tuple[Exponent, ...]:
    """Multi-indices with |j| <= s, graded then x1-heavy first"""
    found = [j for j in itertools.product(range(s + 1), repeat=m) if sum(j) <= s]
    return tuple(sorted(found, key=_row_key))


def count_gen_wronskian_specs(n: int, m: int) -> int:
    return prod(comb(s + m, m) for s in range(n))


def iter_gen_wronskian_specs(n: int, m: int) -> Iterator[GenWronskianSpec]:
    """Odometer over the per-row operator lists, last row fastest"""
    if n < 1 or m < 1:
        raise SeriesValueError("Need n >= 1 and m >= 1")
    rows = [row_operators(s, m) for s in range(n)]
    for choice in itertools.product(*rows):
        yield GenWronskianSpec.from_multi_indices(choice)


def enumerate_gen_wronskian_specs(n: int, m: int) -> List[GenWronskianSpec]:
    return list(iter_gen_wronskian_specs(n, m))


def generalized_wronskian_matrix(family: Sequence[MSeries],
                                 spec: GenWronskianSpec) -> List[List[MSeries]]:
    _check_family(family)
    if len(spec.ops) != len(family):
        raise SeriesValueError("One operator per family member is needed")
    return [[mseries_apply(f, op.multi_index) for f in family] for op in spec.ops]


def generalized_wronskian(family: Sequence[MSeries], spec: GenWronskianSpec) -> MSeries:
    return series_matrix_det(generalized_wronskian_matrix(family, spec))


def _delta(alpha: Sequence[int], j: Sequence[int]) -> int:
    return prod(falling_factorial_int(a, k) for a, k in zip(alpha, j))


def monomial_gen_wronskian_matrix(exponents: Sequence[Sequence[int]], spec: GenWronskianSpec,
                                  field: Optional[FieldSpec] = None) -> FieldElement:
    """det of the matrix with entry (s, i) = (alpha_i)_(j_s)"""
    field = field or FieldSpec.rationals()
    rows = [[_delta(alpha, j) for alpha in exponents] for j in spec.multi_indices]
    return field_det(rows, field)


def monomial_gen_wronskian(monomials: Sequence[Monomial], spec: GenWronskianSpec) -> Optional[Monomial]:
    """
    Generalized Wronskian of c_i x^alpha_i in closed form

    Returns:
        prod(c_i) * det(delta_s(alpha_i)) * x^(sum alpha_i - sum j_s), or None
    """
    field = monomials[0].coefficient.spec
    det = monomial_gen_wronskian_matrix([m.exponent for m in monomials], spec, field)
    if det.is_zero():
        return None
    coefficient = det
    for m in monomials:
        coefficient = coefficient * m.coefficient
    m_vars = len(monomials[0].exponent)
    exponent = tuple(sum(m.exponent[t] for m in monomials) - sum(j[t] for j in spec.multi_indices)
                     for t in range(m_vars))
    return Monomial(coefficient, exponent)


def generalized_vandermonde(exponents: Sequence[Sequence[int]], rows: Sequence[Sequence[int]],
                            field: Optional[FieldSpec] = None) -> FieldElement:
    """det of the matrix with entry (s, i) = alpha_i ** j_s (0 ** 0 = 1)"""
    field = field or FieldSpec.rationals()
    matrix = [[prod(a ** k for a, k in zip(alpha, j)) for alpha in exponents] for j in rows]
    return field_det(matrix, field)


@lru_cache(maxsize=None)
def _linear_form_ring(m: int) -> PolyRing:
    return PolyRing(tuple(f"u{i + 1}" for i in range(m)), QQ, lex)


def phi_vandermonde_of_linear_forms(exponents: Sequence[Sequence[int]],
                                    spec: Optional[FieldSpec] = None) -> PolyElement:
    """
    Vandermonde determinant of the linear forms <u, alpha_i>

    Returns:
        prod_{i<j} (L_j - L_i) in Q[u1..um]; zero iff two alpha_i coincide
    """
    spec = spec or FieldSpec.rationals()
    if spec.characteristic() != 0:
        raise CharacteristicError("The linear-form Vandermonde needs characteristic 0")
    if not exponents:
        raise SeriesValueError("No exponents given")
    R = _linear_form_ring(len(exponents[0]))
    forms = [sum((int(a) * u for a, u in zip(alpha, R.gens)), R.zero) for alpha in exponents]
    phi = R.one
    for i, j in itertools.combinations(range(len(forms)), 2):
        phi *= forms[j] - forms[i]
    return phi


def leading_tail_decomposition(family: Sequence[MSeries],
                               spec: GenWronskianSpec) -> List[Tuple[int, MSeries]]:
    """
    The 2^n multilinear summands of a generalized Wronskian

    Each member splits as leading monomial + tail; bit i of the mask selects
    the tail of member i. Mask 0 is the Wronskian of the leading monomials.
    """
    _check_family(family)
    leads, tails = [], []
    for f in family:
        lm = f.leading_monomial()
        lead = MSeries.build(f.spec, f.num_vars, {lm.exponent: lm.coefficient.value})
        leads.append(lead)
        tails.append(mseries_sub(f, lead))
    summands = []
    for mask in range(2 ** len(family)):
        members = [tails[i] if mask >> i & 1 else leads[i] for i in range(len(family))]
        summands.append((mask, generalized_wronskian(members, spec)))
    return summands
