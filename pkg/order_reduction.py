"""
Column elimination producing series with mutually distinct orders
Works on univariate series (orders) and multivariate series (lex leading
exponents) alike, and records every elementary column operation so that
[g_1 ... g_n] = [f_1 ... f_n] * A can be replayed and det(A) is a running
product.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from exceptions import SeriesValueError
from numeric_field import FieldElement, FieldSpec
from series_ring import MSeries, Series, lex_key, mseries_linear_combine, series_linear_combine
from wronskian_core import wronskian

logger = logging.getLogger(__name__)

Member = Union[Series, MSeries]


def _order_key(key: Any) -> Any:
    """Orders compare as integers, multivariate leading exponents in lex"""
    return lex_key(key) if isinstance(key, tuple) else key


class ReductionStatus(Enum):
    DISTINCT_ORDERS = "DistinctOrders"
    DEPENDENCE_FOUND = "DependenceFound"
    PRECISION_EXHAUSTED = "PrecisionExhausted"


class OpKind(Enum):
    SWAP = "swap"
    ADD = "add"
    SCALE = "scale"


@dataclass(frozen=True)
class ElementaryOp:
    """
    One column operation on the transform A

    SWAP exchanges columns target and source; ADD does
    col[target] += factor * col[source]; SCALE does col[target] *= factor.
    """

    kind: OpKind
    target: int
    source: Optional[int] = None
    factor: Optional[FieldElement] = None

    def determinant(self, spec: FieldSpec) -> FieldElement:
        if self.kind is OpKind.SWAP:
            return -spec.one()
        if self.kind is OpKind.SCALE:
            return self.factor
        return spec.one()

    def to_json(self) -> Dict[str, Any]:
        data = {"op": self.kind.value, "target": self.target}
        if self.source is not None:
            data["source"] = self.source
        if self.factor is not None:
            data["factor"] = str(self.factor)
        return data


@dataclass(frozen=True)
class ReductionResult:
    family: Tuple[Member, ...]
    g: Tuple[Member, ...]
    A: Tuple[Tuple[FieldElement, ...], ...]
    elementary_ops: Tuple[ElementaryOp, ...]
    status: ReductionStatus
    dependence: Optional[Tuple[FieldElement, ...]] = None

    @property
    def spec(self) -> FieldSpec:
        return self.family[0].spec

    @property
    def det_A(self) -> FieldElement:
        """Running product of the elementary determinants"""
        det = self.spec.one()
        for op in self.elementary_ops:
            det = det * op.determinant(self.spec)
        return det

    @property
    def orders(self) -> List[Any]:
        """Leading keys of g: ints (univariate) or exponent tuples"""
        return [member.leading_key() for member in self.g]

    def to_json(self) -> Dict[str, Any]:
        data = {
            "status": self.status.value,
            "g": [str(member) for member in self.g],
            "A": [[str(a) for a in row] for row in self.A],
            "det_A": str(self.det_A),
            "orders": [list(k) if isinstance(k, tuple) else k for k in self.orders],
            "ops": [op.to_json() for op in self.elementary_ops],
        }
        if self.dependence is not None:
            data["dependence"] = [str(c) for c in self.dependence]
        return data


# ============================================================
# ELIMINATION
# ============================================================

def normalize_vector(vector: Sequence[FieldElement]) -> Tuple[FieldElement, ...]:
    """Scale so that the first nonzero entry is 1"""
    lead = next((c for c in vector if not c.is_zero()), None)
    if lead is None:
        raise SeriesValueError("The zero vector has no normalization")
    inverse = lead.inverse()
    return tuple(c * inverse for c in vector)


def _combine(member: Member) -> Callable:
    return mseries_linear_combine if isinstance(member, MSeries) else series_linear_combine


class _Eliminator:
    """Mutable working state of one reduction; never escapes the module"""

    def __init__(self, family: Sequence[Member]):
        if not family:
            raise SeriesValueError("Cannot reduce an empty family")
        if len({f.spec for f in family}) > 1:
            raise SeriesValueError("Family members live in different fields")
        self.family = tuple(family)
        self.spec = family[0].spec
        self.n = len(family)
        self.g: List[Member] = list(family)
        K = self.spec.domain
        self.A = [[K.one if i == j else K.zero for j in range(self.n)] for i in range(self.n)]
        self.ops: List[ElementaryOp] = []
        self.combine = _combine(family[0])

    def add(self, target: int, source: int, factor: Any):
        self.g[target] = self.combine([self.g[target], self.g[source]], [1, FieldElement(self.spec, factor)])
        for row in self.A:
            row[target] = row[target] + factor * row[source]
        self.ops.append(ElementaryOp(OpKind.ADD, target, source, FieldElement(self.spec, factor)))

    def scale(self, target: int, factor: Any):
        self.g[target] = self.g[target] * FieldElement(self.spec, factor)
        for row in self.A:
            row[target] = row[target] * factor
        self.ops.append(ElementaryOp(OpKind.SCALE, target, None, FieldElement(self.spec, factor)))

    def swap(self, a: int, b: int):
        self.g[a], self.g[b] = self.g[b], self.g[a]
        for row in self.A:
            row[a], row[b] = row[b], row[a]
        self.ops.append(ElementaryOp(OpKind.SWAP, a, b))

    def result(self, status: ReductionStatus, column: Optional[int] = None) -> ReductionResult:
        dependence = None
        if column is not None:
            dependence = normalize_vector([FieldElement(self.spec, row[column]) for row in self.A])
        A = tuple(tuple(FieldElement(self.spec, a) for a in row) for row in self.A)
        return ReductionResult(self.family, tuple(self.g), A, tuple(self.ops), status, dependence)

    def vanished(self, j: int) -> ReductionResult:
        member = self.g[j]
        # a more precise contributor would need an order past the combined precision
        contributors = [self.family[i] for i in range(self.n) if self.A[i][j]]
        if not member.exact and any(f.exact or f.precision > member.precision for f in contributors):
            logger.debug("Column %d vanished below the precision of a contributor", j)
            return self.result(ReductionStatus.PRECISION_EXHAUSTED)
        logger.debug("Column %d vanished, dependence found", j)
        return self.result(ReductionStatus.DEPENDENCE_FOUND, j)

    def run(self, monic: bool, echelon: bool) -> ReductionResult:
        active = list(range(self.n))
        while active:
            for j in active:
                if self.g[j].is_zero():
                    return self.vanished(j)
            keys = {j: self.g[j].leading_key() for j in active}
            lowest = min(keys.values(), key=_order_key)
            group = [j for j in active if keys[j] == lowest]
            pivot = group[0]
            lead = self.g[pivot].leading_coefficient_raw()
            for j in group[1:]:
                factor = -(self.g[j].leading_coefficient_raw() / lead)
                logger.debug("col %d += %s * col %d (order %s)", j,
                             self.spec.format_raw(factor), pivot, lowest)
                self.add(j, pivot, factor)
                if self.g[j].is_zero():
                    return self.vanished(j)
            active.remove(pivot)
        if monic:
            for j in range(self.n):
                lead = self.g[j].leading_coefficient_raw()
                if lead != self.spec.domain.one:
                    self.scale(j, self.spec.domain.one / lead)
        if echelon:
            # selection sort by leading key, recorded as swaps
            for i in range(self.n):
                best = min(range(i, self.n), key=lambda j: _order_key(self.g[j].leading_key()))
                if best != i:
                    self.swap(i, best)
        return self.result(ReductionStatus.DISTINCT_ORDERS)


def reduce_to_distinct_orders(family: Sequence[Series], monic: bool = False,
                              echelon: bool = False) -> ReductionResult:
    """
    Column elimination until the orders are mutually distinct

    Among the columns sharing the current minimal order, the lowest index
    is the pivot and the others are replaced by combinations of strictly
    greater order.

    Args:
        family: univariate series over one field
        monic: scale every final column to leading coefficient 1
        echelon: sort the final columns by increasing order

    Returns:
        ReductionResult with status DistinctOrders, DependenceFound or
        PrecisionExhausted
    """
    if any(not isinstance(f, Series) for f in family):
        raise SeriesValueError("reduce_to_distinct_orders expects univariate series")
    return _Eliminator(family).run(monic, echelon)


def reduce_to_distinct_leading_exponents(family: Sequence[MSeries], monic: bool = False,
                                         echelon: bool = False) -> ReductionResult:
    """Same elimination with the lex order on leading exponents"""
    if any(not isinstance(f, MSeries) for f in family):
        raise SeriesValueError("reduce_to_distinct_leading_exponents expects multivariate series")
    if len({f.num_vars for f in family}) > 1:
        raise SeriesValueError("Family members have different numbers of variables")
    return _Eliminator(family).run(monic, echelon)


def apply_transform(family: Sequence[Member], A: Sequence[Sequence[FieldElement]]) -> List[Member]:
    """[f_1 ... f_n] * A"""
    combine = _combine(family[0])
    n = len(family)
    return [combine(list(family), [A[i][j] for i in range(n)]) for j in range(n)]


def verify_wronskian_transfer(f: Sequence[Series], result: ReductionResult) -> bool:
    """
    Check W(g) = W(f) * det(A) on the common precision window

    Raises:
        PrecisionError: a Wronskian has no known coefficient
    """
    if result.status is not ReductionStatus.DISTINCT_ORDERS:
        raise SeriesValueError("Wronskian transfer is checked on DistinctOrders results")
    w_f = wronskian(list(f))
    w_g = wronskian(list(result.g))
    return w_g.agrees_with(w_f * result.det_A)
