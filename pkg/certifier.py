"""
Dependence certifier
Decides linear dependence of a family of series, Laurent series, rational
functions or multivariate series over K and returns a certificate that
can be checked independently: a dependence vector, or the transform A
together with a nonzero (generalized) Wronskian leading monomial.

An independent brute-force rank oracle is provided for differential tests.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import jsonschema
from sympy.polys.matrices import DomainMatrix

from config import Config
from exceptions import CertificateError, CharacteristicError, PrecisionError, SeriesValueError
from numeric_field import FieldElement, FieldSpec
from order_reduction import (
    ReductionResult,
    ReductionStatus,
    apply_transform,
    normalize_vector,
    reduce_to_distinct_leading_exponents,
    reduce_to_distinct_orders,
)
from series_ring import (
    Monomial,
    MSeries,
    RationalFunction,
    Series,
    laurent_expand,
    mseries_linear_combine,
    series_linear_combine,
    series_mul,
    translate_rational,
)
from wronskian_core import (
    GenWronskianSpec,
    generalized_wronskian,
    iter_gen_wronskian_specs,
    monomial_gen_wronskian,
    monomial_gen_wronskian_matrix,
    monomial_wronskian_closed_form,
    wronskian,
)

logger = logging.getLogger(__name__)

Family = Sequence[Union[Series, MSeries, RationalFunction]]


# ============================================================
# CERTIFICATE TYPES
# ============================================================

class Verdict(Enum):
    INDEPENDENT = "Independent"
    DEPENDENT = "Dependent"
    DEPENDENT_UP_TO_PRECISION = "DependentUpToPrecision"
    INCONCLUSIVE = "Inconclusive"


class InconclusiveReason(Enum):
    PRECISION_EXHAUSTED = "PrecisionExhausted"
    CHAR_P_CAVEAT = "CharPCaveat"


class Strategy(Enum):
    LAURENT_EXPANSION = "laurent"
    TRANSLATION = "translate"


class WitnessMethod(Enum):
    CLOSED_FORM = "closed_form"
    FULL_EXPANSION = "full_expansion"


@dataclass(frozen=True)
class IndependenceWitness:
    """
    Transform A exposing distinct orders, and the nonzero leading monomial
    of W(f) = W(g) / det(A). For multivariate families, ``gen_spec`` names
    the generalized Wronskian and ``gen_value`` is det(delta_s(alpha_i)).

    ``wronskian_lm`` is None when truncated multivariate members leave it
    undetermined: unknown terms of high total degree may be lex-smaller.
    """

    transform: Tuple[Tuple[FieldElement, ...], ...]
    det_A: FieldElement
    orders: Tuple[Any, ...]
    wronskian_lm: Optional[Monomial]
    reduced_wronskian_lm: Monomial
    method: WitnessMethod = WitnessMethod.CLOSED_FORM
    gen_spec: Optional[GenWronskianSpec] = None
    gen_value: Optional[FieldElement] = None


@dataclass(frozen=True)
class DependenceWitness:
    vector: Tuple[FieldElement, ...]
    exact: bool
    precision: Optional[int] = None


@dataclass(frozen=True)
class CaveatWitness:
    reason: InconclusiveReason
    detail: str = ""


@dataclass(frozen=True)
class Expansion:
    """How a rational family was turned into series"""

    strategy: Strategy
    shift: FieldElement
    precision: int


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    witness: Union[IndependenceWitness, DependenceWitness, CaveatWitness]
    field: FieldSpec
    expansion: Optional[Expansion] = None

    def to_json(self) -> Dict[str, Any]:
        data = {"verdict": self.verdict.value, "field": str(self.field),
                "witness": _witness_json(self.witness)}
        if self.expansion is not None:
            data["expansion"] = {"strategy": self.expansion.strategy.value,
                                 "shift": str(self.expansion.shift),
                                 "precision": self.expansion.precision}
        jsonschema.validate(data, CERTIFICATE_SCHEMA)
        return data


@dataclass(frozen=True)
class OracleReport:
    rank: int
    kernel_vector: Optional[Tuple[FieldElement, ...]] = None


# ============================================================
# JSON
# ============================================================

_MONOMIAL_SCHEMA = {
    "type": "object",
    "required": ["coefficient", "exponent", "text"],
    "properties": {
        "coefficient": {"type": "string"},
        "exponent": {"type": "array", "items": {"type": "integer"}},
        "text": {"type": "string"},
    },
}

_SCALAR_LIST = {"type": "array", "items": {"type": "string"}}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["verdict", "field", "witness"],
    "properties": {
        "verdict": {"enum": [v.value for v in Verdict]},
        "field": {"type": "string", "pattern": Config.FIELD_PATTERN},
        "witness": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "transform", "det_A", "orders", "wronskian_lm",
                                 "reduced_wronskian_lm", "method"],
                    "properties": {
                        "kind": {"const": "independence"},
                        "transform": {"type": "array", "items": _SCALAR_LIST},
                        "det_A": {"type": "string"},
                        "orders": {"type": "array"},
                        "wronskian_lm": {"oneOf": [_MONOMIAL_SCHEMA, {"type": "null"}]},
                        "reduced_wronskian_lm": _MONOMIAL_SCHEMA,
                        "method": {"enum": [m.value for m in WitnessMethod]},
                        "spec": {"type": "array",
                                 "items": {"type": "array", "items": {"type": "integer"}}},
                        "spec_value": {"type": "string"},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "vector", "exact"],
                    "properties": {
                        "kind": {"const": "dependence"},
                        "vector": _SCALAR_LIST,
                        "exact": {"type": "boolean"},
                        "precision": {"type": ["integer", "null"]},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "reason"],
                    "properties": {
                        "kind": {"const": "caveat"},
                        "reason": {"enum": [r.value for r in InconclusiveReason]},
                        "detail": {"type": "string"},
                    },
                },
            ]
        },
        "expansion": {
            "type": "object",
            "required": ["strategy", "shift", "precision"],
            "properties": {
                "strategy": {"enum": [s.value for s in Strategy]},
                "shift": {"type": "string"},
                "precision": {"type": "integer"},
            },
        },
    },
}


def _monomial_json(m: Monomial) -> Dict[str, Any]:
    return {"coefficient": str(m.coefficient), "exponent": list(m.exponent), "text": str(m)}


def _witness_json(witness: Any) -> Dict[str, Any]:
    if isinstance(witness, IndependenceWitness):
        data = {
            "kind": "independence",
            "method": witness.method.value,
            "transform": [[str(a) for a in row] for row in witness.transform],
            "det_A": str(witness.det_A),
            "orders": [list(k) if isinstance(k, tuple) else k for k in witness.orders],
            "wronskian_lm": (_monomial_json(witness.wronskian_lm)
                             if witness.wronskian_lm is not None else None),
            "reduced_wronskian_lm": _monomial_json(witness.reduced_wronskian_lm),
        }
        if witness.gen_spec is not None:
            data["spec"] = witness.gen_spec.to_json()
            data["spec_value"] = str(witness.gen_value)
        return data
    if isinstance(witness, DependenceWitness):
        return {"kind": "dependence", "vector": [str(c) for c in witness.vector],
                "exact": witness.exact, "precision": witness.precision}
    return {"kind": "caveat", "reason": witness.reason.value, "detail": witness.detail}


def _scalar(text: str, field: FieldSpec) -> FieldElement:
    return field.element(Fraction(text))


def _monomial(data: Dict[str, Any], field: FieldSpec) -> Monomial:
    return Monomial(_scalar(data["coefficient"], field), tuple(data["exponent"]))


def certificate_from_json(data: Dict[str, Any]) -> Certificate:
    """Inverse of Certificate.to_json"""
    try:
        jsonschema.validate(data, CERTIFICATE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise CertificateError(f"Malformed certificate: {e.message}") from e
    field = FieldSpec.parse(data["field"])
    w = data["witness"]
    if w["kind"] == "independence":
        gen_spec = GenWronskianSpec.from_multi_indices(w["spec"]) if "spec" in w else None
        witness = IndependenceWitness(
            transform=tuple(tuple(_scalar(a, field) for a in row) for row in w["transform"]),
            det_A=_scalar(w["det_A"], field),
            orders=tuple(tuple(k) if isinstance(k, list) else k for k in w["orders"]),
            wronskian_lm=(_monomial(w["wronskian_lm"], field)
                          if w["wronskian_lm"] is not None else None),
            reduced_wronskian_lm=_monomial(w["reduced_wronskian_lm"], field),
            method=WitnessMethod(w["method"]),
            gen_spec=gen_spec,
            gen_value=_scalar(w["spec_value"], field) if "spec_value" in w else None,
        )
    elif w["kind"] == "dependence":
        witness = DependenceWitness(tuple(_scalar(c, field) for c in w["vector"]),
                                    w["exact"], w.get("precision"))
    else:
        witness = CaveatWitness(InconclusiveReason(w["reason"]), w.get("detail", ""))
    expansion = None
    if "expansion" in data:
        e = data["expansion"]
        expansion = Expansion(Strategy(e["strategy"]), _scalar(e["shift"], field), e["precision"])
    return Certificate(Verdict(data["verdict"]), witness, field, expansion)


# ============================================================
# RANK ORACLE
# ============================================================

def cleared_numerators(family: Sequence[RationalFunction]) -> List[Series]:
    """p_i * prod_{j != i} q_j: same linear relations as the p_i / q_i"""
    result = []
    for i, r in enumerate(family):
        term = r.numerator
        for j, other in enumerate(family):
            if j != i:
                term = series_mul(term, other.denominator)
        result.append(term)
    return result


def _coefficient_rows(family: Sequence[Union[Series, MSeries]]) -> List[List[Any]]:
    truncated = [f.precision for f in family if not f.exact]
    if isinstance(family[0], MSeries):
        top = min(truncated) if truncated else None
        monomials = sorted({e for f in family for e in f.poly.keys()
                            if top is None or sum(e) < top})
        zero = family[0].spec.domain.zero
        return [[f.poly.get(e, zero) for f in family] for e in monomials]
    low = min(f.valuation_offset for f in family)
    top = min(truncated) if truncated else max(f.precision for f in family)
    return [[f.coeff_raw(e) for f in family] for e in range(low, top)]


def rank_oracle(family: Family) -> OracleReport:
    """
    Rank of the coefficient matrix (rows = monomials in the known window,
    columns = members) by exact Gaussian elimination over K
    """
    if not family:
        raise SeriesValueError("The family is empty")
    if isinstance(family[0], RationalFunction):
        family = cleared_numerators(family)
    spec = family[0].spec
    K = spec.domain
    n = len(family)
    rows = _coefficient_rows(family)
    if not rows:
        kernel = tuple(spec.one() if i == 0 else spec.zero() for i in range(n))
        return OracleReport(0, kernel)
    matrix = DomainMatrix(rows, (len(rows), n), K)
    rank = matrix.rank()
    if rank == n:
        return OracleReport(rank)
    basis = matrix.nullspace().to_list()
    kernel = normalize_vector([FieldElement(spec, c) for c in basis[0]])
    return OracleReport(rank, kernel)


# ============================================================
# CERTIFICATION
# ============================================================

def _dependent(result: ReductionResult) -> Certificate:
    exact = all(f.exact for f in result.family)
    precision = None
    if not exact:
        precision = min(f.precision for f in result.family if not f.exact)
        logger.warning("Dependence only holds up to precision %d", precision)
    verdict = Verdict.DEPENDENT if exact else Verdict.DEPENDENT_UP_TO_PRECISION
    return Certificate(verdict, DependenceWitness(result.dependence, exact, precision), result.spec)


def _exhausted(result: ReductionResult,
               detail: str = "a combination ran out of known coefficients") -> Certificate:
    logger.warning("Precision exhausted: %s", detail)
    witness = CaveatWitness(InconclusiveReason.PRECISION_EXHAUSTED, detail)
    return Certificate(Verdict.INCONCLUSIVE, witness, result.spec)


def _scaled(monomial: Monomial, factor: FieldElement) -> Monomial:
    return Monomial(monomial.coefficient * factor, monomial.exponent)


def _independent(result: ReductionResult, reduced: Monomial, method: WitnessMethod,
                 gen_spec: Optional[GenWronskianSpec] = None,
                 gen_value: Optional[FieldElement] = None,
                 lm_known: bool = True) -> Certificate:
    det = result.det_A
    witness = IndependenceWitness(
        transform=result.A,
        det_A=det,
        orders=tuple(result.orders),
        wronskian_lm=_scaled(reduced, det.inverse()) if lm_known else None,
        reduced_wronskian_lm=reduced,
        method=method,
        gen_spec=gen_spec,
        gen_value=gen_value,
    )
    return Certificate(Verdict.INDEPENDENT, witness, result.spec)


def certify_univariate(family: Sequence[Series]) -> Certificate:
    """
    Decide dependence of univariate (Laurent) series

    On distinct orders the witness is the closed-form Wronskian of the
    leading monomials of g, nonzero in characteristic 0. In characteristic p
    a vanishing closed form falls back to the full Wronskian, and a zero
    Wronskian for a family of full rank is reported as CharPCaveat.
    """
    result = reduce_to_distinct_orders(family)
    if result.status is ReductionStatus.DEPENDENCE_FOUND:
        return _dependent(result)
    if result.status is ReductionStatus.PRECISION_EXHAUSTED:
        return _exhausted(result)
    leading = [g.leading_monomial() for g in result.g]
    reduced = monomial_wronskian_closed_form(leading)
    if reduced is not None:
        logger.info("Independent: distinct orders %s", result.orders)
        return _independent(result, reduced, WitnessMethod.CLOSED_FORM)

    # only reachable in positive characteristic
    logger.debug("Closed form vanishes in %s, expanding the full Wronskian", result.spec)
    try:
        full = wronskian(list(family))
    except PrecisionError:
        return _exhausted(result, "closed form vanishes and the full Wronskian needs more precision")
    if not full.is_zero():
        reduced = _scaled(full.leading_monomial(), result.det_A)
        return _independent(result, reduced, WitnessMethod.FULL_EXPANSION)
    oracle = rank_oracle(family)
    if oracle.kernel_vector is not None:
        exact = all(f.exact for f in family)
        witness = DependenceWitness(oracle.kernel_vector, exact)
        verdict = Verdict.DEPENDENT if exact else Verdict.DEPENDENT_UP_TO_PRECISION
        return Certificate(verdict, witness, result.spec)
    logger.warning("Zero Wronskian for an independent family in characteristic %d",
                   result.spec.characteristic())
    witness = CaveatWitness(InconclusiveReason.CHAR_P_CAVEAT,
                            f"zero Wronskian but rank {oracle.rank} in characteristic "
                            f"{result.spec.characteristic()}")
    return Certificate(Verdict.INCONCLUSIVE, witness, result.spec)


# ---------- rational functions ----------

def rational_precision(family: Sequence[RationalFunction]) -> int:
    """
    Working precision for expansions of a rational family

    Past max deg(p_i) + sum deg(q_j), a combination that vanishes to that
    precision has a zero cleared numerator, so truncated dependence is exact.
    """
    n = len(family)
    num_degree = max((r.numerator.degree() or 0) for r in family)
    den_degrees = [r.denominator.degree() or 0 for r in family]
    degree = max(num_degree, max(den_degrees))
    return max(num_degree + sum(den_degrees) + 1, Config.working_precision(n, degree))


def translation_candidates(spec: FieldSpec) -> Iterator[FieldElement]:
    """0, 1, -1, 2, -2, ... without repeating a residue"""
    seen = set()
    for k in itertools.count():
        for value in ((0,) if k == 0 else (k, -k)):
            element = spec.element(value)
            if element not in seen:
                seen.add(element)
                yield element
        if spec.characteristic() and len(seen) >= spec.characteristic():
            return


def find_translation_point(family: Sequence[RationalFunction]) -> FieldElement:
    spec = family[0].spec
    for tried, c in enumerate(translation_candidates(spec)):
        if tried >= Config.TRANSLATION_SEARCH_LIMIT:
            break
        if all(not r.evaluate_denominator(c).is_zero() for r in family):
            return c
    raise SeriesValueError("No translation point avoids every pole")


def expand_rational_family(family: Sequence[RationalFunction], strategy: Strategy,
                           precision: Optional[int] = None,
                           shift: Optional[FieldElement] = None) -> Tuple[List[Series], Expansion]:
    if not family:
        raise SeriesValueError("The family is empty")
    spec = family[0].spec
    precision = precision or rational_precision(family)
    if strategy is Strategy.LAURENT_EXPANSION:
        series = [laurent_expand(r, precision).truncate(precision) for r in family]
        return series, Expansion(strategy, spec.zero(), precision)
    if shift is None:
        shift = find_translation_point(family)
    logger.debug("Translating by %s", shift)
    series = [translate_rational(r, shift, precision).truncate(precision) for r in family]
    return series, Expansion(strategy, shift, precision)


def _rational_relation_is_exact(family: Sequence[RationalFunction],
                                vector: Sequence[FieldElement]) -> bool:
    return series_linear_combine(cleared_numerators(family), vector).is_zero()


def certify_rational(family: Sequence[RationalFunction],
                     strategy: Strategy = Strategy.LAURENT_EXPANSION,
                     precision: Optional[int] = None) -> Certificate:
    """
    Decide dependence of rational functions via Laurent expansion at 0, or
    via a translation x -> x + c that moves every pole off the origin
    """
    series, expansion = expand_rational_family(family, strategy, precision)
    cert = certify_univariate(series)
    if cert.verdict is Verdict.DEPENDENT_UP_TO_PRECISION:
        if _rational_relation_is_exact(family, cert.witness.vector):
            cert = Certificate(Verdict.DEPENDENT,
                               DependenceWitness(cert.witness.vector, True, None), cert.field)
    return Certificate(cert.verdict, cert.witness, cert.field, expansion)


# ---------- multivariate ----------

def _search_witness(exponents: List[Tuple[int, ...]], field: FieldSpec, n: int, m: int,
                    workers: int) -> Tuple[GenWronskianSpec, FieldElement]:
    """First spec in enumeration order with a nonzero monomial determinant"""
    specs = iter_gen_wronskian_specs(n, m)
    evaluate = lambda spec: (spec, monomial_gen_wronskian_matrix(exponents, spec, field))
    if workers <= 1:
        for spec in specs:
            spec, value = evaluate(spec)
            if not value.is_zero():
                return spec, value
    else:
        batch_size = workers * 8
        with ThreadPoolExecutor(max_workers=workers) as executor:
            while True:
                batch = list(itertools.islice(specs, batch_size))
                if not batch:
                    break
                # map keeps enumeration order whatever the schedule
                for spec, value in executor.map(evaluate, batch):
                    if not value.is_zero():
                        return spec, value
    raise SeriesValueError("No generalized Wronskian witness found")


def certify_multivariate(family: Sequence[MSeries], workers: Optional[int] = None) -> Certificate:
    """
    Decide dependence of multivariate series (characteristic 0 only)

    After reduction to distinct lex leading exponents, the enumeration is
    searched in order for a generalized Wronskian whose monomial
    determinant det(delta_s(alpha_i)) is nonzero.
    """
    if not family:
        raise SeriesValueError("The family is empty")
    field = family[0].spec
    if field.characteristic() != 0:
        raise CharacteristicError("Generalized Wronskians certify only in characteristic 0")
    result = reduce_to_distinct_leading_exponents(family)
    if result.status is ReductionStatus.DEPENDENCE_FOUND:
        return _dependent(result)
    if result.status is ReductionStatus.PRECISION_EXHAUSTED:
        return _exhausted(result)
    leading = [g.leading_monomial() for g in result.g]
    exponents = [lm.exponent for lm in leading]
    spec, value = _search_witness(exponents, field, len(family), family[0].num_vars,
                                  workers or Config.WITNESS_WORKERS)
    logger.info("Independent: witness %s", spec.label())
    reduced = monomial_gen_wronskian(leading, spec)
    lm_known = all(f.exact for f in family)
    if not lm_known:
        logger.info("Truncated members: generalized Wronskian leading monomial left open")
    return _independent(result, reduced, WitnessMethod.CLOSED_FORM, spec, value, lm_known)


# ============================================================
# VERIFICATION
# ============================================================

def _field_det(rows: Sequence[Sequence[FieldElement]], field: FieldSpec) -> FieldElement:
    n = len(rows)
    matrix = DomainMatrix([[a.value for a in row] for row in rows], (n, n), field.domain)
    return FieldElement(field, matrix.det())


def _verify_dependence(family: Family, witness: DependenceWitness, verdict: Verdict) -> bool:
    if len(witness.vector) != len(family):
        raise CertificateError("Dependence vector and family differ in length")
    if all(c.is_zero() for c in witness.vector):
        return False
    if isinstance(family[0], RationalFunction):
        return _rational_relation_is_exact(family, witness.vector)
    combine = mseries_linear_combine if isinstance(family[0], MSeries) else series_linear_combine
    combination = combine(list(family), list(witness.vector))
    if verdict is Verdict.DEPENDENT:
        return combination.exact and combination.is_zero()
    return combination.is_zero()


def _verify_independence(family: Sequence[Union[Series, MSeries]], witness: IndependenceWitness,
                         field: FieldSpec, full: bool) -> bool:
    n = len(family)
    if len(witness.transform) != n or any(len(row) != n for row in witness.transform):
        raise CertificateError("Transform is not an n x n matrix")
    det = _field_det(witness.transform, field)
    if det.is_zero() or det != witness.det_A:
        return False
    g = apply_transform(family, witness.transform)
    keys = tuple(member.leading_key() for member in g)
    if None in keys or len(set(keys)) != n or keys != tuple(witness.orders):
        return False
    leading = [member.leading_monomial() for member in g]
    multivariate = isinstance(family[0], MSeries)
    if witness.method is WitnessMethod.CLOSED_FORM:
        if multivariate:
            if witness.gen_spec is None:
                raise CertificateError("Multivariate witness without a generalized Wronskian")
            reduced = monomial_gen_wronskian(leading, witness.gen_spec)
        else:
            reduced = monomial_wronskian_closed_form(leading)
        if reduced is None or reduced != witness.reduced_wronskian_lm:
            return False
    if witness.wronskian_lm is None:
        return (multivariate and witness.method is WitnessMethod.CLOSED_FORM
                and not all(f.exact for f in family))
    if witness.wronskian_lm != _scaled(witness.reduced_wronskian_lm, det.inverse()):
        return False
    if witness.method is WitnessMethod.FULL_EXPANSION or full:
        return _full_leading_monomial_matches(family, witness)
    return True


def _full_leading_monomial_matches(family: Sequence[Union[Series, MSeries]],
                                   witness: IndependenceWitness) -> bool:
    try:
        if isinstance(family[0], MSeries):
            expanded = generalized_wronskian(list(family), witness.gen_spec)
        else:
            expanded = wronskian(list(family))
    except PrecisionError:
        # a derivative left the known window; only the closed form stands
        return witness.method is WitnessMethod.CLOSED_FORM
    if expanded.is_zero():
        return False
    return expanded.leading_monomial() == witness.wronskian_lm


def _full_wronskian_out_of_reach(family: Sequence[Series], result: ReductionResult) -> bool:
    """Distinct orders, a vanishing closed form, and no full Wronskian to fall back on"""
    if result.status is not ReductionStatus.DISTINCT_ORDERS:
        return False
    if monomial_wronskian_closed_form([g.leading_monomial() for g in result.g]) is not None:
        return False
    try:
        wronskian(list(family))
    except PrecisionError:
        return True
    return False


def _verify_caveat(family: Sequence[Series], cert: Certificate) -> bool:
    if cert.witness.reason is InconclusiveReason.PRECISION_EXHAUSTED:
        result = reduce_to_distinct_orders(family)
        if result.status is ReductionStatus.PRECISION_EXHAUSTED:
            return True
        return _full_wronskian_out_of_reach(family, result)
    if cert.field.characteristic() == 0:
        return False
    return wronskian(list(family)).is_zero() and rank_oracle(family).rank == len(family)


def verify_certificate(family: Family, cert: Certificate, full: bool = False) -> bool:
    """
    Check a certificate against its family from scratch

    Args:
        family: the certified series, multivariate series or rational functions
        cert: the certificate to check
        full: also compare against the fully expanded (generalized) Wronskian

    Returns:
        True iff the certificate holds
    """
    if not family:
        raise CertificateError("Empty family")
    kinds = {
        Verdict.INDEPENDENT: IndependenceWitness,
        Verdict.DEPENDENT: DependenceWitness,
        Verdict.DEPENDENT_UP_TO_PRECISION: DependenceWitness,
        Verdict.INCONCLUSIVE: CaveatWitness,
    }
    if not isinstance(cert.witness, kinds[cert.verdict]):
        raise CertificateError(f"{cert.verdict.value} certificate with a mismatched witness")
    if family[0].spec != cert.field:
        raise CertificateError("Certificate and family use different fields")
    if isinstance(cert.witness, DependenceWitness):
        return _verify_dependence(family, cert.witness, cert.verdict)
    if isinstance(family[0], RationalFunction):
        if cert.expansion is None:
            raise CertificateError("Rational certificate without expansion data")
        family, _ = expand_rational_family(family, cert.expansion.strategy,
                                           cert.expansion.precision, cert.expansion.shift)
    if isinstance(cert.witness, CaveatWitness):
        return _verify_caveat(family, cert)
    return _verify_independence(family, cert.witness, cert.field, full)
