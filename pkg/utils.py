"""
Utility functions for the Wronskian dependence certifier
Provides family file loading, the series expression grammar, validation
and report formatting helpers
"""

import json
import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pyparsing as pp
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import lex

from certifier import (
    CaveatWitness,
    Certificate,
    DependenceWitness,
    IndependenceWitness,
    Verdict,
)
from config import Config
from exceptions import FamilyParseError
from numeric_field import FieldSpec
from series_ring import MSeries, RationalFunction, Series, polynomial_ring
from wronskian_core import MonomialWronskianFactors

logger = logging.getLogger(__name__)

Entry = Union[Series, MSeries, RationalFunction]

_PREC_SUFFIX = re.compile(r"@prec\s*=\s*([0-9]+)\s*$")
_DIRECTIVE = re.compile(r"^@(field|vars|prec)\s*=\s*(\S+)\s*$")


@dataclass(frozen=True)
class FamilyFile:
    """A parsed family file: the field, the variable count and the entries"""

    field: FieldSpec
    num_vars: int
    precision: Optional[int]
    entries: Tuple[Entry, ...]

    @property
    def is_multivariate(self) -> bool:
        return self.num_vars > 1

    @property
    def has_rational(self) -> bool:
        return any(isinstance(e, RationalFunction) for e in self.entries)

    def rational_functions(self) -> List[RationalFunction]:
        """Every entry viewed as p / q"""
        result = []
        for entry in self.entries:
            if isinstance(entry, RationalFunction):
                result.append(entry)
            elif not entry.exact:
                raise FamilyParseError("Truncated entries cannot be mixed with rational functions")
            else:
                result.append(RationalFunction.from_series(entry))
        return result


# ============================================================
# SERIES EXPRESSIONS
# ============================================================

class SeriesParser:
    """
    Grammar for one family entry

    Integer coefficients, explicit ``*``, ``/``, ``^`` with an integer
    exponent, parentheses, and the variables x (one variable) or x1..xm.
    Values are evaluated in the fraction field K(x1..xm); division by a
    non-constant is only accepted with one variable.
    """

    def __init__(self, field: FieldSpec, num_vars: int):
        self.field = field
        self.num_vars = num_vars
        self.ring = polynomial_ring(field, num_vars)
        self.fractions = FracField(self.ring.symbols, field.domain, lex)
        self.grammar = self._build_grammar()

    def _build_grammar(self) -> pp.ParserElement:
        expr = pp.Forward()
        number = pp.Word(pp.nums).set_parse_action(self._number)
        variable = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(self._variable)
        exponent = pp.Regex(r"[+-]?[0-9]+").set_parse_action(lambda t: int(t[0]))
        atom = number | variable | (pp.Suppress("(") + expr + pp.Suppress(")"))
        factor = (atom + pp.Optional(pp.Suppress("^") + exponent)).set_parse_action(self._power)
        term = (factor + pp.ZeroOrMore(pp.one_of("* /") + factor)).set_parse_action(self._product)
        sign = pp.Optional(pp.one_of("+ -"))
        expr <<= (sign + term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(self._sum)
        return expr

    # ---------- parse actions ----------

    def _number(self, s: str, loc: int, tokens: pp.ParseResults) -> FracElement:
        return self.fractions(int(tokens[0]))

    def _variable(self, s: str, loc: int, tokens: pp.ParseResults) -> FracElement:
        name = tokens[0]
        names = [f"x{i + 1}" for i in range(self.num_vars)]
        if self.num_vars == 1:
            names.append("x")
        if name not in names:
            raise pp.ParseFatalException(s, loc, f"Unknown variable '{name}', expected {', '.join(names)}")
        index = 0 if name == "x" else int(name[1:]) - 1
        return self.fractions.gens[index]

    def _power(self, s: str, loc: int, tokens: pp.ParseResults) -> FracElement:
        base = tokens[0]
        if len(tokens) == 1:
            return base
        k = tokens[1]
        if k < 0 and not base:
            raise pp.ParseFatalException(s, loc, "Negative power of zero")
        return base ** k

    def _product(self, s: str, loc: int, tokens: pp.ParseResults) -> FracElement:
        value = tokens[0]
        for op, operand in zip(tokens[1::2], tokens[2::2]):
            if op == "*":
                value = value * operand
            elif not operand:
                raise pp.ParseFatalException(s, loc, f"Division by zero in {self.field}")
            else:
                value = value / operand
        return value

    def _sum(self, s: str, loc: int, tokens: pp.ParseResults) -> FracElement:
        tokens = list(tokens)
        negate = False
        if tokens and isinstance(tokens[0], str):
            negate = tokens.pop(0) == "-"
        value = -tokens[0] if negate else tokens[0]
        for op, operand in zip(tokens[1::2], tokens[2::2]):
            value = value + operand if op == "+" else value - operand
        return value

    # ---------- entry conversion ----------

    def parse(self, text: str, precision: Optional[int] = None) -> Entry:
        """
        Parse one entry

        Args:
            text: the expression
            precision: truncate the result there (None keeps it exact)

        Returns:
            Series, MSeries or RationalFunction
        """
        try:
            value = self.grammar.parse_string(text, parse_all=True)[0]
        except pp.ParseBaseException as e:
            raise FamilyParseError(e.msg, e.lineno, e.col) from e
        except RecursionError:
            raise FamilyParseError("Expression is nested too deeply") from None
        return self._entry(value.numer, value.denom, precision)

    def _entry(self, num: Any, den: Any, precision: Optional[int]) -> Entry:
        if den.is_ground:
            num = num.quo_ground(den.LC)
            den = self.ring.one
        if self.num_vars > 1:
            if not den.is_ground:
                raise FamilyParseError("Multivariate entries must be polynomials")
            return MSeries.build(self.field, self.num_vars, dict(num.items()), precision)
        if len(den) == 1:
            ((shift,), lc), = den.items()
            terms = {e - shift: c / lc for (e,), c in num.items()}
            return self._series(terms, precision)
        if precision is not None:
            raise FamilyParseError("Rational entries are exact and take no @prec")
        numerator = self._series({e: c for (e,), c in num.items()}, None)
        denominator = self._series({e: c for (e,), c in den.items()}, None)
        return RationalFunction(numerator, denominator)

    def _series(self, raw_terms: Dict[int, Any], precision: Optional[int]) -> Series:
        K = self.field.domain
        low = min([0] + list(raw_terms))
        if precision is None:
            top = max(raw_terms, default=0) + 1
            coeffs = [raw_terms.get(e, K.zero) for e in range(low, top)]
            return Series.build(self.field, low, coeffs, None, True)
        coeffs = [raw_terms.get(e, K.zero) for e in range(low, max(precision, low + 1))]
        return Series.build(self.field, low, coeffs, precision, False)


# ============================================================
# FAMILY FILES
# ============================================================

class FamilyLoader:
    """Loads family files: directives, comments and entries"""

    @staticmethod
    def load(path: str, field: Optional[str] = None, num_vars: Optional[int] = None,
             precision: Optional[int] = None) -> FamilyFile:
        """
        Read and parse a family file; command line values override directives

        Raises:
            OSError: the file cannot be read
            FamilyParseError: malformed content
        """
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        logger.debug("Loaded %s (%d bytes)", path, len(text))
        return FamilyLoader.parse_text(text, field, num_vars, precision)

    @staticmethod
    def parse_text(text: str, field: Optional[str] = None, num_vars: Optional[int] = None,
                   precision: Optional[int] = None) -> FamilyFile:
        directives, chunks = FamilyLoader._split(text)

        field_text = field or directives.get("field", (Config.DEFAULT_FIELD, None))[0]
        is_valid, error_msg = Config.validate_field_string(field_text)
        if not is_valid:
            raise FamilyParseError(error_msg, directives.get("field", (None, None))[1], 1)
        spec = FieldSpec.parse(field_text)

        if num_vars is None:
            num_vars = FamilyLoader._directive_int(directives, "vars", 1)
        if num_vars < 1:
            raise FamilyParseError("The variable count must be at least 1")
        if precision is None:
            precision = FamilyLoader._directive_int(directives, "prec", None)
        if precision is not None and precision < 1:
            raise FamilyParseError("Precision must be positive")

        parser = SeriesParser(spec, num_vars)
        entries = []
        for line_no, column, chunk in chunks:
            entry_precision = precision
            suffix = _PREC_SUFFIX.search(chunk)
            if suffix:
                entry_precision = int(suffix.group(1))
                chunk = chunk[:suffix.start()]
            try:
                entries.append(parser.parse(chunk.strip(), entry_precision))
            except FamilyParseError as e:
                offset = len(chunk) - len(chunk.lstrip())
                raise FamilyParseError(e.reason, line_no, column + offset + (e.column or 1) - 1) from e

        is_valid, error_msg = Config.validate_family_size(len(entries))
        if not is_valid:
            raise FamilyParseError(error_msg)
        return FamilyFile(spec, num_vars, precision, tuple(entries))

    @staticmethod
    def _split(text: str) -> Tuple[Dict[str, Tuple[str, int]], List[Tuple[int, int, str]]]:
        """Directives by name, and (line, column, text) for every entry"""
        directives = {}
        chunks = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0]
            stripped = line.strip()
            if not stripped:
                continue
            match = _DIRECTIVE.match(stripped)
            if match:
                directives[match.group(1)] = (match.group(2), line_no)
                continue
            if stripped.startswith("@"):
                raise FamilyParseError(f"Unknown directive '{stripped}'", line_no,
                                       line.index("@") + 1)
            column = 1
            for piece in line.split(";"):
                if piece.strip():
                    chunks.append((line_no, column, piece))
                column += len(piece) + 1
        return directives, chunks

    @staticmethod
    def _directive_int(directives: Dict[str, Tuple[str, int]], name: str,
                       default: Optional[int]) -> Optional[int]:
        if name not in directives:
            return default
        value, line_no = directives[name]
        try:
            return int(value)
        except ValueError:
            raise FamilyParseError(f"@{name} expects an integer, got '{value}'", line_no, 1)


# ============================================================
# VALIDATION
# ============================================================

class ValidationHelper:
    """Input validation helper functions"""

    @staticmethod
    def validate_univariate(family: FamilyFile) -> Tuple[bool, str]:
        """
        Validate a family for the univariate commands
        Returns: (is_valid, error_message)
        """
        if family.is_multivariate:
            return False, "This command needs a univariate family (@vars=1)"
        return True, ""

    @staticmethod
    def validate_multivariate(family: FamilyFile) -> Tuple[bool, str]:
        """
        Validate a family for generalized Wronskians
        Returns: (is_valid, error_message)
        """
        if not family.is_multivariate:
            return False, "Generalized Wronskians need at least two variables (@vars=2)"
        if family.has_rational:
            return False, "Generalized Wronskians need polynomial or series entries"
        if family.field.characteristic() != 0:
            return False, f"Generalized Wronskians need characteristic 0, got {family.field}"
        return True, ""


# ============================================================
# REPORTS
# ============================================================

class ReportFormatter:
    """Deterministic text and JSON renderings of results"""

    @staticmethod
    def to_json(data: Any) -> str:
        return json.dumps(data, indent=Config.JSON_INDENT, ensure_ascii=False)

    @staticmethod
    def vector(values: Sequence[Any]) -> str:
        return "(" + ", ".join(str(v) for v in values) + ")"

    @staticmethod
    def matrix(rows: Sequence[Sequence[Any]]) -> str:
        return "[" + ", ".join("[" + ", ".join(str(a) for a in row) + "]" for row in rows) + "]"

    @staticmethod
    def certificate(cert: Certificate) -> List[str]:
        """Report lines of a certificate"""
        lines = [f"verdict: {cert.verdict.value}", f"field: {cert.field}"]
        if cert.expansion is not None:
            lines.append(f"expansion: {cert.expansion.strategy.value} at {cert.expansion.shift}, "
                         f"precision {cert.expansion.precision}")
        w = cert.witness
        if isinstance(w, IndependenceWitness):
            orders = [ReportFormatter.vector(k) if isinstance(k, tuple) else str(k) for k in w.orders]
            lines.append(f"orders: {', '.join(orders)}")
            lines.append(f"transform: {ReportFormatter.matrix(w.transform)}")
            lines.append(f"det(A): {w.det_A}")
            if w.gen_spec is not None:
                lines.append(f"witness: {w.gen_spec.label()} value {w.gen_value}")
            if w.wronskian_lm is None:
                lines.append("wronskian leading monomial: not determined at this precision")
            else:
                lines.append(f"wronskian leading monomial: {w.wronskian_lm}")
            lines.append(f"method: {w.method.value}")
        elif isinstance(w, DependenceWitness):
            lines.append(f"dependence: {ReportFormatter.vector(w.vector)}")
            if w.precision is not None:
                lines.append(f"up to precision: {w.precision}")
        elif isinstance(w, CaveatWitness):
            lines.append(f"reason: {w.reason.value}")
            if w.detail:
                lines.append(f"detail: {w.detail}")
        return lines

    @staticmethod
    def closed_form(factors: MonomialWronskianFactors) -> str:
        """V=3, exp=6, coeff=15 → 45*x^6"""
        monomial = factors.monomial
        result = str(monomial) if monomial is not None else "0"
        return (f"V={factors.vandermonde}, exp={factors.exponent}, "
                f"coeff={factors.coefficient_product} → {result}")


def exit_code_for(verdict: Verdict) -> int:
    """Exit code of the certify command"""
    if verdict is Verdict.INDEPENDENT:
        return Config.EXIT_INDEPENDENT
    if verdict is Verdict.INCONCLUSIVE:
        return Config.EXIT_INCONCLUSIVE
    return Config.EXIT_DEPENDENT
