"""
Command-line entry point of the Wronskian dependence certifier
Subcommands: certify, wronskian, reduce, genwronsk
"""

import logging
import sys
from typing import Callable, List, Optional

import click

from certifier import (
    Strategy,
    certify_multivariate,
    certify_rational,
    certify_univariate,
    expand_rational_family,
)
from config import Config
from exceptions import FamilyParseError, WronskiError
from order_reduction import reduce_to_distinct_leading_exponents, reduce_to_distinct_orders
from series_ring import MSeries, Series
from utils import FamilyFile, FamilyLoader, ReportFormatter, ValidationHelper, exit_code_for
from wronskian_core import (
    count_gen_wronskian_specs,
    generalized_wronskian,
    iter_gen_wronskian_specs,
    monomial_wronskian_factors,
    wronskian,
)

logger = logging.getLogger(__name__)

STRATEGIES = {"laurent": Strategy.LAURENT_EXPANSION, "translate": Strategy.TRANSLATION}


def setup_logging(verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format=Config.LOG_FORMAT, stream=sys.stderr, force=True)


def fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(Config.EXIT_INPUT_ERROR)


def run_guarded(action: Callable[[], Optional[int]]):
    """Run a command body; library errors become exit code 2"""
    try:
        code = action()
    except FamilyParseError as e:
        fail(f"parse error: {e}")
    except (WronskiError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        fail(str(e))
    sys.exit(code or 0)


def load_family(path: str, field: Optional[str], prec: Optional[int],
                num_vars: Optional[int]) -> FamilyFile:
    family = FamilyLoader.load(path, field, num_vars, prec)
    logger.info("%d entries over %s in %d variable(s)", len(family.entries), family.field,
                family.num_vars)
    return family


def univariate_series(family: FamilyFile) -> List[Series]:
    """Entries as series; rational entries are Laurent expanded"""
    is_valid, error_msg = ValidationHelper.validate_univariate(family)
    if not is_valid:
        raise FamilyParseError(error_msg)
    if not family.has_rational:
        return list(family.entries)
    series, _ = expand_rational_family(family.rational_functions(), Strategy.LAURENT_EXPANSION,
                                       family.precision)
    return series


def multivariate_series(family: FamilyFile) -> List[MSeries]:
    is_valid, error_msg = ValidationHelper.validate_multivariate(family)
    if not is_valid:
        raise FamilyParseError(error_msg)
    return list(family.entries)


# ============================================================
# COMMANDS
# ============================================================

field_option = click.option("--field", default=None, help="Coefficient field: Q or Fp:<prime>")
prec_option = click.option("--prec", type=int, default=None, help="Truncate every entry at this precision")
vars_option = click.option("--vars", "num_vars", type=int, default=None, help="Number of variables")


@click.group()
@click.version_option(Config.APP_VERSION, prog_name=Config.APP_NAME)
@click.option("--verbose", is_flag=True, help="Debug logging on stderr")
def cli(verbose: bool):
    """Decide linear dependence of series families with Wronskians."""
    setup_logging(verbose)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@field_option
@prec_option
@vars_option
@click.option("--strategy", type=click.Choice(sorted(STRATEGIES)), default="laurent",
              help="How rational entries become series")
@click.option("--json", "as_json", is_flag=True, help="Print the certificate as JSON")
def certify(path, field, prec, num_vars, strategy, as_json):
    """Certify dependence or independence of the family in PATH."""
    def action():
        family = load_family(path, field, prec, num_vars)
        if family.is_multivariate:
            cert = certify_multivariate(multivariate_series(family))
        elif family.has_rational:
            cert = certify_rational(family.rational_functions(), STRATEGIES[strategy],
                                    family.precision)
        else:
            cert = certify_univariate(list(family.entries))
        if as_json:
            click.echo(ReportFormatter.to_json(cert.to_json()))
        else:
            for line in ReportFormatter.certificate(cert):
                click.echo(line)
        return exit_code_for(cert.verdict)

    run_guarded(action)


@cli.command(name="wronskian")
@click.argument("path", type=click.Path(dir_okay=False))
@field_option
@prec_option
@vars_option
@click.option("--closed-form", is_flag=True, help="Closed form V * x^e * prod(a_i) for monomials")
def wronskian_command(path, field, prec, num_vars, closed_form):
    """Print the Wronskian of the univariate family in PATH."""
    def action():
        family = load_family(path, field, prec, num_vars)
        series = univariate_series(family)
        if closed_form:
            if any(f.is_zero() or f.order() != f.degree() or not f.exact for f in series):
                raise FamilyParseError("--closed-form needs exact nonzero monomials")
            factors = monomial_wronskian_factors([f.leading_monomial() for f in series])
            click.echo(ReportFormatter.closed_form(factors))
        else:
            click.echo(str(wronskian(series)))

    run_guarded(action)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@field_option
@prec_option
@vars_option
def reduce(path, field, prec, num_vars):
    """Column-reduce the family in PATH to distinct orders and print the result as JSON."""
    def action():
        family = load_family(path, field, prec, num_vars)
        if family.is_multivariate:
            result = reduce_to_distinct_leading_exponents(list(family.entries))
        else:
            result = reduce_to_distinct_orders(univariate_series(family))
        click.echo(ReportFormatter.to_json(result.to_json()))

    run_guarded(action)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False), required=False)
@field_option
@prec_option
@vars_option
@click.option("--enumerate-only", is_flag=True, help="List the generalized Wronskians without evaluating")
@click.option("--all", "evaluate_all", is_flag=True, help="Evaluate every generalized Wronskian")
@click.option("--n", "size", type=int, default=None, help="Family size for --enumerate-only")
@click.option("--m", "dims", type=int, default=None, help="Variable count for --enumerate-only")
def genwronsk(path, field, prec, num_vars, enumerate_only, evaluate_all, size, dims):
    """Generalized Wronskians of the multivariate family in PATH."""
    def action():
        if enumerate_only and path is None:
            if size is None or dims is None:
                raise FamilyParseError("--enumerate-only without a file needs --n and --m")
            n, m = size, dims
        else:
            if path is None:
                raise FamilyParseError("A family file is required")
            family = load_family(path, field, prec, num_vars)
            members = multivariate_series(family)
            n, m = len(members), family.num_vars

        if enumerate_only:
            for spec in iter_gen_wronskian_specs(n, m):
                click.echo(spec.label())
            click.echo(f"count: {count_gen_wronskian_specs(n, m)}")
            return None

        if evaluate_all:
            nonzero = 0
            for spec in iter_gen_wronskian_specs(n, m):
                value = generalized_wronskian(members, spec)
                if value.is_zero():
                    click.echo(f"{spec.label()}: 0")
                else:
                    nonzero += 1
                    click.echo(f"{spec.label()}: {value.leading_monomial()}")
            total = count_gen_wronskian_specs(n, m)
            click.echo(f"nonzero: {nonzero} of {total}" if nonzero else "all zero")
            return None

        cert = certify_multivariate(members)
        for line in ReportFormatter.certificate(cert):
            click.echo(line)
        return exit_code_for(cert.verdict)

    run_guarded(action)


if __name__ == "__main__":
    cli()
