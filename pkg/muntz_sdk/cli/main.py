"""The `muntz` command line.

Every subcommand writes one report to standard output (or to --output) and
exits 0; rejected input exits 2 and a violated certificate exits 1.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

from .. import __version__
from ..config.settings import DensitySettings
from ..constructive.approximant import abs_via_muntz, qn_coefficients, qn_convergence_report
from ..core.grid import Grid
from ..errors.exceptions import CertificateError, ExitCode, InputRejectedError, MuntzSDKError
from ..gram.distance import distance_to_span, distance_via_float_gram, distance_via_gram_ratio
from ..gram.projection import project_l2
from ..muntz.density import density_check, product_sum_table
from ..muntz.profile import distance_profile
from ..primes.euler import euler_report, euler_table
from ..primes.moments import MomentProvider, MonomialMoments, QuadratureMoments, prime_exponent_distance
from ..weierstrass.iteration import abs_approximant, sqrt_error_certificate
from ..weierstrass.lattice import lattice_max_min
from .config import RunConfig, settings_overrides
from .grammar import check_signs, parse_interval, parse_number, parse_numbers, parse_polynomial, parse_sequence
from .output import CommandResult, OutputFormat, render, write_report


logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

Handler = Callable[[argparse.Namespace, RunConfig], CommandResult]


def _float_list(text: str, config: RunConfig, name: str = "lambdas") -> List[float]:
    values = parse_numbers(text)
    check_signs(values, config.allow_negative_exponents, name)
    return [float(v) for v in values]


def _target(text: str, config: RunConfig) -> float:
    q = parse_number(text)
    check_signs([q], config.allow_negative_exponents, "q")
    return float(q)


# approx


def _approx_sqrt(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    certificate = sqrt_error_certificate(args.n, config.grid(), slack=config.certificate_slack)
    return CommandResult(payload=certificate)


def _approx_abs(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    if args.method == "muntz":
        if args.a != 1.0:
            raise InputRejectedError("The Müntz |t| approximant lives on [-1, 1]; use --a 1", details={"a": args.a})
        approximant = abs_via_muntz(args.n)
        certificate = approximant.certificate(config.grid(-1.0, 1.0), slack=config.constructive_slack)
        polynomial = approximant.polynomial
    else:
        iteration = abs_approximant(args.a, args.n, coefficient_cutoff=config.coefficient_cutoff)
        certificate = iteration.certificate(config.grid(-args.a, args.a), slack=config.certificate_slack)
        polynomial = iteration.polynomial if args.coefficients else None

    payload = {**certificate.model_dump(), "a": args.a, "method": args.method}
    if args.coefficients and polynomial is not None:
        payload["polynomial"] = polynomial.to_json_terms()
    return CommandResult(payload=payload)


# lattice


def _lattice_maxmin(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    domain = parse_interval(args.domain)
    f = parse_polynomial(args.f, domain)
    g = parse_polynomial(args.g, domain)
    grid = Grid.uniform(domain.lo, domain.hi, 1 if domain.lo == domain.hi else config.grid_size)
    approximants = lattice_max_min(f, g, args.n, grid=grid)
    certificate = approximants.certificate(grid, slack=config.certificate_slack)
    return CommandResult(payload={**certificate.model_dump(), "sup_difference": approximants.a})


# dist


def _dist_span(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    q, lambdas = _target(args.q, config), _float_list(args.lambdas, config)
    if args.method == "gram-ratio":
        return CommandResult(payload=distance_via_float_gram(q, lambdas, threshold=config.ill_conditioned_threshold))
    return CommandResult(payload=distance_to_span(q, lambdas, threshold=config.ill_conditioned_threshold))


def _dist_profile(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    rows = distance_profile(_target(args.q, config), parse_sequence(args.sequence, args.start), args.n_max)
    return CommandResult(payload=rows, rows=rows)


def _dist_gram_oracle(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    q = parse_number(args.q)
    check_signs([q], config.allow_negative_exponents, "q")
    lambdas = parse_numbers(args.lambdas)
    check_signs(lambdas, config.allow_negative_exponents)
    return CommandResult(payload=distance_via_gram_ratio(q, lambdas, limit=config.gram_oracle_limit))


# density


def _density_check(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    verdict = density_check(parse_sequence(args.sequence, args.start), args.n_max)
    return CommandResult(payload=verdict, rows=verdict.evidence)


def _density_table(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    q = _target(args.q, config)
    if not q > 0:
        raise InputRejectedError("The product table needs q > 0", details={"q": q})
    values = parse_sequence(args.sequence, args.start).positive_values(args.n_max)
    rows = product_sum_table([value / q for value in values], args.n_max)
    return CommandResult(payload=rows, rows=rows)


# muntz


def _muntz_construct(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    approximant = qn_coefficients(_target(args.q, config), _float_list(args.lambdas, config))
    grid_sup = approximant.grid_sup(config.grid())
    if grid_sup > approximant.bound + config.constructive_slack:
        logger.error(f"‖Q_{approximant.n}‖ estimate {grid_sup:.17g} exceeds the bound {approximant.bound:.17g}")
        raise CertificateError(
            f"Grid sup of Q_{approximant.n} exceeds ∏|1 - q/λ_i| = {approximant.bound:.6g}",
            details={"grid_sup": grid_sup, "bound": approximant.bound},
        )
    return CommandResult(payload={**approximant.model_dump(by_alias=True), "grid_sup": grid_sup})


def _muntz_report(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    rows = qn_convergence_report(
        _target(args.q, config),
        parse_sequence(args.sequence, args.start),
        args.n_max,
        config.grid(),
        slack=config.constructive_slack,
    )
    return CommandResult(payload=rows, rows=rows)


# primes


def _check_sieve(n: int, config: RunConfig) -> None:
    if n > config.sieve_limit:
        raise InputRejectedError(
            f"n = {n} exceeds the sieve limit {config.sieve_limit}", details={"n": n, "limit": config.sieve_limit}
        )


def _primes_euler(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    _check_sieve(args.n, config)
    if args.table:
        rows = euler_table(args.n, exact=args.exact, limit=config.exact_euler_limit)
        return CommandResult(payload=rows, rows=rows)
    return CommandResult(payload=euler_report(args.n, exact=args.exact, limit=config.exact_euler_limit))


def _primes_span(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    _check_sieve(args.n, config)
    return CommandResult(payload=prime_exponent_distance(_target(args.q, config), args.n))


# project


def _project(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    q = _target(args.q, config)
    lambdas = _float_list(args.lambdas, config)
    target = MonomialMoments(q)
    provider: MomentProvider = target
    if args.quadrature:
        provider = QuadratureMoments(lambda x: x**q, config.quadrature)
    moments = [provider.moment(exponent) for exponent in lambdas]
    result = project_l2(
        moments, lambdas, norm_squared=target.norm_squared(), threshold=config.ill_conditioned_threshold
    )
    return CommandResult(payload=result)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("output and tolerances")
    group.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="Report format (default: json)",
    )
    group.add_argument(
        "--output", type=Path, default=None, help="Write the report to this file; relative to MUNTZ_OUTPUT_DIR if set"
    )
    group.add_argument("--grid-size", type=int, default=None, help="Evaluation grid size (default: 1001)")
    group.add_argument("--slack", type=float, default=None, help="Slack of Weierstrass certificates (default: 1e-12)")
    group.add_argument(
        "--muntz-slack", type=float, default=None, help="Slack of constructive Müntz bounds (default: 1e-9)"
    )
    group.add_argument(
        "--allow-negative-exponents",
        action="store_const",
        const=True,
        default=None,
        help="Accept exponents in (-1/2, 0) where the L² theory allows them",
    )
    group.add_argument("--config", type=Path, default=None, help="TOML file with default settings")
    group.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Log level on standard error (default: WARNING)",
    )
    return common


def _sequence_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sequence", required=True, help="i, a*i+b, i^k, primes, a list, or @file")
    parser.add_argument("--start", type=int, default=None, help="First index of a symbolic family")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with all subcommands; unknown flags are rejected."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="muntz",
        description="Certified Weierstrass and Müntz approximation diagnostics",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def leaf(group: argparse._SubParsersAction, name: str, handler: Handler, summary: str) -> argparse.ArgumentParser:
        sub = group.add_parser(name, parents=[common], help=summary, description=summary)
        sub.set_defaults(handler=handler)
        return sub

    approx = commands.add_parser("approx", help="Weierstrass √t and |t| approximants").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(approx, "sqrt", _approx_sqrt, "Certify the √t iterate p_n on [0, 1]")
    sub.add_argument("--n", type=int, required=True, help="Iteration index, at least 1")
    sub = leaf(approx, "abs", _approx_abs, "Certify a polynomial approximant of |t| on [-a, a]")
    sub.add_argument("--a", type=float, default=1.0, help="Half-width of the interval (default: %(default)s)")
    sub.add_argument("--n", type=int, required=True, help="Iteration index or number of even exponents")
    sub.add_argument(
        "--method", choices=["iteration", "muntz"], default="iteration", help="Construction (default: %(default)s)"
    )
    sub.add_argument("--coefficients", action="store_true", help="Include the polynomial coefficients")

    lattice = commands.add_parser("lattice", help="Lattice operations on polynomials").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(lattice, "maxmin", _lattice_maxmin, "Approximate max{f, g} and min{f, g} within a/n")
    sub.add_argument("--f", required=True, help="Terms c:lambda,... with integer exponents")
    sub.add_argument("--g", required=True, help="Terms c:lambda,... with integer exponents")
    sub.add_argument("--n", type=int, required=True, help="Iteration index, at least 1")
    sub.add_argument("--domain", default="0,1", help="Interval lo,hi (default: %(default)s)")

    dist = commands.add_parser("dist", help="L² distances to monomial spans").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(dist, "span", _dist_span, "Distance from x^q to span{x^λ}")
    sub.add_argument("--q", required=True, help="Target exponent")
    sub.add_argument("--lambdas", required=True, help="Comma-separated exponents")
    sub.add_argument(
        "--method",
        choices=["closed-form", "gram-ratio"],
        default="closed-form",
        help="Closed-form product or floating-point Gram determinant ratio (default: %(default)s)",
    )
    sub = leaf(dist, "profile", _dist_profile, "Distances δ_n for n = 0..n_max")
    sub.add_argument("--q", required=True, help="Target exponent, positive")
    sub.add_argument("--n-max", type=int, required=True, help="Last index")
    _sequence_options(sub)
    sub = leaf(dist, "gram-oracle", _dist_gram_oracle, "Distance from exact rational Gram determinants")
    sub.add_argument("--q", required=True, help="Target exponent, a decimal or p/q")
    sub.add_argument("--lambdas", required=True, help="Comma-separated exponents, decimals or p/q")

    density = commands.add_parser("density", help="Müntz density diagnostics").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(density, "check", _density_check, "Decide density of span{x^λ_i} in C[0, 1]")
    sub.add_argument("--n-max", type=int, default=100, help="Last index of the evidence table (default: %(default)s)")
    _sequence_options(sub)
    sub = leaf(density, "table", _density_table, "Products ∏(1 - q/λ_i) against sums Σ q/λ_i")
    sub.add_argument("--q", default="1", help="Scale q; every positive λ_i must exceed it (default: %(default)s)")
    sub.add_argument("--n-max", type=int, required=True, help="Number of rows")
    _sequence_options(sub)

    muntz = commands.add_parser("muntz", help="Constructive Müntz approximants Q_n").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(muntz, "construct", _muntz_construct, "Coefficients of Q_n with its certified bound")
    sub.add_argument("--q", required=True, help="Target exponent, non-negative")
    sub.add_argument("--lambdas", required=True, help="Comma-separated positive exponents")
    sub = leaf(muntz, "report", _muntz_report, "Bounds and grid sups of Q_0..Q_n_max")
    sub.add_argument("--q", required=True, help="Target exponent, non-negative")
    sub.add_argument("--n-max", type=int, required=True, help="Largest n")
    _sequence_options(sub)

    primes = commands.add_parser("primes", help="Prime diagnostics").add_subparsers(
        dest="action", required=True, metavar="ACTION"
    )
    sub = leaf(primes, "euler", _primes_euler, "Harmonic sums against prime products")
    sub.add_argument("--n", type=int, required=True, help="Upper index, at least 2")
    sub.add_argument("--exact", action="store_true", help="Rational arithmetic")
    sub.add_argument("--table", action="store_true", help="One row per n = 2..N")
    sub = leaf(primes, "span", _primes_span, "Distance from x^q to span{1, x^p : p ≤ n}")
    sub.add_argument("--q", required=True, help="Target exponent, positive and not prime")
    sub.add_argument("--n", type=int, required=True, help="Largest prime considered")

    sub = commands.add_parser(
        "project", parents=[common], help="Least-squares projection of x^q onto span{x^λ}"
    )
    sub.set_defaults(handler=_project)
    sub.add_argument("--q", required=True, help="Target exponent")
    sub.add_argument("--lambdas", required=True, help="Comma-separated exponents")
    sub.add_argument("--quadrature", action="store_true", help="Compute the moments by quadrature")
    return parser


def _load_settings(args: argparse.Namespace) -> DensitySettings:
    overrides = settings_overrides(
        grid_size=args.grid_size,
        certificate_slack=args.slack,
        constructive_slack=args.muntz_slack,
        allow_negative_exponents=args.allow_negative_exponents,
        log_level=args.log_level,
    )
    if args.config is not None:
        return DensitySettings.from_toml(args.config, **overrides)
    return DensitySettings.load(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else ExitCode.REJECTED

    try:
        settings = _load_settings(args)
        logging.basicConfig(level=settings.log_level, stream=sys.stderr, format=LOG_FORMAT)
        config = RunConfig.from_settings(settings, OutputFormat(args.format), args.output)
        logger.info(f"Running {args.command} {getattr(args, 'action', '')}".rstrip())
        result = args.handler(args, config)
        write_report(render(result, config.output_format), config.output_path, sys.stdout)
    except MuntzSDKError as e:
        logger.debug(f"{e.code}: {e.details}")
        print(f"muntz: error [{e.code}]: {e}", file=sys.stderr)
        return int(e.exit_code)
    return ExitCode.OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
