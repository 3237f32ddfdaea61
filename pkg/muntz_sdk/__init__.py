try:
    from importlib.metadata import version

    __version__ = version("muntz-sdk")
except Exception:  # pragma: no cover
    # Fallback for local development
    __version__ = "0.0.0.dev0"  # pragma: no cover

from .constructive import abs_via_muntz, qn_coefficients, qn_convergence_report, qn_oracle
from .core import ExponentSequence, GeneralizedPolynomial, Grid, integrate, sup_norm_estimate
from .gram import (
    cauchy_determinant,
    distance_to_span,
    distance_via_float_gram,
    distance_via_gram_ratio,
    gram_determinant_bruteforce,
    project_l2,
)
from .muntz import density_check, distance_profile, product_sum_table
from .primes import euler_report, moment_vanishing_residual, prime_exponent_distance, primes_up_to
from .weierstrass import abs_approximant, lattice_max_min, sqrt_error_certificate, sqrt_iterate

__all__ = [
    "ExponentSequence",
    "GeneralizedPolynomial",
    "Grid",
    "abs_approximant",
    "abs_via_muntz",
    "cauchy_determinant",
    "density_check",
    "distance_profile",
    "distance_to_span",
    "distance_via_float_gram",
    "distance_via_gram_ratio",
    "euler_report",
    "gram_determinant_bruteforce",
    "integrate",
    "lattice_max_min",
    "moment_vanishing_residual",
    "prime_exponent_distance",
    "primes_up_to",
    "product_sum_table",
    "project_l2",
    "qn_coefficients",
    "qn_convergence_report",
    "qn_oracle",
    "sqrt_error_certificate",
    "sqrt_iterate",
    "sup_norm_estimate",
]
