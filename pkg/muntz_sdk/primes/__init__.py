from .euler import EulerReport, euler_report, euler_table
from .moments import (
    MomentProvider,
    MomentVanishingReport,
    MonomialMoments,
    QuadratureMoments,
    moment_vanishing_residual,
    prime_exponent_distance,
    prime_exponents,
)
from .sieve import primes_up_to


__all__ = [
    "EulerReport",
    "MomentProvider",
    "MomentVanishingReport",
    "MonomialMoments",
    "QuadratureMoments",
    "euler_report",
    "euler_table",
    "moment_vanishing_residual",
    "prime_exponent_distance",
    "prime_exponents",
    "primes_up_to",
]
