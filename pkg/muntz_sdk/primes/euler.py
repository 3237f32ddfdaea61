"""Partial sums and prime products behind the divergence of Σ 1/p.

Every square-free factorization argument reduces to the inequality

    Σ_{i≤n} 1/i ≤ ∏_{p≤n} (1 + 1/p) · Σ_{i≤n} 1/i²

which is checked here directly, in exact rationals or in floating point.
"""

import logging
import math
from fractions import Fraction
from typing import List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from typing_extensions import Annotated, Doc

from ..errors.exceptions import InputRejectedError
from .sieve import primes_up_to


logger = logging.getLogger(__name__)

EXACT_EULER_LIMIT = 1000
SIX_OVER_PI_SQUARED = 6.0 / math.pi**2

Number = Union[Fraction, float]


class EulerReport(BaseModel):
    """Partial sums and products up to n.

    `zeta2_bound_holds` checks the consequence ∏_{p≤n} (1 + 1/p) ≥ (6/π²)·Σ_{i≤n} 1/i,
    which follows from Σ 1/i² < π²/6.
    """

    n: int = Field(..., ge=2)
    exact: bool
    harmonic_partial: Number = Field(..., alias="harmonic")
    product_plus: Number
    product_minus: Number
    basel_partial: Number = Field(..., alias="basel")
    inequality_holds: bool
    zeta2_bound_holds: bool

    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=True)


def _report(
    n: int, exact: bool, harmonic: Number, plus: Number, minus: Number, basel: Number
) -> EulerReport:
    return EulerReport(
        n=n,
        exact=exact,
        harmonic_partial=harmonic,
        product_plus=plus,
        product_minus=minus,
        basel_partial=basel,
        inequality_holds=bool(harmonic <= plus * basel),
        zeta2_bound_holds=bool(float(plus) >= SIX_OVER_PI_SQUARED * float(harmonic)),
    )


def _check_bounds(n: int, exact: bool, limit: int) -> None:
    if n < 2:
        raise InputRejectedError("n must be at least 2", details={"n": n})
    if exact and n > limit:
        raise InputRejectedError(
            f"Exact mode is limited to n ≤ {limit}, got {n}", details={"n": n, "limit": limit}
        )


def euler_report(
    n: Annotated[int, Doc("Upper index, at least 2")],
    exact: Annotated[bool, Doc("Use rational arithmetic")] = False,
    limit: Annotated[int, Doc("Largest n accepted in exact mode")] = EXACT_EULER_LIMIT,
) -> EulerReport:
    """Compute Σ 1/i, ∏(1 + 1/p), ∏(1 - 1/p) and Σ 1/i² up to n, and check the Euler inequality.

    Float mode accumulates the products as sums of logarithms.

    Raises:
        InputRejectedError: If n < 2, or exact mode is requested beyond `limit`.
    """
    _check_bounds(n, exact, limit)
    primes = primes_up_to(n)
    logger.info(f"Euler report for n = {n} ({'exact' if exact else 'float'}, {len(primes)} primes)")
    if exact:
        return _report(
            n,
            True,
            sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0)),
            math.prod((Fraction(p + 1, p) for p in primes), start=Fraction(1)),
            math.prod((Fraction(p - 1, p) for p in primes), start=Fraction(1)),
            sum((Fraction(1, i * i) for i in range(1, n + 1)), Fraction(0)),
        )
    return _report(
        n,
        False,
        math.fsum(1.0 / i for i in range(1, n + 1)),
        math.exp(math.fsum(math.log1p(1.0 / p) for p in primes)),
        math.exp(math.fsum(math.log1p(-1.0 / p) for p in primes)),
        math.fsum(1.0 / (i * i) for i in range(1, n + 1)),
    )


def euler_table(
    n_max: Annotated[int, Doc("Last row, at least 2")],
    exact: Annotated[bool, Doc("Use rational arithmetic")] = False,
    limit: Annotated[int, Doc("Largest n_max accepted in exact mode")] = EXACT_EULER_LIMIT,
) -> List[EulerReport]:
    """Euler reports for every n = 2..n_max, accumulated in one pass.

    Raises:
        InputRejectedError: If n_max < 2, or exact mode is requested beyond `limit`.
    """
    _check_bounds(n_max, exact, limit)
    primes = set(primes_up_to(n_max))
    logger.info(f"Euler table up to n = {n_max} ({'exact' if exact else 'float'})")

    if exact:
        rows = []
        harmonic, basel, plus, minus = Fraction(0), Fraction(0), Fraction(1), Fraction(1)
        for i in range(1, n_max + 1):
            harmonic += Fraction(1, i)
            basel += Fraction(1, i * i)
            if i in primes:
                plus *= Fraction(i + 1, i)
                minus *= Fraction(i - 1, i)
            if i >= 2:
                rows.append(_report(i, True, harmonic, plus, minus, basel))
        return rows

    i = np.arange(1, n_max + 1, dtype=float)
    is_prime = np.isin(np.arange(1, n_max + 1), np.fromiter(primes, dtype=np.int64, count=len(primes)))
    harmonic_values = np.cumsum(1.0 / i)
    basel_values = np.cumsum(1.0 / (i * i))
    plus_values = np.exp(np.cumsum(np.where(is_prime, np.log1p(1.0 / i), 0.0)))
    with np.errstate(divide="ignore"):
        # log1p(-1) at i = 1 is masked out
        minus_values = np.exp(np.cumsum(np.where(is_prime, np.log1p(-1.0 / i), 0.0)))
    return [
        _report(k + 1, False, *(float(v[k]) for v in (harmonic_values, plus_values, minus_values, basel_values)))
        for k in range(1, n_max)
    ]
