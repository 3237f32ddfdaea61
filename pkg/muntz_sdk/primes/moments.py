"""Prime-exponent Müntz spans: distances to them and projections onto them."""

import logging
import math
from typing import Callable, Optional, Protocol, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from ..core.quadrature import DEFAULT_SCHEME, QuadratureScheme, integrate
from ..errors.exceptions import InputRejectedError
from ..gram.distance import distance_to_span
from ..gram.projection import project_l2
from ..gram.schemas import DistanceReport
from .sieve import primes_up_to


logger = logging.getLogger(__name__)

MOMENT_TOLERANCE = 1e-10


def prime_exponents(n: int) -> Tuple[float, ...]:
    """The exponents 0 and every prime p ≤ n."""
    if n < 0:
        raise InputRejectedError("n must be non-negative", details={"n": n})
    return (0.0, *(float(p) for p in primes_up_to(n)))


def _is_prime(value: float) -> bool:
    if not float(value).is_integer() or value < 2:
        return False
    k = int(value)
    return all(k % d for d in range(2, math.isqrt(k) + 1))


def prime_exponent_distance(q: float, n: int) -> DistanceReport:
    """L² distance from x^q to span{1, x^p : p prime, p ≤ n}.

    Raises:
        InputRejectedError: If q ≤ 0 or q is a prime (x^q would lie in the span for large n).
    """
    if not q > 0 or not math.isfinite(q):
        raise InputRejectedError("Target exponent q must be positive", details={"q": q})
    if _is_prime(q):
        raise InputRejectedError(f"q = {q:g} is prime and collides with the span exponents", details={"q": q})
    return distance_to_span(q, prime_exponents(n))


class MomentProvider(Protocol):
    """Source of the L²[0,1] moments ⟨f, x^λ⟩ and of ⟨f, f⟩."""

    def moment(self, exponent: float) -> float: ...

    def norm_squared(self) -> float: ...


class MonomialMoments:
    """Closed-form moments of f(x) = x^q."""

    def __init__(self, q: float) -> None:
        if not q > -0.5:
            raise InputRejectedError("x^q lies in L²[0,1] only for q > -1/2", details={"q": q})
        self.q = q

    def moment(self, exponent: float) -> float:
        return 1.0 / (self.q + exponent + 1.0)

    def norm_squared(self) -> float:
        return 1.0 / (2.0 * self.q + 1.0)


class QuadratureMoments:
    """Moments of a vectorized function f, computed with the composite Gauss-Legendre rule."""

    def __init__(
        self, f: Callable[[NDArray[np.float64]], object], scheme: QuadratureScheme = DEFAULT_SCHEME
    ) -> None:
        self.f = f
        self.scheme = scheme

    def moment(self, exponent: float) -> float:
        return integrate(lambda x: np.asarray(self.f(x), dtype=float) * x**exponent, 0.0, 1.0, self.scheme)

    def norm_squared(self) -> float:
        return integrate(lambda x: np.asarray(self.f(x), dtype=float) ** 2, 0.0, 1.0, self.scheme)


class MomentVanishingReport(BaseModel):
    """Projection of f onto span{1, x^p : p ≤ n}.

    When every moment vanishes the projection is 0 and the residual equals
    ⟨f, f⟩; a nonzero norm then contradicts the density of the prime span.
    """

    n: int
    exponents: Tuple[float, ...] = Field(..., alias="lambdas")
    residual_squared: float
    norm_squared: float
    moments_vanish: bool
    contradiction: bool

    model_config = ConfigDict(frozen=True, populate_by_name=True)


def moment_vanishing_residual(
    f_moments: MomentProvider, n: int, tolerance: float = MOMENT_TOLERANCE, threshold: Optional[float] = None
) -> MomentVanishingReport:
    """Squared residual of the L² projection of f onto span{1, x^p : p prime, p ≤ n}.

    The residual tends to 0 as n grows for every f in L²[0,1]. If all moments
    vanish while ⟨f, f⟩ does not, the data contradict density and a warning is logged.

    Args:
        f_moments: Provider of ⟨f, x^λ⟩ and ⟨f, f⟩.
        n: Largest prime considered.
        tolerance: Moments and norms below this count as zero.
        threshold: Gram condition estimate treated as singular; the projection default otherwise.

    Raises:
        InputRejectedError: If n < 0.
        IllConditionedError: If the Gram system is numerically singular.
        IntegrationError: If a quadrature sample is not finite.
    """
    exponents = prime_exponents(n)
    moments = [f_moments.moment(exponent) for exponent in exponents]
    norm_squared = f_moments.norm_squared()
    options = {} if threshold is None else {"threshold": threshold}
    projection = project_l2(moments, exponents, norm_squared=norm_squared, **options)
    residual = projection.residual_squared if projection.residual_squared is not None else norm_squared

    vanish = all(abs(m) <= tolerance for m in moments)
    contradiction = vanish and norm_squared > tolerance
    if contradiction:
        logger.warning(f"All {len(moments)} moments vanish but ⟨f, f⟩ = {norm_squared:.6g}, contradicting density")
    logger.info(f"Prime-span residual² for n = {n}: {residual:.6g}")
    return MomentVanishingReport(
        n=n,
        exponents=exponents,
        residual_squared=residual,
        norm_squared=norm_squared,
        moments_vanish=vanish,
        contradiction=contradiction,
    )
