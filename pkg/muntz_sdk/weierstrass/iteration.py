"""The √t iteration p_{n+1} = p_n + (t - p_n²)/2 and the |t| approximants built from it."""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union, overload

import mpmath
import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from typing_extensions import Annotated, Doc

from ..core.grid import Grid
from ..core.polynomial import GeneralizedPolynomial
from ..errors.exceptions import CertificateError, InputRejectedError
from .schemas import BoundViolation, ErrorCertificate


logger = logging.getLogger(__name__)

COEFFICIENT_CUTOFF = 12
CERTIFICATE_SLACK = 1e-12


def _iterate(t: NDArray[np.float64], n: int) -> NDArray[np.float64]:
    p = np.zeros_like(t)
    for _ in range(n):
        p = p + 0.5 * (t - p * p)
    return p


@lru_cache(maxsize=16)
def _materialize(n: int) -> Tuple[Tuple[int, ...], int]:
    """Integer numerators P_n and exponent D_n with p_n = P_n / 2^{D_n}.

    From p = P/2^D the recursion gives P' = 2^{D+1}·P + 2^{2D}·t - P² over 2^{2D+1}.
    """
    numerators = np.zeros(1, dtype=object)
    shift = 0
    for _ in range(n):
        squared = np.convolve(numerators, numerators)
        following = np.zeros(max(len(squared), 2), dtype=object)
        following[: len(squared)] -= squared
        following[: len(numerators)] += numerators * (1 << (shift + 1))
        following[1] += 1 << (2 * shift)
        numerators, shift = following, 2 * shift + 1
    return tuple(int(c) for c in numerators), shift


def _as_points(t: Union[float, ArrayLike]) -> NDArray[np.float64]:
    points = np.asarray(t, dtype=float)
    if not np.isfinite(points).all():
        raise InputRejectedError("Evaluation points must be finite")
    return points


class SqrtIterate(BaseModel):
    """The n-th iterate p_n of p_0 = 0, p_{n+1}(t) = p_n(t) + (t - p_n(t)²)/2.

    Calling the iterate runs the recursion pointwise, which is stable on [0, 1]
    because every intermediate value stays in [0, 1]. For n up to the
    coefficient cutoff the exact dyadic coefficients are kept as integer
    numerators over the common denominator 2^(2^n - 1).
    """

    n: int = Field(..., ge=0)
    numerators: Optional[Tuple[int, ...]] = None
    denominator_exponent: int = 0

    model_config = ConfigDict(frozen=True)

    @property
    def materialized(self) -> bool:
        return self.numerators is not None

    @overload
    def __call__(self, t: float) -> float: ...

    @overload
    def __call__(self, t: NDArray[np.float64]) -> NDArray[np.float64]: ...

    def __call__(self, t: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        points = _as_points(t)
        values = _iterate(points, self.n)
        return float(values) if values.ndim == 0 else values

    def _require_coefficients(self) -> Tuple[int, ...]:
        if self.numerators is None:
            raise InputRejectedError(
                f"Coefficients of p_{self.n} were not materialized", details={"n": self.n}
            )
        return self.numerators

    @property
    def exact_coefficients(self) -> Tuple[Fraction, ...]:
        """Coefficients c_0, c_1, ... of p_n = Σ c_k t^k as exact fractions."""
        denominator = 1 << self.denominator_exponent
        return tuple(Fraction(c, denominator) for c in self._require_coefficients())

    @property
    def polynomial(self) -> GeneralizedPolynomial:
        """p_n as a generalized polynomial on [0, 1] with coefficients rounded to floats."""
        terms = [(float(c), float(k)) for k, c in enumerate(self.exact_coefficients) if c]
        return GeneralizedPolynomial.from_terms(terms)

    def exact_value(self, t: Fraction) -> Fraction:
        """Evaluate the exact coefficients at a rational point (Horner)."""
        value = Fraction(0)
        for c in reversed(self.exact_coefficients):
            value = value * t + c
        return value

    def evaluate_coefficients(self, t: float) -> float:
        """Evaluate the exact coefficients at a float point in extended precision.

        The working precision grows with the largest coefficient, so cancellation
        among the alternating terms does not reach the returned double.
        """
        numerators = self._require_coefficients()
        magnitude = max(abs(c).bit_length() for c in numerators) - self.denominator_exponent
        with mpmath.workprec(80 + max(magnitude, 0)):
            coefficients = [mpmath.ldexp(mpmath.mpf(c), -self.denominator_exponent) for c in reversed(numerators)]
            return float(mpmath.polyval(coefficients, mpmath.mpf(t)))


def sqrt_iterate(
    n: Annotated[int, Doc("Iteration index, at least 0")],
    coefficient_cutoff: Annotated[int, Doc("Largest n with exactly materialized coefficients")] = COEFFICIENT_CUTOFF,
) -> SqrtIterate:
    """Build the n-th √t iterate.

    Raises:
        InputRejectedError: If n is negative.
    """
    if n < 0:
        raise InputRejectedError("Iteration index n must be non-negative", details={"n": n})
    if n > coefficient_cutoff:
        return SqrtIterate(n=n)
    numerators, shift = _materialize(n)
    logger.debug(f"Materialized p_{n}: degree {len(numerators) - 1}, denominator 2^{shift}")
    return SqrtIterate(n=n, numerators=numerators, denominator_exponent=shift)


def _check_unit_grid(grid: Grid) -> None:
    if grid.lo < 0 or grid.hi > 1:
        raise InputRejectedError(
            f"Grid [{grid.lo}, {grid.hi}] must lie inside [0, 1]", details={"grid": [grid.lo, grid.hi]}
        )


def _certify(
    n: int,
    points: NDArray[np.float64],
    error: NDArray[np.float64],
    pointwise: NDArray[np.float64],
    analytic_bound: float,
    grid: Grid,
    slack: float,
    strict: bool,
) -> ErrorCertificate:
    failed = (error < -slack) | (error > pointwise + slack)
    violations = [
        BoundViolation(t=float(points[i]), error=float(error[i]), bound=float(pointwise[i]))
        for i in np.flatnonzero(failed)
    ]
    estimate = float(np.max(np.abs(error)))
    certificate = ErrorCertificate(
        n=n,
        analytic_bound=analytic_bound,
        grid_estimate=estimate,
        violations=violations,
        slack=slack,
        grid=grid,
    )
    if strict and not certificate.holds:
        logger.error(
            f"Bound violated for n = {n}: estimate {estimate:.17g}, bound {analytic_bound:.17g}, "
            f"{len(violations)} pointwise violations"
        )
        raise CertificateError(
            f"Proven bound violated at {len(violations)} grid points for n = {n}",
            details=certificate.model_dump(),
        )
    return certificate


def sqrt_error_certificate(
    n: Annotated[int, Doc("Iteration index, at least 1")],
    grid: Annotated[Grid, Doc("Evaluation points inside [0, 1]")],
    slack: Annotated[float, Doc("Numeric slack per iteration step")] = CERTIFICATE_SLACK,
    strict: Annotated[bool, Doc("Raise CertificateError instead of only recording violations")] = True,
) -> ErrorCertificate:
    """Check 0 ≤ √t - p_n(t) ≤ 2√t/(2 + n√t) on a grid, and report the sup estimate against 2/n.

    The slack scales with n since every step adds one rounding error.

    Returns:
        The certificate; `violations` lists every failing grid point.

    Raises:
        InputRejectedError: If n < 1 or the grid leaves [0, 1].
        CertificateError: If `strict` and a bound fails beyond slack.
    """
    if n < 1:
        raise InputRejectedError("Certificates need n >= 1", details={"n": n})
    _check_unit_grid(grid)
    logger.info(f"Certifying p_{n} on {grid.count} grid points")

    t = grid.array
    root = np.sqrt(t)
    error = root - _iterate(t, n)
    pointwise = 2.0 * root / (2.0 + n * root)
    return _certify(n, t, error, pointwise, 2.0 / n, grid, slack * n, strict)


class AbsApproximant(BaseModel):
    """q_n(t) = a·p_n(t²/a²), approximating |t| on [-a, a] within 2a/n.

    q_n is even by construction: t enters only through t·t.
    """

    a: float = Field(..., gt=0.0)
    iterate: SqrtIterate

    model_config = ConfigDict(frozen=True)

    @property
    def n(self) -> int:
        return self.iterate.n

    @property
    def analytic_bound(self) -> float:
        return 2.0 * self.a / self.n

    def evaluate(self, t: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        """Evaluate without the [-a, a] domain check; the bound only holds inside it."""
        points = _as_points(t)
        values = self.a * _iterate(points * points / (self.a * self.a), self.n)
        return float(values) if values.ndim == 0 else values

    def __call__(self, t: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        points = _as_points(t)
        if (np.abs(points) > self.a).any():
            raise InputRejectedError(
                f"q_n is certified on [-{self.a}, {self.a}] only", details={"a": self.a}
            )
        return self.evaluate(points)

    @property
    def polynomial(self) -> GeneralizedPolynomial:
        """q_n on [-a, a]: the coefficient c_k of p_n becomes c_k·a^(1-2k) at exponent 2k."""
        scale = Fraction(self.a)
        try:
            terms = [
                (float(c * scale ** (1 - 2 * k)), float(2 * k))
                for k, c in enumerate(self.iterate.exact_coefficients)
                if c
            ]
        except OverflowError as e:
            raise InputRejectedError(
                f"Coefficients of q_{self.n} overflow for a = {self.a}", details={"a": self.a}, cause=e
            )
        return GeneralizedPolynomial.from_terms(terms, (-self.a, self.a))

    def certificate(
        self, grid: Grid, slack: float = CERTIFICATE_SLACK, strict: bool = True
    ) -> ErrorCertificate:
        """Check 0 ≤ |t| - q_n(t) ≤ 2|t|/(2 + n|t|/a) on a grid inside [-a, a].

        Raises:
            InputRejectedError: If the grid leaves [-a, a].
            CertificateError: If `strict` and a bound fails beyond slack.
        """
        if grid.lo < -self.a or grid.hi > self.a:
            raise InputRejectedError(
                f"Grid [{grid.lo}, {grid.hi}] must lie inside [-{self.a}, {self.a}]",
                details={"grid": [grid.lo, grid.hi], "a": self.a},
            )
        t = grid.array
        magnitude = np.abs(t)
        error = magnitude - np.asarray(self.evaluate(t))
        pointwise = 2.0 * magnitude / (2.0 + self.n * magnitude / self.a)
        return _certify(self.n, t, error, pointwise, self.analytic_bound, grid, slack * self.n * self.a, strict)


def abs_approximant(
    a: Annotated[float, Doc("Half-width of the interval [-a, a]")],
    n: Annotated[int, Doc("Iteration index, at least 1")],
    coefficient_cutoff: Annotated[int, Doc("Largest n with exactly materialized coefficients")] = COEFFICIENT_CUTOFF,
) -> AbsApproximant:
    """Build the |t| approximant q_n(t) = a·p_n(t²/a²) with uniform error at most 2a/n on [-a, a].

    Raises:
        InputRejectedError: If a ≤ 0 or n < 1.
    """
    if not a > 0 or not np.isfinite(a):
        raise InputRejectedError("Half-width a must be positive", details={"a": a})
    if n < 1:
        raise InputRejectedError("Iteration index n must be at least 1", details={"n": n})
    logger.info(f"Building |t| approximant with a = {a}, n = {n}")
    return AbsApproximant(a=a, iterate=sqrt_iterate(n, coefficient_cutoff))
