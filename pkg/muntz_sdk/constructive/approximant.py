"""Explicit Müntz approximants Q_n(x) = x^q - Σ a_{n,i} x^{λ_i} with the sup-norm bound ∏|1 - q/λ_i|.

Q_0 = x^q and Q_n(x) = (λ_n - q)·x^{λ_n}·∫_x^1 Q_{n-1}(t)·t^{-1-λ_n} dt. Integrating
term by term gives the coefficient recurrence

    a_{n,i} = a_{n-1,i}·(λ_n - q)/(λ_n - λ_i)    for i < n
    a_{n,n} = 1 - Σ_{i<n} a_{n,i}

so that Q_n(1) = 0. Coefficients are kept as exact fractions (every float is a
rational); evaluation runs in extended precision because the a_{n,i} grow
large and alternate when exponents cluster.
"""

import logging
import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_serializer
from typing_extensions import Annotated, Doc

from ..core.grid import Grid
from ..core.polynomial import GeneralizedPolynomial
from ..core.sequences import ExponentSequence
from ..errors.exceptions import CertificateError, InputRejectedError
from ..weierstrass.schemas import ErrorCertificate
from .schemas import ConvergenceRow


logger = logging.getLogger(__name__)

CONSTRUCTIVE_SLACK = 1e-9
# Below this Σ|a_i|, double precision evaluation loses less than about 1e-12.
FLOAT_SAFE_MAGNITUDE = 1e3


def check_muntz_exponents(q: float, exponents: Iterable[float]) -> Tuple[float, Tuple[float, ...]]:
    """Validate q ≥ 0 and positive, pairwise distinct exponents different from q.

    Raises:
        InputRejectedError: Naming the offending value.
    """
    q = float(q)
    if not math.isfinite(q) or q < 0:
        raise InputRejectedError(f"Target exponent q = {q} must be finite and non-negative", details={"q": q})
    values = tuple(float(v) for v in exponents)
    seen = set()
    for index, value in enumerate(values, start=1):
        if not math.isfinite(value) or value <= 0:
            raise InputRejectedError(
                f"Exponent λ_{index} = {value} must be positive", details={"index": index, "exponent": value}
            )
        if value == q:
            raise InputRejectedError(
                f"Exponent λ_{index} equals q = {q}; the recurrence divides by λ_{index} - q",
                details={"index": index, "q": q},
            )
        if value in seen:
            raise InputRejectedError(
                f"Exponent {value} appears more than once", details={"index": index, "exponent": value}
            )
        seen.add(value)
    return q, values


def _coefficient_steps(q: float, exponents: Sequence[float]) -> Iterator[Tuple[Fraction, ...]]:
    """Yield the coefficients of Q_0, Q_1, ..., Q_len(exponents)."""
    target = Fraction(q)
    lambdas = [Fraction(v) for v in exponents]
    coefficients: List[Fraction] = []
    yield ()
    for k, new in enumerate(lambdas):
        coefficients = [a * (new - target) / (new - lambdas[i]) for i, a in enumerate(coefficients)]
        coefficients.append(1 - sum(coefficients, Fraction(0)))
        logger.debug(f"Q_{k + 1}: {len(coefficients)} coefficients")
        yield tuple(coefficients)


def product_bound(q: float, exponents: Iterable[float]) -> float:
    """∏ |1 - q/λ_i|, with ∏ over no exponents equal to 1."""
    bound = 1.0
    for value in exponents:
        bound *= abs(1.0 - q / value)
    return bound


def _to_mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)


class MuntzApproximant(BaseModel):
    """Q_n(x) = x^q - Σ a_{n,i} x^{λ_i} on [0, 1], with ‖Q_n‖_∞ ≤ ∏|1 - q/λ_i|."""

    q: float
    exponents: Tuple[float, ...] = Field(..., alias="lambdas")
    coefficients: Tuple[Fraction, ...]
    bound: float

    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=True)

    @field_serializer("coefficients")
    def _coefficients_as_floats(self, coefficients: Tuple[Fraction, ...]) -> List[float]:
        return [float(c) for c in coefficients]

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def magnitude(self) -> float:
        """Σ |a_{n,i}|, which governs cancellation when evaluating in floating point."""
        return float(sum((abs(c) for c in self.coefficients), Fraction(0)))

    def _check_points(self, points: NDArray[np.float64]) -> None:
        outside = ~np.isfinite(points) | (points < 0) | (points > 1)
        if outside.any():
            bad = float(points[outside][0])
            raise InputRejectedError(f"Point {bad} lies outside [0, 1]", details={"x": bad})

    def _evaluate_extended(self, points: Iterable[float]) -> List[float]:
        digits = 20 + max(0, math.ceil(math.log10(max(self.magnitude, 1.0))))
        with mpmath.workdps(digits):
            coefficients = [_to_mpf(a) for a in self.coefficients]
            values = []
            for x in points:
                point = mpmath.mpf(x)
                value = mpmath.power(point, self.q)
                for a, exponent in zip(coefficients, self.exponents):
                    value -= a * mpmath.power(point, exponent)
                values.append(float(value))
            return values

    def evaluate(self, x: float) -> float:
        """Q_n(x) in extended precision; the working precision grows with Σ |a_{n,i}|."""
        self._check_points(np.asarray([x], dtype=float))
        return self._evaluate_extended([float(x)])[0]

    def __call__(self, x: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        """Vectorized evaluation; double precision when the coefficients are small enough."""
        points = np.asarray(x, dtype=float)
        self._check_points(points.ravel())
        if self.magnitude <= FLOAT_SAFE_MAGNITUDE:
            values = np.power(points, self.q)
            for a, exponent in zip(self.coefficients, self.exponents):
                values = values - float(a) * np.power(points, exponent)
        else:
            values = np.asarray(self._evaluate_extended(points.ravel().tolist())).reshape(points.shape)
        return float(values) if values.ndim == 0 else values

    def grid_sup(self, grid: Grid) -> float:
        return float(np.max(np.abs(np.asarray(self(grid.array)))))

    @property
    def polynomial(self) -> GeneralizedPolynomial:
        """Q_n as a generalized polynomial with coefficients rounded to floats."""
        terms = [(1.0, self.q)] + [(-float(a), exponent) for a, exponent in zip(self.coefficients, self.exponents)]
        return GeneralizedPolynomial.from_terms(terms)

    def l2_norm(self) -> float:
        """‖Q_n‖ in L²[0,1] from exact Gram inner products ⟨x^a, x^b⟩ = 1/(a + b + 1)."""
        weights = [Fraction(1)] + [-a for a in self.coefficients]
        exponents = [Fraction(self.q)] + [Fraction(v) for v in self.exponents]
        total = Fraction(0)
        for wa, a in zip(weights, exponents):
            for wb, b in zip(weights, exponents):
                total += wa * wb / (a + b + 1)
        return math.sqrt(max(float(total), 0.0))


def qn_coefficients(
    q: Annotated[float, Doc("Target exponent, non-negative")],
    exponents: Annotated[Sequence[float], Doc("λ_1, λ_2, ...: positive, pairwise distinct, none equal to q")],
    n: Annotated[Optional[int], Doc("Number of exponents to use; all of them by default")] = None,
) -> MuntzApproximant:
    """Build Q_n from the exact coefficient recurrence.

    Raises:
        InputRejectedError: If some λ_i equals q, an exponent is invalid, or n exceeds the number of exponents.
    """
    q, values = check_muntz_exponents(q, exponents)
    if n is None:
        n = len(values)
    if not 0 <= n <= len(values):
        raise InputRejectedError(
            f"n = {n} must lie between 0 and the number of exponents {len(values)}",
            details={"n": n, "available": len(values)},
        )
    values = values[:n]
    coefficients = deque(_coefficient_steps(q, values), maxlen=1)[0]
    logger.info(f"Built Q_{n} for q = {q:g}")
    return MuntzApproximant(q=q, exponents=values, coefficients=coefficients, bound=product_bound(q, values))


def qn_convergence_report(
    q: Annotated[float, Doc("Target exponent, not in the sequence")],
    sequence: Annotated[ExponentSequence, Doc("Exponent sequence; its positive values are λ_1, λ_2, ...")],
    n_max: Annotated[int, Doc("Largest n")],
    grid: Annotated[Grid, Doc("Evaluation points inside [0, 1]")],
    slack: Annotated[float, Doc("Numeric slack on the bound check")] = CONSTRUCTIVE_SLACK,
) -> List[ConvergenceRow]:
    """Rows (n, ∏|1 - q/λ_i|, grid sup |Q_n|) for n = 0..n_max, checking the bound on every row.

    Raises:
        InputRejectedError: If q is in the sequence, n_max < 0, or the grid leaves [0, 1].
        CertificateError: If a grid sup exceeds its bound by more than `slack`.
    """
    if n_max < 0:
        raise InputRejectedError("n_max must be non-negative", details={"n_max": n_max})
    if grid.lo < 0 or grid.hi > 1:
        raise InputRejectedError(f"Grid [{grid.lo}, {grid.hi}] must lie inside [0, 1]")
    q, values = check_muntz_exponents(q, sequence.positive_values(n_max))
    logger.info(f"Convergence report for x^{q:g} against {sequence.describe()} up to n = {n_max}")

    rows = []
    for n, coefficients in enumerate(_coefficient_steps(q, values)):
        approximant = MuntzApproximant(
            q=q, exponents=values[:n], coefficients=coefficients, bound=product_bound(q, values[:n])
        )
        sup = approximant.grid_sup(grid)
        if sup > approximant.bound + slack:
            logger.error(f"‖Q_{n}‖ estimate {sup:.17g} exceeds the bound {approximant.bound:.17g}")
            raise CertificateError(
                f"Grid sup of Q_{n} exceeds ∏|1 - q/λ_i| = {approximant.bound:.6g}",
                details={"n": n, "grid_sup": sup, "bound": approximant.bound},
            )
        rows.append(ConvergenceRow(n=n, bound=approximant.bound, grid_sup=sup))
    return rows


class MuntzAbsApproximant(BaseModel):
    """|t| ≈ t - Q_n(t) = Σ a_{n,i} t^{2i} on [-1, 1], from q = 1 and λ_i = 2i.

    The error is |Q_n(|t|)| ≤ ∏_{i≤n} (1 - 1/(2i)).
    """

    approximant: MuntzApproximant

    model_config = ConfigDict(frozen=True)

    @property
    def n(self) -> int:
        return self.approximant.n

    @property
    def bound(self) -> float:
        return self.approximant.bound

    def __call__(self, t: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        points = np.asarray(t, dtype=float)
        if not np.isfinite(points).all() or (np.abs(points) > 1).any():
            raise InputRejectedError("Points must lie inside [-1, 1]")
        magnitude = np.abs(points)
        values = magnitude - np.asarray(self.approximant(magnitude))
        return float(values) if values.ndim == 0 else values

    @property
    def polynomial(self) -> GeneralizedPolynomial:
        terms = [(float(a), exponent) for a, exponent in zip(self.approximant.coefficients, self.approximant.exponents)]
        return GeneralizedPolynomial.from_terms(terms, (-1.0, 1.0))

    def certificate(self, grid: Grid, slack: float = CONSTRUCTIVE_SLACK, strict: bool = True) -> ErrorCertificate:
        """Compare with |t| on a grid inside [-1, 1].

        Raises:
            CertificateError: If `strict` and the grid error exceeds the bound beyond slack.
        """
        error = np.abs(np.abs(grid.array) - np.asarray(self(grid.array)))
        certificate = ErrorCertificate(
            n=self.n, analytic_bound=self.bound, grid_estimate=float(np.max(error)), slack=slack, grid=grid
        )
        if strict and not certificate.holds:
            logger.error(f"|t| error {certificate.grid_estimate:.17g} exceeds the bound {self.bound:.17g}")
            raise CertificateError("Müntz |t| approximant exceeds its bound", details=certificate.model_dump())
        return certificate


def abs_via_muntz(n: Annotated[int, Doc("Number of even exponents 2, 4, ..., 2n")]) -> MuntzAbsApproximant:
    """Even polynomial approximant of |t| on [-1, 1] from the constructive Müntz scheme.

    Raises:
        InputRejectedError: If n < 1.
    """
    if n < 1:
        raise InputRejectedError("n must be at least 1", details={"n": n})
    return MuntzAbsApproximant(approximant=qn_coefficients(1.0, [2.0 * i for i in range(1, n + 1)]))
