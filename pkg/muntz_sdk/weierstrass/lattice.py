"""Polynomial approximants of max{f, g} and min{f, g} through the |t| iteration."""

import logging
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from typing_extensions import Annotated, Doc

from ..core.grid import Grid
from ..core.polynomial import GeneralizedPolynomial, sup_norm_estimate
from ..errors.exceptions import CertificateError, InputRejectedError
from .iteration import CERTIFICATE_SLACK, AbsApproximant, abs_approximant
from .schemas import ErrorCertificate


logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 1001

Points = Union[float, ArrayLike]


class LatticeApproximants(BaseModel):
    """Evaluators for max{f, g} ≈ (f+g)/2 + q_n(f-g)/2 and min{f, g} ≈ (f+g)/2 - q_n(f-g)/2.

    `a` is the grid estimate of sup |f - g|; the uniform error bound a/n holds
    wherever |f - g| ≤ a. When f - g vanishes on the grid (a = 0) no |t| approximant
    is built and both evaluators return (f + g)/2, which is f itself when f = g.
    """

    f: GeneralizedPolynomial
    g: GeneralizedPolynomial
    n: int = Field(..., ge=1)
    a: float = Field(..., ge=0.0)
    absolute: Optional[AbsApproximant] = None

    model_config = ConfigDict(frozen=True)

    @property
    def bound(self) -> float:
        return self.a / self.n

    def _parts(self, x: Points) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        points = np.asarray(x, dtype=float)
        f_values = np.asarray(self.f(points))
        g_values = np.asarray(self.g(points))
        mean = 0.5 * (f_values + g_values)
        if self.absolute is None:
            return mean, np.zeros_like(mean)
        return mean, 0.5 * np.asarray(self.absolute.evaluate(f_values - g_values))

    def maximum(self, x: Points) -> Union[float, NDArray[np.float64]]:
        mean, half_gap = self._parts(x)
        values = mean + half_gap
        return float(values) if values.ndim == 0 else values

    def minimum(self, x: Points) -> Union[float, NDArray[np.float64]]:
        mean, half_gap = self._parts(x)
        values = mean - half_gap
        return float(values) if values.ndim == 0 else values

    def certificate(self, grid: Grid, slack: float = CERTIFICATE_SLACK, strict: bool = True) -> ErrorCertificate:
        """Compare both approximants with the true max and min on a grid.

        Raises:
            CertificateError: If `strict` and an error exceeds a/n beyond slack.
        """
        x = grid.array
        f_values, g_values = np.asarray(self.f(x)), np.asarray(self.g(x))
        error = np.maximum(
            np.abs(np.asarray(self.maximum(x)) - np.maximum(f_values, g_values)),
            np.abs(np.asarray(self.minimum(x)) - np.minimum(f_values, g_values)),
        )
        estimate = float(np.max(error))
        certificate = ErrorCertificate(
            n=self.n, analytic_bound=self.bound, grid_estimate=estimate, slack=slack * self.n, grid=grid
        )
        if strict and not certificate.holds:
            logger.error(f"Lattice error {estimate:.17g} exceeds a/n = {self.bound:.17g}")
            raise CertificateError(
                f"Lattice approximation error {estimate:.6g} exceeds the bound {self.bound:.6g}",
                details=certificate.model_dump(),
            )
        return certificate


def lattice_max_min(
    f: Annotated[GeneralizedPolynomial, Doc("First polynomial; integer exponents only")],
    g: Annotated[GeneralizedPolynomial, Doc("Second polynomial on the same domain")],
    n: Annotated[int, Doc("Iteration index of the |t| approximant, at least 1")],
    grid: Annotated[Optional[Grid], Doc("Grid estimating sup |f - g|; uniform over the domain by default")] = None,
    grid_size: Annotated[int, Doc("Size of the default uniform grid")] = DEFAULT_GRID_SIZE,
) -> LatticeApproximants:
    """Approximate max{f, g} and min{f, g} uniformly by polynomials, within a/n.

    The |f - g| part is q_n(f - g) with q_n(t) = a·p_n(t²/a²), so the results
    are true polynomials only when f and g are; hence integer exponents.

    Raises:
        InputRejectedError: If n < 1, the domains differ, or an exponent is not a non-negative integer.
    """
    if n < 1:
        raise InputRejectedError("Iteration index n must be at least 1", details={"n": n})
    if f.domain != g.domain:
        raise InputRejectedError(
            "f and g must share their domain", details={"f": str(f.domain), "g": str(g.domain)}
        )
    if not (f.is_integral and g.is_integral):
        raise InputRejectedError(
            "Lattice operations compose with a polynomial and need integer exponents",
            details={"f": list(f.exponents), "g": list(g.exponents)},
        )

    if grid is None:
        lo, hi = f.domain.lo, f.domain.hi
        grid = Grid.uniform(lo, hi, 1 if lo == hi else grid_size)
    a = sup_norm_estimate(f - g, grid)
    logger.info(f"Lattice max/min with n = {n}, sup |f - g| estimate {a:.6g}")
    if a == 0.0:
        return LatticeApproximants(f=f, g=g, n=n, a=0.0)
    return LatticeApproximants(f=f, g=g, n=n, a=a, absolute=abs_approximant(a, n))
