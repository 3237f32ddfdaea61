"""Composite Gauss-Legendre quadrature on [lo, hi] with optional grading toward lo."""

import logging
import math
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from ..errors.exceptions import InputRejectedError, IntegrationError


logger = logging.getLogger(__name__)

Integrand = Callable[[NDArray[np.float64]], object]


class QuadratureScheme(BaseModel):
    """Configuration of the composite rule.

    With grading, panel breakpoints sit at lo + (hi-lo)·r^k for k = 0..panels-1
    and the innermost panel [lo, lo + (hi-lo)·r^(panels-1)] is integrated after
    the substitution x = lo + h·u^p, which removes x^λ endpoint behavior for
    λ > -1 down to a smooth (often polynomial) integrand in u.
    """

    points: int = Field(64, ge=1, description="Gauss-Legendre points per panel")
    panels: int = Field(32, ge=1, description="Number of panels")
    grading_ratio: float = Field(0.25, gt=0.0, lt=1.0, description="Ratio between consecutive graded breakpoints")
    graded: Optional[bool] = Field(None, description="Grade toward lo; None grades exactly when lo == 0")
    endpoint_power: int = Field(12, ge=1, description="Power p of the innermost-panel substitution")

    model_config = ConfigDict(frozen=True)


DEFAULT_SCHEME = QuadratureScheme()


@lru_cache(maxsize=32)
def gauss_legendre(points: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes and weights of the `points`-point Gauss-Legendre rule on [-1, 1], nodes ascending."""
    nodes, weights = np.polynomial.legendre.leggauss(points)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule(a: float, b: float, points: int) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    nodes, weights = gauss_legendre(points)
    half = 0.5 * (b - a)
    return a + half * (nodes + 1.0), half * weights


def breakpoints(lo: float, hi: float, scheme: QuadratureScheme = DEFAULT_SCHEME) -> NDArray[np.float64]:
    """Ascending panel breakpoints of the composite rule on [lo, hi]."""
    graded = scheme.graded if scheme.graded is not None else lo == 0.0
    if not graded:
        return np.linspace(lo, hi, scheme.panels + 1)
    ratios = scheme.grading_ratio ** np.arange(scheme.panels - 1, -1, -1, dtype=float)
    return np.concatenate(([lo], lo + (hi - lo) * ratios))


def _sample(f: Integrand, x: NDArray[np.float64]) -> NDArray[np.float64]:
    with np.errstate(all="ignore"):
        values = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    finite = np.isfinite(values)
    if not finite.all():
        index = int(np.argmin(finite))
        location, value = float(x[index]), float(values[index])
        logger.error(f"Integrand returned {value} at x = {location}")
        raise IntegrationError(f"Integrand is not finite at x = {location!r}", location=location, value=value)
    return values


def integrate(f: Integrand, lo: float, hi: float, scheme: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """Integrate f over [lo, hi] with the composite Gauss-Legendre rule.

    `f` receives a numpy array of abscissae and must return values of the same
    shape (a scalar is broadcast). Integrands behaving like x^λ at 0 with
    λ > -1 are resolved by the default graded mesh.

    Args:
        f: Vectorized integrand, finite on (lo, hi].
        lo: Lower limit, at least 0.
        hi: Upper limit.
        scheme: Quadrature configuration.

    Returns:
        The quadrature estimate.

    Raises:
        InputRejectedError: If lo < 0 or lo > hi.
        IntegrationError: If a sample is not finite; the error carries its location.
    """
    if lo < 0 or lo > hi or not (math.isfinite(lo) and math.isfinite(hi)):
        raise InputRejectedError(f"Invalid integration interval [{lo}, {hi}]", details={"lo": lo, "hi": hi})
    if lo == hi:
        return 0.0

    cuts = breakpoints(lo, hi, scheme)
    graded = scheme.graded if scheme.graded is not None else lo == 0.0
    pieces = []
    first = 0
    if graded:
        # innermost panel through x = lo + h·u^p
        h = float(cuts[1] - cuts[0])
        u, w = panel_rule(0.0, 1.0, scheme.points)
        p = scheme.endpoint_power
        x = lo + h * u**p
        pieces.append(float(np.dot(w * (h * p * u ** (p - 1)), _sample(f, x))))
        first = 1
    for a, b in zip(cuts[first:-1], cuts[first + 1 :]):
        x, w = panel_rule(float(a), float(b), scheme.points)
        pieces.append(float(np.dot(w, _sample(f, x))))

    result = math.fsum(pieces)
    logger.debug(f"Integrated over [{lo}, {hi}] with {len(pieces)} panels: {result:.17g}")
    return result
