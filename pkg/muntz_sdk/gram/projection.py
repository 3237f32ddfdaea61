"""Least-squares projection onto a monomial span through the Gram normal equations."""

import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np
from typing_extensions import Annotated, Doc

from ..core.polynomial import GeneralizedPolynomial
from ..errors.exceptions import IllConditionedError, InputRejectedError
from .determinants import gram_matrix
from .distance import ILL_CONDITIONED_THRESHOLD
from .schemas import ProjectionResult


logger = logging.getLogger(__name__)


def project_l2(
    target_moments: Annotated[Sequence[float], Doc("Moments ⟨g, x^λ_i⟩, one per exponent")],
    exponents: Annotated[Iterable[float], Doc("Span exponents, pairwise distinct and greater than -1/2")],
    norm_squared: Annotated[Optional[float], Doc("⟨g, g⟩, needed for the residual")] = None,
    threshold: Annotated[float, Doc("Condition estimate treated as numerically singular")] = ILL_CONDITIONED_THRESHOLD,
) -> ProjectionResult:
    """Best L²[0,1] approximation f = Σ c_i x^λ_i of g from its moments.

    Solves G c = m with G the Gram matrix. With ⟨g, g⟩ supplied the residual
    ‖g - f‖² = ⟨g, g⟩ - ⟨g, f⟩ is returned, clamped at 0 against rounding.

    Returns:
        The projection with its coefficients, residual and condition estimate.

    Raises:
        InputRejectedError: If the moments do not match the exponents or an exponent is invalid.
        IllConditionedError: If the Gram condition estimate exceeds `threshold`; the error names
            the pair of exponents whose monomials are closest to collinear.
    """
    gram = gram_matrix(exponents)
    moments = np.asarray([float(m) for m in target_moments], dtype=float)
    if moments.shape != (len(gram.exponents),):
        raise InputRejectedError(
            f"Expected {len(gram.exponents)} moments, got {moments.size}",
            details={"moments": moments.size, "exponents": len(gram.exponents)},
        )
    if not np.isfinite(moments).all():
        raise InputRejectedError("Moments must be finite", details={"moments": moments.tolist()})
    if not gram.exponents:
        residual = None if norm_squared is None else max(float(norm_squared), 0.0)
        return ProjectionResult(
            polynomial=GeneralizedPolynomial(), exponents=(), coefficients=(), residual_squared=residual, condition=1.0
        )

    condition = gram.condition()
    if not math.isfinite(condition) or condition > threshold:
        pair = gram.most_collinear_pair()
        logger.error(f"Gram system of {len(gram.exponents)} exponents is singular in floating point ({condition:.3e})")
        raise IllConditionedError(
            f"Gram condition estimate {condition:.3e} exceeds {threshold:.0e}; "
            f"x^{pair[0]:g} and x^{pair[1]:g} are nearly collinear",
            pair=pair,
            condition=condition,
        )

    coefficients = np.linalg.solve(gram.entries, moments)
    polynomial = GeneralizedPolynomial.from_terms(zip(coefficients.tolist(), gram.exponents))
    residual: Optional[float] = None
    if norm_squared is not None:
        residual = max(float(norm_squared) - float(np.dot(coefficients, moments)), 0.0)
    logger.info(f"Projected onto {len(gram.exponents)} monomials (condition {condition:.3e}), residual² {residual}")
    return ProjectionResult(
        polynomial=polynomial,
        exponents=gram.exponents,
        coefficients=tuple(coefficients.tolist()),
        residual_squared=residual,
        condition=condition,
    )
