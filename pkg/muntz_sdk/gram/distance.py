"""L²[0,1] distance from x^q to a monomial span."""

import logging
import math
from typing import Iterable

import numpy as np
from typing_extensions import Annotated, Doc

from ..core.polynomial import L2_EXPONENT_FLOOR
from ..errors.exceptions import IllConditionedError, InputRejectedError
from .determinants import (
    DIRECT_PRODUCT_LIMIT,
    GRAM_ORACLE_LIMIT,
    Rational,
    as_fraction,
    check_exponents,
    exact_gram_determinant,
    gram_matrix,
    rational_exponents,
)
from .schemas import DistanceMethod, DistanceReport


logger = logging.getLogger(__name__)

ILL_CONDITIONED_THRESHOLD = 1e14


def _check_target(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q <= L2_EXPONENT_FLOOR:
        raise InputRejectedError(f"Target exponent q = {q} must be finite and greater than -1/2", details={"q": q})
    return q


def closed_form_distance(q: float, exponents: Iterable[float]) -> float:
    """δ = 1/√(2q+1) · ∏ |q - λ_i|/(q + λ_i + 1) for validated inputs."""
    factors = [abs(q - a) / (q + a + 1.0) for a in exponents]
    if any(f == 0.0 for f in factors):
        return 0.0
    if len(factors) <= DIRECT_PRODUCT_LIMIT:
        delta = 1.0 / math.sqrt(2.0 * q + 1.0)
        for f in factors:
            delta *= f
        return delta
    return math.exp(math.fsum(math.log(f) for f in factors) - 0.5 * math.log(2.0 * q + 1.0))


def distance_to_span(
    q: Annotated[float, Doc("Target exponent, greater than -1/2")],
    exponents: Annotated[Iterable[float], Doc("Span exponents, pairwise distinct and greater than -1/2")],
    estimate_condition: Annotated[bool, Doc("Record the Gram condition estimate in the report")] = True,
    threshold: Annotated[float, Doc("Condition estimate above which a warning is logged")] = ILL_CONDITIONED_THRESHOLD,
) -> DistanceReport:
    """Distance from x^q to span{x^λ_1, ..., x^λ_n} in L²[0,1] from the closed-form product.

    The Gram condition estimate is reported for context only; the closed form
    does not go through the Gram system.

    Raises:
        InputRejectedError: If q ≤ -1/2, or an exponent repeats or is at most -1/2.
    """
    q = _check_target(q)
    values = check_exponents(exponents)
    delta = closed_form_distance(q, values)

    note = ""
    if estimate_condition:
        condition = gram_matrix(values).condition()
        note = f"Gram condition estimate {condition:.3e}"
        if condition > threshold:
            logger.warning(f"Gram matrix of {len(values)} exponents is ill-conditioned ({condition:.3e})")
            note += f" (above {threshold:.0e}; closed form unaffected)"

    logger.info(f"Distance from x^{q:g} to a span of {len(values)} monomials: {delta:.17g}")
    return DistanceReport(
        q=q, exponents=values, delta=delta, method=DistanceMethod.CLOSED_FORM, condition_note=note
    )


def distance_via_float_gram(
    q: Annotated[float, Doc("Target exponent, greater than -1/2")],
    exponents: Annotated[Iterable[float], Doc("Span exponents, pairwise distinct and greater than -1/2")],
    threshold: Annotated[float, Doc("Largest accepted Gram condition estimate")] = ILL_CONDITIONED_THRESHOLD,
) -> DistanceReport:
    """δ² = G(x^λ_1, ..., x^λ_n, x^q) / G(x^λ_1, ..., x^λ_n) from floating-point log-determinants.

    Unlike the closed form, accuracy degrades with the Gram condition number.

    Raises:
        InputRejectedError: If q ≤ -1/2, or an exponent repeats or is at most -1/2.
        IllConditionedError: If the augmented Gram condition estimate exceeds `threshold`.
    """
    q = _check_target(q)
    values = check_exponents(exponents)
    if q in values:
        return DistanceReport(q=q, exponents=values, delta=0.0, method=DistanceMethod.GRAM_RATIO)

    augmented = gram_matrix((*values, q))
    condition = augmented.condition()
    if not math.isfinite(condition) or condition > threshold:
        pair = augmented.most_collinear_pair()
        logger.error(f"Augmented Gram matrix of {len(values)} exponents is singular in floating point")
        raise IllConditionedError(
            f"Gram condition estimate {condition:.3e} exceeds {threshold:.0e}; "
            f"x^{pair[0]:g} and x^{pair[1]:g} are nearly collinear",
            pair=pair,
            condition=condition,
        )

    _, log_full = np.linalg.slogdet(augmented.entries)
    log_span = np.linalg.slogdet(gram_matrix(values).entries)[1] if values else 0.0
    delta = math.exp(0.5 * (float(log_full) - float(log_span)))
    logger.info(f"Floating-point Gram ratio for x^{q:g} over {len(values)} monomials: {delta:.17g}")
    return DistanceReport(
        q=q,
        exponents=values,
        delta=delta,
        method=DistanceMethod.GRAM_RATIO,
        condition_note=f"Gram condition estimate {condition:.3e}",
    )


def distance_via_gram_ratio(
    q: Annotated[Rational, Doc("Target exponent, rational and greater than -1/2")],
    exponents: Annotated[Iterable[Rational], Doc("Span exponents, rational and pairwise distinct")],
    limit: Annotated[int, Doc("Largest accepted number of span exponents")] = GRAM_ORACLE_LIMIT,
) -> DistanceReport:
    """δ² = G(x^λ_1, ..., x^λ_n, x^q) / G(x^λ_1, ..., x^λ_n) in exact rationals, rooted at the end.

    Raises:
        InputRejectedError: If q is among the exponents, there are too many exponents, or a value is invalid.
    """
    target = as_fraction(q)
    values = rational_exponents(exponents)
    if len(values) > limit:
        raise InputRejectedError(
            f"Exact Gram determinants are limited to {limit} exponents, got {len(values)}",
            details={"count": len(values), "limit": limit},
        )
    if target in values:
        raise InputRejectedError(f"q = {target} must differ from every exponent", details={"q": str(target)})
    rational_exponents((*values, target))

    delta_squared = exact_gram_determinant((*values, target)) / exact_gram_determinant(values)
    delta = math.sqrt(float(delta_squared))
    logger.info(f"Exact Gram ratio for x^{target}: δ² = {delta_squared}")
    return DistanceReport(
        q=float(target),
        exponents=tuple(float(v) for v in values),
        delta=delta,
        method=DistanceMethod.BRUTE_FORCE_RATIONAL,
        condition_note="exact rational determinants",
        delta_squared_exact=delta_squared,
    )
