from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..core.polynomial import GeneralizedPolynomial


class DistanceMethod(str, Enum):
    """How a distance was obtained."""

    CLOSED_FORM = "closed-form"
    GRAM_RATIO = "gram-ratio"
    BRUTE_FORCE_RATIONAL = "brute-force-rational"


class DistanceReport(BaseModel):
    """L²[0,1] distance δ from x^q to the span of {x^λ : λ in exponents}."""

    q: float
    exponents: Tuple[float, ...] = Field(..., alias="lambdas")
    delta: float = Field(..., ge=0.0)
    method: DistanceMethod
    condition_note: str = ""
    delta_squared_exact: Optional[Fraction] = Field(None, description="Exact δ², for the rational oracle only")

    model_config = ConfigDict(frozen=True, populate_by_name=True, arbitrary_types_allowed=True)


class ProjectionResult(BaseModel):
    """Best L²[0,1] approximation of g from a monomial span.

    `residual_squared` is ⟨g, g⟩ - ⟨g, f⟩ and is only known when ⟨g, g⟩ was supplied.
    """

    polynomial: GeneralizedPolynomial
    exponents: Tuple[float, ...] = Field(..., alias="lambdas")
    coefficients: Tuple[float, ...]
    residual_squared: Optional[float] = None
    condition: float

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    @field_serializer("polynomial")
    def _polynomial_as_terms(self, polynomial: GeneralizedPolynomial) -> List[Dict[str, float]]:
        return polynomial.to_json_terms()
