from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..core.sequences import ExponentSequence


class ConditionStatus(str, Enum):
    """Whether a reciprocal series diverges, as far as it can be decided."""

    DIVERGES = "diverges"
    CONVERGES = "converges"
    INCONCLUSIVE = "inconclusive"


class Verdict(str, Enum):
    DENSE = "dense"
    NOT_DENSE = "not-dense"
    INCONCLUSIVE = "inconclusive"


class ProductSumRow(BaseModel):
    """Partial product ∏(1 - 1/a_i) and partial sum Σ 1/a_i up to index n."""

    n: int
    product: float
    sum: float

    model_config = ConfigDict(frozen=True)


class EvidenceRow(BaseModel):
    """Partial sums Σ 1/λ_i and Σ λ_i/(λ_i² + 1) over the positive λ_0, ..., λ_n."""

    n: int
    reciprocal_sum: float
    full_sum: float

    model_config = ConfigDict(frozen=True)


class ProfileRow(BaseModel):
    n: int
    delta: float

    model_config = ConfigDict(frozen=True)


class DensityVerdict(BaseModel):
    """Density of span{x^λ_i} in C[0, 1] with the evidence behind it.

    The classical condition Σ 1/λ_i = ∞ applies to sequences increasing to
    infinity; the full condition Σ λ_i/(λ_i² + 1) = ∞ needs no monotonicity and
    decides the verdict. Partial sums are reported, never thresholded.
    """

    sequence: ExponentSequence
    classical_condition: ConditionStatus
    full_condition: ConditionStatus
    verdict: Verdict
    evidence: List[EvidenceRow] = Field(default_factory=list)
    constant_adjoined: bool = False
    note: str = ""

    model_config = ConfigDict(frozen=True)

    @field_serializer("sequence")
    def _describe_sequence(self, sequence: ExponentSequence) -> str:
        return sequence.describe()
