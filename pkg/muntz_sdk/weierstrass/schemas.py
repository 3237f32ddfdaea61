from typing import List

from pydantic import BaseModel, ConfigDict, Field

from ..core.grid import Grid


class BoundViolation(BaseModel):
    """A grid point at which a proven pointwise bound failed."""

    t: float
    error: float
    bound: float

    model_config = ConfigDict(frozen=True)


class ErrorCertificate(BaseModel):
    """Grid-based sup-norm estimate paired with the analytic bound it must respect.

    The grid estimate is a lower bound of the true sup norm, so a certificate
    can only refute the analytic bound, never prove it.
    """

    n: int = Field(..., ge=0)
    analytic_bound: float
    grid_estimate: float
    violations: List[BoundViolation] = Field(default_factory=list)
    slack: float = Field(0.0, exclude=True)
    grid: Grid = Field(..., exclude=True)

    model_config = ConfigDict(frozen=True)

    @property
    def holds(self) -> bool:
        return not self.violations and self.grid_estimate <= self.analytic_bound + self.slack
