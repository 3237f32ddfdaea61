from pydantic import BaseModel, ConfigDict


class ConvergenceRow(BaseModel):
    """Certified bound ∏|1 - q/λ_i| next to the grid sup of |Q_n|."""

    n: int
    bound: float
    grid_sup: float

    model_config = ConfigDict(frozen=True)
