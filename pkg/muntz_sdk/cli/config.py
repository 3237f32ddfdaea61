import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..config.settings import DensitySettings, LogLevel
from ..core.grid import Grid
from ..core.quadrature import QuadratureScheme
from .output import OutputFormat


logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Settings of one command line run: file and environment defaults merged with flags."""

    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[Path] = None
    grid_size: int = Field(1001, ge=1)
    certificate_slack: float = Field(1e-12, ge=0.0)
    constructive_slack: float = Field(1e-9, ge=0.0)
    quadrature: QuadratureScheme = Field(default_factory=QuadratureScheme)
    coefficient_cutoff: int = 12
    exact_euler_limit: int = 1000
    gram_oracle_limit: int = 8
    sieve_limit: int = 10**7
    ill_conditioned_threshold: float = 1e14
    allow_negative_exponents: bool = False
    log_level: LogLevel = "WARNING"

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_settings(
        cls,
        settings: DensitySettings,
        output_format: OutputFormat = OutputFormat.JSON,
        output: Optional[Path] = None,
    ) -> "RunConfig":
        """Merge settings with the output flags.

        A relative `output` path resolves against `settings.output_dir` when that is set.
        """
        output_path = output
        if output_path is not None and not output_path.is_absolute() and settings.output_dir is not None:
            output_path = settings.output_dir / output_path
        return cls(
            output_format=output_format,
            output_path=output_path,
            grid_size=settings.grid_size,
            certificate_slack=settings.certificate_slack,
            constructive_slack=settings.constructive_slack,
            quadrature=QuadratureScheme(
                points=settings.quadrature_points,
                panels=settings.quadrature_panels,
                grading_ratio=settings.grading_ratio,
            ),
            coefficient_cutoff=settings.coefficient_cutoff,
            exact_euler_limit=settings.exact_euler_limit,
            gram_oracle_limit=settings.gram_oracle_limit,
            sieve_limit=settings.sieve_limit,
            ill_conditioned_threshold=settings.ill_conditioned_threshold,
            allow_negative_exponents=settings.allow_negative_exponents,
            log_level=settings.log_level,
        )

    def grid(self, lo: float = 0.0, hi: float = 1.0) -> Grid:
        """The uniform evaluation grid of `grid_size` points on [lo, hi]."""
        return Grid.uniform(lo, hi, self.grid_size)


def settings_overrides(**flags: Any) -> Dict[str, Any]:
    """Flags that were actually given, keyed by settings field."""
    return {key: value for key, value in flags.items() if value is not None}
