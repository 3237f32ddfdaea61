"""Runtime configuration for the Muntz SDK command line."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

import tomli
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class DensitySettings(BaseSettings):
    """Defaults for the `muntz` command line.

    Every field can be overridden by an environment variable with the `MUNTZ_` prefix
    (for example `MUNTZ_OUTPUT_DIR` or `MUNTZ_GRID_SIZE`) or by a TOML file.
    """

    output_dir: Optional[Path] = Field(None, description="Directory that relative --output paths resolve against")
    grid_size: int = Field(1001, ge=1, description="Number of points of the uniform evaluation grid")
    certificate_slack: float = Field(1e-12, ge=0.0, description="Numeric slack for Weierstrass bound checks")
    constructive_slack: float = Field(1e-9, ge=0.0, description="Numeric slack for the constructive Müntz bound")
    quadrature_points: int = Field(64, ge=1, description="Gauss-Legendre points per panel")
    quadrature_panels: int = Field(32, ge=1, description="Number of quadrature panels")
    grading_ratio: float = Field(0.25, gt=0.0, lt=1.0, description="Geometric grading ratio toward 0")
    coefficient_cutoff: int = Field(12, ge=0, description="Largest n whose sqrt iterate is materialized exactly")
    exact_euler_limit: int = Field(1000, ge=2, description="Largest n accepted by the exact Euler report")
    gram_oracle_limit: int = Field(8, ge=1, description="Largest exponent count for exact Gram determinants")
    sieve_limit: int = Field(10**7, ge=2, description="Largest sieve bound")
    ill_conditioned_threshold: float = Field(1e14, gt=1.0, description="Gram condition estimate treated as singular")
    allow_negative_exponents: bool = Field(False, description="Accept exponents in (-1/2, 0) on the command line")
    log_level: LogLevel = Field("WARNING", description="Root log level of the command line")

    model_config = SettingsConfigDict(env_prefix="MUNTZ_", extra="forbid")

    @classmethod
    def from_toml(cls, file_path: Union[str, Path], **overrides: Any) -> "DensitySettings":
        """Create settings from a TOML file.

        The file may hold the keys at top level or inside a `[muntz]` table.
        Environment variables still override file values; `overrides` win over both.

        Args:
            file_path: Path to the TOML file.
            **overrides: Explicit values, typically from command line flags.

        Returns:
            A DensitySettings instance.

        Raises:
            InputRejectedError: If the file cannot be read, is not valid TOML, or holds unknown keys.
        """
        path = Path(file_path)
        try:
            data: Dict[str, Any] = tomli.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise InputRejectedError(f"Failed to read config file: {e}", details={"file_path": str(path)}, cause=e)
        except tomli.TOMLDecodeError as e:
            raise InputRejectedError(f"Invalid TOML: {e}", details={"file_path": str(path)}, cause=e)

        values = data.get("muntz", data)
        if not isinstance(values, dict):
            raise InputRejectedError("The [muntz] entry must be a table", details={"file_path": str(path)})

        logger.debug(f"Loaded config keys {sorted(values)} from {path}")
        return cls.load(**{**_file_values_below_env(cls, values), **overrides})

    @classmethod
    def load(cls, **overrides: Any) -> "DensitySettings":
        """Create settings from the environment plus explicit overrides.

        Raises:
            InputRejectedError: If a value fails validation.
        """
        try:
            return cls(**overrides)
        except ValidationError as e:
            raise InputRejectedError(f"Invalid configuration: {e}", details=overrides, cause=e)


def _file_values_below_env(cls: type[DensitySettings], values: Dict[str, Any]) -> Dict[str, Any]:
    # init kwargs outrank the environment in pydantic-settings, so drop file keys the environment sets
    prefix = cls.model_config.get("env_prefix", "")
    return {key: value for key, value in values.items() if f"{prefix}{key}".upper() not in os.environ}
