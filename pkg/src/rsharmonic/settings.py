"""Numeric defaults, overridable through RSH_* environment variables or a .env file."""

import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .exceptions import ConfigError
from .numerics import (
    DEFAULT_ATOL,
    DEFAULT_MAX_STEPS,
    DEFAULT_QUAD_TOL,
    DEFAULT_ROOT_TOL,
    DEFAULT_RTOL,
    DEFAULT_SAMPLES,
)

ENV_PREFIX = "RSH_"


class Settings(BaseModel):
    """Tolerances and probes shared by the CLI commands."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    quad_tol: float = Field(DEFAULT_QUAD_TOL, gt=0)
    ivp_rtol: float = Field(DEFAULT_RTOL, gt=0)
    ivp_atol: float = Field(DEFAULT_ATOL, gt=0)
    ivp_max_steps: int = Field(DEFAULT_MAX_STEPS, gt=0)
    root_tol: float = Field(DEFAULT_ROOT_TOL, gt=0)
    shoot_samples: int = Field(DEFAULT_SAMPLES, ge=2)
    thm2_probe: float = Field(-1e6, lt=0)
    thm3_probe: float = Field(1e-6, gt=0, lt=1)
    thm3_threshold: float = Field(1e5, gt=0)
    residual_step: float = Field(1e-3, gt=0)
    certificate_tol: float = Field(1e-9, gt=0)

    @classmethod
    def from_env(
        cls,
        env_file: Optional[Union[str, Path]] = None,
        environ: Optional[Dict[str, str]] = None,
    ) -> "Settings":
        """Read RSH_<FIELD> variables, after loading ``env_file`` (or ./.env) if present.

        Raises:
            ConfigError: a variable does not parse as its field type.
        """
        if environ is None:
            load_dotenv(dotenv_path=env_file or find_dotenv(usecwd=True), override=False)
            environ = dict(os.environ)
        values: Dict[str, Any] = {}
        for name in cls.model_fields:
            raw = environ.get(f"{ENV_PREFIX}{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigError(f"invalid {ENV_PREFIX}* setting: {exc}") from exc


__all__ = ["Settings"]
