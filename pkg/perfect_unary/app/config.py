"""Run configuration: defaults, environment overrides (``PERFECT_UNARY_*``) and CLI flags, merged in that order."""

import os
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..forms.errors import ConfigurationError
from ..forms.field_core import is_squarefree

DEFAULT_CONFIG: dict[str, Any] = {
    "precision_bits": 128,
    "max_precision_bits": 4096,
    "max_classes": 200,
    "timeout": 600.0,
    "seed": 7,
    "exponent_variant": "proof",
    "eta_variant": "abstract",
    "format": "json",
    "samples": 100,
    "oracle_samples": 25,
    "unit_trials": 20,
}

ENVIRONMENT_KEYS = {
    "PERFECT_UNARY_PRECISION_BITS": "precision_bits",
    "PERFECT_UNARY_MAX_CLASSES": "max_classes",
    "PERFECT_UNARY_TIMEOUT": "timeout",
    "PERFECT_UNARY_SEED": "seed",
}


class RunConfig(BaseModel):
    field_path: Optional[Path] = None
    quadratic: Annotated[Optional[int], Field(default=None, description="Squarefree d >= 2 for Q(sqrt d)")]
    dmax: Optional[int] = None
    precision_bits: Annotated[int, Field(ge=64, le=4096)] = 128
    max_precision_bits: Annotated[int, Field(ge=64, le=4096)] = 4096
    exponent_variant: Literal["stated", "proof"] = "proof"
    eta_variant: Literal["abstract", "theorem"] = "abstract"
    assume_unit_reducible: bool = False
    max_classes: Annotated[int, Field(ge=1)] = 200
    timeout: Annotated[float, Field(gt=0)] = 600.0
    output: Optional[Path] = None
    format: Literal["json", "csv"] = "json"
    seed: int = 7
    samples: Annotated[int, Field(ge=1)] = 100
    oracle_samples: Annotated[int, Field(ge=1)] = 25
    unit_trials: Annotated[int, Field(ge=1)] = 20

    @model_validator(mode="after")
    def _check_field_source(self) -> "RunConfig":
        if self.quadratic is not None and (self.quadratic < 2 or not is_squarefree(self.quadratic)):
            raise ValueError(f"--quadratic expects a squarefree integer >= 2, got {self.quadratic}")
        if self.field_path is not None and self.quadratic is not None:
            raise ValueError("give either --field or --quadratic, not both")
        if self.dmax is not None and self.dmax < 2:
            raise ValueError("--dmax must be at least 2")
        return self

    def require_field_source(self) -> None:
        if self.field_path is None and self.quadratic is None:
            raise ConfigurationError("one of --field or --quadratic is required")


def _environment_config() -> dict[str, str]:
    return {key: os.environ[name] for name, key in ENVIRONMENT_KEYS.items() if os.environ.get(name)}


def get_run_config(overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """Build the validated run configuration.

    Args:
        overrides (dict | None): CLI values; ``None`` entries are ignored so defaults and environment survive.

    Returns:
        RunConfig: defaults <- environment <- overrides.

    """
    overrides = {} if overrides is None else {k: v for k, v in overrides.items() if v is not None}
    return RunConfig.model_validate({**DEFAULT_CONFIG, **_environment_config(), **overrides})
