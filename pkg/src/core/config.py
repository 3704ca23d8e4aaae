"""
hetsqueeze - Configuration Module

Run configuration for the command line: a validated pydantic model with
documented defaults, plus the ``key = value`` config-file grammar.

Precedence is built-in defaults < config file < command-line flags. The config
file comes from ``--config``, or else from the HETSQUEEZE_CONFIG environment
variable (a ``.env`` in the working directory is honoured).
"""

import math
import os
from enum import Enum
from io import StringIO
from pathlib import Path
from typing import Dict, Optional, Tuple

from dotenv import load_dotenv
from dotenv.parser import parse_stream
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..analysis.params import DetectorVariant, RadarParams
from ..operators.grid import ModeGrid
from ..workflows.sweeps import Normalization, OracleMode, SweptParameter
from .errors import UsageError

CONFIG_ENV = "HETSQUEEZE_CONFIG"


class Command(str, Enum):
    VERIFY = "verify"
    SWEEP_SNR = "sweep-snr"
    SWEEP_NUMVAR = "sweep-numvar"
    IMAGE_BAND = "image-band"
    KERNEL = "kernel"
    ROC = "roc"


DEFAULT_VALUES: Dict[Command, Tuple[float, ...]] = {
    Command.SWEEP_SNR: (0.0, 0.25, 0.5, 1.0),
    Command.SWEEP_NUMVAR: (0.0, 0.25, 0.5, 1.0),
    Command.KERNEL: (100.0, 1000.0, 10000.0),
    Command.ROC: (0.001, 0.01, 0.05, 0.1, 0.5),
}

_FLOAT_FIELDS = (
    "alpha_re", "alpha_im", "xi_re", "xi_im", "beta_re", "beta_im",
    "theta_h", "omega_lo", "omega_h", "g", "snr",
)


class RunConfig(BaseModel):
    """Validated settings for one CLI invocation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    alpha_re: float = 2.0
    alpha_im: float = 0.0
    xi_re: float = 0.0
    xi_im: float = 0.0
    beta_re: float = 1.0
    beta_im: float = 0.0
    theta_h: float = 0.0
    omega_lo: float = 100.0
    omega_h: float = 1.0
    g: float = 1.0
    cutoff: Optional[int] = None
    normalization: Normalization = Normalization.FIXED_NBAR_LO
    values: Optional[Tuple[float, ...]] = None
    output_path: Optional[str] = None
    oracle_mode: OracleMode = OracleMode.SPOT
    parameter: SweptParameter = SweptParameter.R
    detector: DetectorVariant = DetectorVariant.SINGLE
    snr: Optional[float] = None
    workers: int = 4
    seed: int = 0

    @field_validator(*_FLOAT_FIELDS)
    @classmethod
    def _finite(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not math.isfinite(value):
            raise ValueError("must be a finite real number")
        return value

    @field_validator("omega_lo", "omega_h", "g")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("snr")
    @classmethod
    def _non_negative(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value < 0:
            raise ValueError("must be >= 0")
        return value

    @field_validator("cutoff", mode="before")
    @classmethod
    def _auto_cutoff(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("", "auto"):
            return None
        return value

    @field_validator("cutoff", "workers")
    @classmethod
    def _at_least_one(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("values", mode="before")
    @classmethod
    def _comma_list(cls, value):
        if isinstance(value, str):
            items = [item.strip() for item in value.split(",")]
            if not all(items):
                raise ValueError("expected comma-separated real numbers")
            try:
                value = tuple(float(item) for item in items)
            except ValueError:
                raise ValueError("expected comma-separated real numbers") from None
        if value is not None:
            value = tuple(value)
            if not value:
                raise ValueError("needs at least one value")
            if not all(math.isfinite(float(v)) for v in value):
                raise ValueError("values must be finite")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        if self.omega_h >= self.omega_lo:
            raise ValueError("omega_h must be smaller than omega_lo (the image band sits at omega_lo - omega_h)")
        if self.command in (Command.SWEEP_SNR, Command.SWEEP_NUMVAR) and self.parameter is SweptParameter.TAU:
            raise ValueError("tau is swept by the kernel command")
        if self.command is Command.SWEEP_NUMVAR and self.parameter not in (SweptParameter.R, SweptParameter.THETA_XI):
            raise ValueError("sweep-numvar sweeps r or theta_xi")
        return self

    @property
    def sweep_values(self) -> Tuple[float, ...]:
        if self.values is not None:
            return self.values
        return DEFAULT_VALUES.get(self.command, ())

    @property
    def alpha(self) -> complex:
        return complex(self.alpha_re, self.alpha_im)

    @property
    def xi(self) -> complex:
        return complex(self.xi_re, self.xi_im)

    @property
    def beta(self) -> complex:
        return complex(self.beta_re, self.beta_im)

    def radar_params(self) -> RadarParams:
        return RadarParams(
            alpha=self.alpha,
            xi=self.xi,
            beta=self.beta,
            theta_h=self.theta_h,
            omega_t=self.omega_lo + self.omega_h,
            omega_lo=self.omega_lo,
            g=self.g,
            detector_variant=self.detector,
        )

    def grid(self, with_image: bool = True) -> ModeGrid:
        return ModeGrid.heterodyne(self.omega_lo, self.omega_h, scale_g=self.g, with_image=with_image)


def parse_config_text(text: str) -> Dict[str, str]:
    """
    Parse ``key = value`` lines into a dict. ``#`` starts a comment that runs to
    the end of the line; later lines win for a repeated key.

    Raises:
        UsageError: if a line cannot be parsed or names a key without ``=``
    """
    stripped = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    entries: Dict[str, str] = {}
    for binding in parse_stream(StringIO(stripped)):
        if binding.error:
            line = binding.original.string.strip()
            raise UsageError(f"cannot parse config line {binding.original.line}: '{line}'")
        if binding.key is None:
            continue
        if binding.value is None:
            raise UsageError(f"config line '{binding.key}' has no '='", key=binding.key)
        entries[binding.key] = binding.value
    return entries


def read_config_file(path: str) -> str:
    """Read a UTF-8 config file; OSError propagates to the caller."""
    return Path(path).read_text(encoding="utf-8")


def config_path_from_env() -> Optional[str]:
    """Config file named by HETSQUEEZE_CONFIG, after loading a local ``.env``."""
    load_dotenv()
    return os.getenv(CONFIG_ENV) or None
