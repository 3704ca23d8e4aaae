"""
hetsqueeze - Radar parameter records

RadarParams describes one operating point: LO displacement and squeeze,
target-return amplitude, heterodyne phase, the two optical frequencies and the
lumped scale g.
"""

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ..core.errors import InvalidArgumentError


class DetectorVariant(str, Enum):
    """Single detector, or balanced pair (pi/2 phase change at the beam splitter)."""

    SINGLE = "single"
    BALANCED = "balanced"


@dataclass(frozen=True)
class RadarParams:
    alpha: complex
    xi: complex
    beta: complex
    theta_h: float
    omega_t: float
    omega_lo: float
    g: float = 1.0
    detector_variant: DetectorVariant = DetectorVariant.SINGLE

    def __post_init__(self):
        for name in ("alpha", "xi", "beta"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not (self.omega_lo > 0 and math.isfinite(self.omega_lo)):
            raise InvalidArgumentError(f"omega_lo must be positive, got {self.omega_lo}")
        if not (self.omega_t > self.omega_lo and math.isfinite(self.omega_t)):
            raise InvalidArgumentError(
                f"omega_t must exceed omega_lo (got omega_t={self.omega_t}, omega_lo={self.omega_lo})"
            )
        if not self.g > 0:
            raise InvalidArgumentError(f"g must be positive, got {self.g}")
        if not math.isfinite(self.theta_h):
            raise InvalidArgumentError(f"theta_h must be finite, got {self.theta_h}")

    @property
    def r(self) -> float:
        return abs(self.xi)

    @property
    def theta_t(self) -> float:
        return cmath.phase(self.beta)

    @property
    def theta_lo(self) -> float:
        return cmath.phase(self.alpha)

    @property
    def theta_xi(self) -> float:
        return cmath.phase(self.xi)

    @property
    def omega_h(self) -> float:
        return self.omega_t - self.omega_lo

    @property
    def phase_offset(self) -> float:
        """theta_T - theta_LO + theta_H."""
        return self.theta_t - self.theta_lo + self.theta_h

    @property
    def nbar_t(self) -> float:
        return abs(self.beta) ** 2

    @property
    def nbar_lo(self) -> float:
        return abs(self.alpha) ** 2 + math.sinh(self.r) ** 2

    def with_changes(self, **changes) -> "RadarParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class SNRReport:
    """Analytic and (optionally) numeric means, variance and SNR at one point."""

    mean_s0: float
    mean_s1: float
    var0: float
    snr_analytic: float
    snr_ratio_vs_coherent: float
    mean_s0_num: Optional[float] = None
    mean_s1_num: Optional[float] = None
    var0_num: Optional[float] = None
    snr_numeric: Optional[float] = None
