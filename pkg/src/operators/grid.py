"""
hetsqueeze - Mode grids and signal-operator settings

Frequencies are dimensionless angular frequencies chosen by the caller. The
lumped constant g = kappa*hbar / (2*eps0*V) carries every dimensional factor
of the field expansion.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from ..core.errors import InvalidArgumentError

PAIR_TOLERANCE_FACTOR = 1e-9


@dataclass(frozen=True)
class ModeGrid:
    """Ordered positive mode frequencies with LO, target and optional image roles."""

    freqs: Tuple[float, ...]
    lo_index: int
    target_index: int
    scale_g: float = 1.0
    image_index: Optional[int] = None

    def __post_init__(self):
        freqs = tuple(float(f) for f in self.freqs)
        object.__setattr__(self, "freqs", freqs)
        if not freqs:
            raise InvalidArgumentError("mode grid needs at least one frequency")
        if any(not math.isfinite(f) or f <= 0 for f in freqs):
            raise InvalidArgumentError(f"mode frequencies must be finite and positive: {freqs}")
        if len(set(freqs)) != len(freqs):
            raise InvalidArgumentError(f"mode frequencies must be distinct: {freqs}")
        size = len(freqs)
        for name in ("lo_index", "target_index", "image_index"):
            index = getattr(self, name)
            if index is not None and not 0 <= index < size:
                raise InvalidArgumentError(f"{name}={index} out of range for {size} modes")
        if size > 1 and self.lo_index == self.target_index:
            raise InvalidArgumentError("LO and target must be different modes")
        if self.image_index is not None and self.image_index in (self.lo_index, self.target_index):
            raise InvalidArgumentError("image mode must differ from LO and target")
        if not self.scale_g > 0:
            raise InvalidArgumentError(f"scale_g must be positive, got {self.scale_g}")

    @classmethod
    def heterodyne(
        cls,
        omega_lo: float,
        omega_h: float,
        scale_g: float = 1.0,
        with_image: bool = True,
    ) -> "ModeGrid":
        """Grid {omega_lo - omega_h (image), omega_lo, omega_lo + omega_h (target)}."""
        if not omega_h > 0:
            raise InvalidArgumentError(f"omega_h must be positive, got {omega_h}")
        if with_image:
            return cls(
                freqs=(omega_lo - omega_h, omega_lo, omega_lo + omega_h),
                lo_index=1,
                target_index=2,
                scale_g=scale_g,
                image_index=0,
            )
        return cls(freqs=(omega_lo, omega_lo + omega_h), lo_index=0, target_index=1, scale_g=scale_g)

    @property
    def size(self) -> int:
        return len(self.freqs)

    @property
    def omega_lo(self) -> float:
        return self.freqs[self.lo_index]

    @property
    def omega_t(self) -> float:
        return self.freqs[self.target_index]

    def without_mode(self, index: int) -> "ModeGrid":
        """Copy of the grid with one non-LO, non-target mode removed."""
        if index in (self.lo_index, self.target_index):
            raise InvalidArgumentError("cannot remove the LO or target mode")

        def shift(i: Optional[int]) -> Optional[int]:
            if i is None or i == index:
                return None
            return i - 1 if i > index else i

        freqs = self.freqs[:index] + self.freqs[index + 1:]
        return ModeGrid(freqs, shift(self.lo_index), shift(self.target_index), self.scale_g, shift(self.image_index))

    def lo_partners(self, omega_h: float, tolerance: Optional[float] = None) -> List[float]:
        """Frequencies omega_k with | |omega_lo - omega_k| - omega_h | <= tolerance."""
        tol = tolerance if tolerance is not None else PAIR_TOLERANCE_FACTOR * omega_h
        return [
            f for i, f in enumerate(self.freqs)
            if i != self.lo_index and abs(abs(self.omega_lo - f) - omega_h) <= tol
        ]


class PhaseConvention(str, Enum):
    """
    Outer phase handling of the finite-tau signal operator.

    KERNEL_ONLY: coefficient g sqrt(w_l w_k) K(w_l - w_k), the literal time average.
    OUTER_PHASE: additionally multiplies exp(-i sign(w_l - w_k) theta_h).
    """

    KERNEL_ONLY = "kernel_only"
    OUTER_PHASE = "outer_phase"


@dataclass(frozen=True)
class SignalOperatorSpec:
    """Heterodyne frequency, phase and integration time of the signal statistic."""

    omega_h: float
    theta_h: float = 0.0
    tau: float = math.inf
    pair_tolerance: Optional[float] = None
    convention: PhaseConvention = PhaseConvention.KERNEL_ONLY

    def __post_init__(self):
        if not (math.isfinite(self.omega_h) and self.omega_h > 0):
            raise InvalidArgumentError(f"omega_h must be positive and finite, got {self.omega_h}")
        if not math.isfinite(self.theta_h):
            raise InvalidArgumentError(f"theta_h must be finite, got {self.theta_h}")
        if not self.tau > 0:
            raise InvalidArgumentError(f"tau must be positive, got {self.tau}")
        if self.pair_tolerance is not None and not self.pair_tolerance > 0:
            raise InvalidArgumentError(f"pair_tolerance must be positive, got {self.pair_tolerance}")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.tau)

    @property
    def tolerance(self) -> float:
        if self.pair_tolerance is not None:
            return self.pair_tolerance
        return PAIR_TOLERANCE_FACTOR * self.omega_h

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega_h
