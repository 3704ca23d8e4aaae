"""
hetsqueeze - Ladder-operator expectation values on single-mode states

Truncation semantics: a^dag acting on the top retained level drops that
amplitude (projective truncation). The truncated a^dag is the exact adjoint of
the truncated a, so Hermitian symmetry of matrix elements survives truncation.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence, Tuple

import numpy as np

from ..core.errors import InvalidArgumentError
from .states import FockVector

MAX_STRING_LENGTH = 8
MOMENT_ORDER = 2


def apply_lowering(amps: np.ndarray) -> np.ndarray:
    """a|psi>: new[n] = sqrt(n+1) amps[n+1]; the top level becomes empty."""
    out = np.zeros_like(amps)
    out[:-1] = np.sqrt(np.arange(1, amps.size)) * amps[1:]
    return out


def apply_raising(amps: np.ndarray) -> np.ndarray:
    """a^dag|psi>: new[n] = sqrt(n) amps[n-1]; amplitude on the top level is dropped."""
    out = np.zeros_like(amps)
    out[1:] = np.sqrt(np.arange(1, amps.size)) * amps[:-1]
    return out


def ladder_string_expectation(state: FockVector, factors: Sequence[bool]) -> complex:
    """
    <psi| f_1 f_2 ... f_m |psi> for an ordered ladder string.

    Args:
        state: single-mode state
        factors: ordered factors, True for a^dag and False for a; the
            rightmost factor acts first

    Returns:
        Complex expectation value
    """
    if len(factors) > MAX_STRING_LENGTH:
        raise InvalidArgumentError(f"ladder string longer than {MAX_STRING_LENGTH}: {len(factors)}")
    vector = np.array(state.amps)
    for dagger in reversed(factors):
        vector = apply_raising(vector) if dagger else apply_lowering(vector)
        if not vector.any():
            return 0j
    return complex(np.vdot(state.amps, vector))


@dataclass(frozen=True)
class MomentTable:
    """Normally ordered moments <a^dag^p a^q> of one mode for p, q in 0..2."""

    entries: Mapping[Tuple[int, int], complex] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def entry(self, p: int, q: int) -> complex:
        try:
            return self.entries[(p, q)]
        except KeyError:
            raise InvalidArgumentError(f"moment ({p}, {q}) not tabulated") from None

    @property
    def mean_photon_number(self) -> float:
        return self.entries[(1, 1)].real


def moments(state: FockVector) -> MomentTable:
    """Tabulate <a^dag^p a^q> for p, q in {0, 1, 2}."""
    entries = {}
    for p in range(MOMENT_ORDER + 1):
        for q in range(MOMENT_ORDER + 1):
            entries[(p, q)] = ladder_string_expectation(state, [True] * p + [False] * q)
    entries[(0, 0)] = 1 + 0j
    entries[(1, 1)] = complex(entries[(1, 1)].real, 0.0)
    return MomentTable(entries)


def number_variance(state: FockVector) -> float:
    """<(a^dag a)^2> - <a^dag a>^2 from the number-basis distribution."""
    n = np.arange(state.cutoff + 1, dtype=float)
    probabilities = state.probabilities
    mean = float(np.dot(n, probabilities))
    second = float(np.dot(n * n, probabilities))
    return max(0.0, second - mean * mean)
