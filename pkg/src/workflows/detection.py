"""
hetsqueeze - Gaussian detection curves

Equal-variance Gaussian hypotheses separated by a deflection of sqrt(SNR):
pd = Q(Q^-1(pfa) - sqrt(snr)), Q the standard normal tail.
"""

import math
from typing import List, NamedTuple, Sequence

from scipy.stats import norm

from ..core.errors import InvalidArgumentError


class DetectionPoint(NamedTuple):
    pfa: float
    pd: float


def _check_probability(value: float, name: str) -> None:
    if not (math.isfinite(value) and 0.0 < value < 1.0):
        raise InvalidArgumentError(f"{name} must lie in (0, 1), got {value}")


def gaussian_detection_curve(snr: float, pfa_values: Sequence[float]) -> List[DetectionPoint]:
    """
    Detection probability for each false-alarm probability.

    Raises:
        InvalidArgumentError: if snr is negative or not finite, or a pfa lies outside (0, 1)
    """
    if not (math.isfinite(snr) and snr >= 0):
        raise InvalidArgumentError(f"snr must be finite and >= 0, got {snr}")
    for pfa in pfa_values:
        _check_probability(pfa, "pfa")
    deflection = math.sqrt(snr)
    return [DetectionPoint(float(pfa), float(norm.sf(norm.isf(pfa) - deflection))) for pfa in pfa_values]

