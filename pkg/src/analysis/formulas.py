"""
hetsqueeze - Closed-form heterodyne results

Mean of the heterodyne statistic with a target present, its target-absent
variance (exact image-band sum or narrowband form), the SNR, and the
number-statistic variance of the zero-frequency photocurrent.
"""

import math
from typing import Optional, Sequence

from ..core.errors import UndefinedSNRError
from ..fock.ladder import number_variance
from ..fock.states import SingleModeSpec
from .params import DetectorVariant, RadarParams, SNRReport


def _quadrature(p: RadarParams) -> float:
    """cos(phase offset) for a single detector, sin(...) for the balanced pair."""
    if p.detector_variant is DetectorVariant.BALANCED:
        return math.sin(p.phase_offset)
    return math.cos(p.phase_offset)


def mean_s_present(p: RadarParams, narrowband: bool = False) -> float:
    """
    <S> with the target return present.

    Args:
        p: Operating point
        narrowband: Use omega_T ~ omega_LO in the prefactor

    Returns:
        g sqrt(w_T w_LO) |alpha| |beta| cos(theta_T - theta_LO + theta_H),
        with sin for the balanced detector
    """
    omega_sq = p.omega_lo ** 2 if narrowband else p.omega_t * p.omega_lo
    return p.g * math.sqrt(omega_sq) * abs(p.alpha) * abs(p.beta) * _quadrature(p)


def var0_s(p: RadarParams, matching_frequencies: Optional[Sequence[float]] = None) -> float:
    """
    Target-absent variance of S.

    Args:
        p: Operating point
        matching_frequencies: Grid frequencies w_k with |w_LO - w_k| = w_H. When
            omitted the narrowband value g^2 w_LO^2 nbar_LO / 2 is returned.

    Returns:
        (g/2)^2 nbar_LO sum_k w_LO w_k over the matching frequencies
    """
    nbar = p.nbar_lo
    if matching_frequencies is None:
        return 0.5 * (p.g * p.omega_lo) ** 2 * nbar
    return (0.5 * p.g) ** 2 * nbar * sum(p.omega_lo * w for w in matching_frequencies)


def snr_definition(mean1: float, mean0: float, var0: float) -> float:
    """(mean1 - mean0)^2 / var0; raises UndefinedSNRError unless var0 > 0."""
    if not var0 > 0:
        raise UndefinedSNRError(f"target-absent variance must be positive, got {var0}")
    return (mean1 - mean0) ** 2 / var0


def snr(p: RadarParams, exact: bool = False) -> float:
    """
    2 (1 - sinh^2 r / nbar_LO) nbar_T cos^2(theta_T - theta_LO + theta_H).

    With ``exact`` the omega_T / omega_LO factor dropped by the narrowband
    approximation is restored, which is the value an image-band grid gives.

    Raises:
        UndefinedSNRError: if nbar_LO = 0
    """
    nbar = p.nbar_lo
    if nbar == 0:
        raise UndefinedSNRError("SNR undefined for an empty LO mode (nbar_LO = 0)")
    value = 2.0 * (1.0 - math.sinh(p.r) ** 2 / nbar) * p.nbar_t * _quadrature(p) ** 2
    if exact:
        value *= p.omega_t / p.omega_lo
    return value


def snr_ratio(p: RadarParams) -> float:
    """SNR relative to a coherent LO with the same mean photon number: |alpha|^2 / nbar_LO."""
    nbar = p.nbar_lo
    if nbar == 0:
        raise UndefinedSNRError("SNR ratio undefined for an empty LO mode (nbar_LO = 0)")
    return abs(p.alpha) ** 2 / nbar


def number_variance_closed(p: RadarParams, cutoff: Optional[int] = None) -> float:
    """
    Target-absent variance of S' = (g w_LO)^2 var(n_LO).

    var(n_LO) is taken from the number distribution of the constructed LO state.
    """
    lo = SingleModeSpec.squeezed_coherent(p.alpha, p.xi).realize(cutoff)
    return (p.g * p.omega_lo) ** 2 * number_variance(lo)


def number_variance_gaussian(p: RadarParams) -> float:
    """
    Var0 S' from the Gaussian moments of D(alpha) S(xi)|0>:
        var(n) = |alpha|^2 (cosh 2r - sinh 2r cos(theta_xi - 2 theta_LO)) + 2 sinh^2 r cosh^2 r
    The LO is amplitude squeezed (sub-Poissonian for small r) when theta_xi = 2 theta_LO.
    """
    r = p.r
    quadrature = math.cosh(2 * r) - math.sinh(2 * r) * math.cos(p.theta_xi - 2 * p.theta_lo)
    var_n = abs(p.alpha) ** 2 * quadrature + 2 * (math.sinh(r) * math.cosh(r)) ** 2
    return (p.g * p.omega_lo) ** 2 * var_n


def build_snr_report(
    p: RadarParams,
    matching_frequencies: Optional[Sequence[float]] = None,
    mean_s0_num: Optional[float] = None,
    mean_s1_num: Optional[float] = None,
    var0_num: Optional[float] = None,
) -> SNRReport:
    """
    Report for one operating point.

    With ``matching_frequencies`` the variance and SNR use the exact grid sum;
    otherwise the narrowband forms. When all three numeric values are given the
    numeric SNR is formed from them with the same definition as the analytic one.
    """
    narrowband = matching_frequencies is None
    mean1 = mean_s_present(p, narrowband=narrowband)
    var0 = var0_s(p, matching_frequencies)
    snr_numeric = None
    if None not in (mean_s0_num, mean_s1_num, var0_num):
        snr_numeric = snr_definition(mean_s1_num, mean_s0_num, var0_num)
    return SNRReport(
        mean_s0=0.0,
        mean_s1=mean1,
        var0=var0,
        snr_analytic=snr(p, exact=not narrowband),
        snr_ratio_vs_coherent=snr_ratio(p),
        mean_s0_num=mean_s0_num,
        mean_s1_num=mean_s1_num,
        var0_num=var0_num,
        snr_numeric=snr_numeric,
    )
