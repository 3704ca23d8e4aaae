"""
hetsqueeze - Finite integration-time convergence study

Compares the finite-tau signal operator with the tau -> infinity operator,
coefficient by coefficient, for both phase conventions, and fits the
deviation envelope to C / tau.
"""

import math
from dataclasses import dataclass, replace
from typing import Dict, List, Tuple

import numpy as np

from ..core.errors import ConfigurationError
from ..core.logger import setup_logger
from ..operators.algebra import OperatorSum
from ..operators.grid import ModeGrid, PhaseConvention, SignalOperatorSpec
from ..operators.signal import build_signal_operator_finite, build_signal_operator_infinite
from .sweeps import SweepSpec, SweptParameter, check_grid

logger = setup_logger("workflow")

CONVERGENCE_THRESHOLD = 1e-3
WINDOW_SAMPLES = 16


@dataclass(frozen=True)
class KernelConvergenceRow:
    tau_periods: float
    tau: float
    deviation_kernel_only: float
    deviation_outer_phase: float

    def deviation(self, convention: PhaseConvention) -> float:
        if convention is PhaseConvention.OUTER_PHASE:
            return self.deviation_outer_phase
        return self.deviation_kernel_only


@dataclass(frozen=True)
class KernelConvergenceReport:
    rows: Tuple[KernelConvergenceRow, ...]
    fitted_c: Dict[PhaseConvention, float]
    converging: Tuple[PhaseConvention, ...]
    conventions_identical: bool
    verdict: str


def coefficient_deviation(grid: ModeGrid, finite: OperatorSum, infinite: OperatorSum) -> float:
    """max over ordered pairs of |c_finite - c_infinite| / (g sqrt(w_l w_k))."""
    target = infinite.coefficients()
    worst = 0.0
    for monomial, coeff in finite.coefficients().items():
        l, k = monomial[0].mode, monomial[1].mode
        scale = grid.scale_g * math.sqrt(grid.freqs[l] * grid.freqs[k])
        worst = max(worst, abs(coeff - target.get(monomial, 0j)) / scale)
    return worst


def windowed_deviation(grid: ModeGrid, spec: SignalOperatorSpec, infinite: OperatorSum) -> float:
    """
    Worst coefficient deviation over one heterodyne period starting at spec.tau.

    The sinc terms vanish at whole numbers of periods, so a single tau can
    under-report the deviation envelope.
    """
    worst = 0.0
    for j in range(WINDOW_SAMPLES):
        sample = replace(spec, tau=spec.tau + j * spec.period / WINDOW_SAMPLES)
        worst = max(worst, coefficient_deviation(grid, build_signal_operator_finite(grid, sample), infinite))
    return worst


def fit_inverse_tau(taus: List[float], deviations: List[float]) -> float:
    """Least-squares C in deviation ~ C / tau."""
    inverse = 1.0 / np.asarray(taus, dtype=float)
    return float(np.dot(deviations, inverse) / np.dot(inverse, inverse))


def _converges(deviations: List[float]) -> bool:
    decreasing = all(b < a for a, b in zip(deviations, deviations[1:]))
    return decreasing and deviations[-1] <= CONVERGENCE_THRESHOLD


def run_kernel_convergence(spec: SweepSpec) -> KernelConvergenceReport:
    """
    Deviation of the finite-tau coefficients from the tau -> infinity ones.

    Args:
        spec: Sweep over tau, values given in heterodyne periods 2 pi / omega_H

    Returns:
        KernelConvergenceReport with one row per tau and a verdict naming the
        conventions that converge
    """
    if spec.swept_parameter is not SweptParameter.TAU:
        raise ConfigurationError(f"kernel convergence sweeps tau, not {spec.swept_parameter.value}")
    if any(v <= 0 for v in spec.values):
        raise ConfigurationError(f"tau values must be positive: {spec.values}")

    p = spec.held
    check_grid(spec.grid, p)
    base = SignalOperatorSpec(omega_h=p.omega_h, theta_h=p.theta_h)
    infinite = build_signal_operator_infinite(spec.grid, base)
    conventions = (PhaseConvention.KERNEL_ONLY, PhaseConvention.OUTER_PHASE)

    rows = []
    for periods in spec.values:
        tau = periods * base.period
        deviations = {
            convention: windowed_deviation(spec.grid, replace(base, tau=tau, convention=convention), infinite)
            for convention in conventions
        }
        rows.append(KernelConvergenceRow(
            tau_periods=periods,
            tau=tau,
            deviation_kernel_only=deviations[PhaseConvention.KERNEL_ONLY],
            deviation_outer_phase=deviations[PhaseConvention.OUTER_PHASE],
        ))
        logger.debug(f"  tau={periods:g} periods: {deviations[PhaseConvention.KERNEL_ONLY]:.3e} / "
                     f"{deviations[PhaseConvention.OUTER_PHASE]:.3e}")

    taus = [row.tau for row in rows]
    fitted = {c: fit_inverse_tau(taus, [row.deviation(c) for row in rows]) for c in conventions}
    converging = tuple(c for c in conventions if _converges([row.deviation(c) for row in rows]))
    identical = all(
        math.isclose(row.deviation_kernel_only, row.deviation_outer_phase, rel_tol=1e-12, abs_tol=1e-15)
        for row in rows
    )

    names = ", ".join(c.value for c in converging) or "none"
    verdict = f"converging: {names}"
    if identical:
        verdict += " (conventions identical)"
    logger.info(f"Kernel convergence at theta_h={p.theta_h:g}: {verdict}")
    return KernelConvergenceReport(
        rows=tuple(rows),
        fitted_c=fitted,
        converging=converging,
        conventions_identical=identical,
        verdict=verdict,
    )
