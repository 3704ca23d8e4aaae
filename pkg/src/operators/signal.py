"""
hetsqueeze - Heterodyne signal operators

Builds, as ladder-monomial sums over a ModeGrid:
- the tau -> infinity heterodyne statistic S restricted to pairs with
  |w_l - w_k| = w_H,
- the zero-frequency statistic S' (time-averaged photocurrent),
- the finite-tau statistic over all ordered pairs, weighted by the
  time-average kernel of cos(w_H t + theta_H) exp(i (w_l - w_k) t).
"""

import cmath
import math

import numpy as np

from ..core.errors import EmptyOperatorError, InvalidArgumentError
from ..core.logger import setup_logger
from .algebra import OperatorSum, Term, annihilation, creation
from .grid import ModeGrid, PhaseConvention, SignalOperatorSpec

logger = setup_logger("operators")


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _pair_term(coeff: complex, l: int, k: int) -> Term:
    return Term(coeff, (creation(l), annihilation(k)))


def build_signal_operator_infinite(grid: ModeGrid, spec: SignalOperatorSpec) -> OperatorSum:
    """
    S = (g/2) sum_{|w_l - w_k| = w_H} sqrt(w_l w_k) a_l^dag a_k exp(-i sign(w_l - w_k) theta_H)

    Raises:
        EmptyOperatorError: if no ordered pair of the grid matches w_H
    """
    g = grid.scale_g
    terms = []
    for l, omega_l in enumerate(grid.freqs):
        for k, omega_k in enumerate(grid.freqs):
            if l == k:
                continue
            delta = omega_l - omega_k
            if abs(abs(delta) - spec.omega_h) > spec.tolerance:
                continue
            coeff = 0.5 * g * math.sqrt(omega_l * omega_k) * cmath.exp(-1j * _sign(delta) * spec.theta_h)
            terms.append(_pair_term(coeff, l, k))
    if not terms:
        raise EmptyOperatorError(
            f"no mode pair of {grid.freqs} differs by omega_h={spec.omega_h} "
            f"(tolerance {spec.tolerance:.3g})"
        )
    logger.debug(f"Signal operator (tau=inf) with {len(terms)} terms on {grid.size} modes")
    return OperatorSum(grid.size, tuple(terms))


def build_sprime(grid: ModeGrid) -> OperatorSum:
    """S' = sum_k g w_k a_k^dag a_k, the time-averaged photocurrent."""
    terms = tuple(
        _pair_term(grid.scale_g * omega, k, k) for k, omega in enumerate(grid.freqs)
    )
    return OperatorSum(grid.size, terms)


def finite_tau_kernel(omega_l: float, omega_k: float, spec: SignalOperatorSpec) -> complex:
    """
    Time-average kernel (1/tau) int_0^tau cos(w_H t + theta_H) exp(i (w_l - w_k) t) dt.

    Written as 1/2 [e^{i theta} e^{i x+ tau/2} sinc(x+ tau/2) + e^{-i theta} e^{i x- tau/2} sinc(x- tau/2)]
    with x+- = (w_l - w_k) +- w_H, which has no removable singularity at x+- = 0.
    """
    if not (math.isfinite(spec.tau) and spec.tau > 0):
        raise InvalidArgumentError(f"finite-tau kernel needs a finite positive tau, got {spec.tau}")
    tau = spec.tau
    delta = omega_l - omega_k
    total = 0j
    for x, phase in ((delta + spec.omega_h, spec.theta_h), (delta - spec.omega_h, -spec.theta_h)):
        half = 0.5 * x * tau
        # np.sinc(u) = sin(pi u) / (pi u)
        total += cmath.exp(1j * (phase + half)) * float(np.sinc(half / math.pi))
    return 0.5 * total


def build_signal_operator_finite(grid: ModeGrid, spec: SignalOperatorSpec) -> OperatorSum:
    """
    Finite-tau statistic: one term per ordered pair (l, k), diagonal included.

    The coefficient is g sqrt(w_l w_k) K(w_l, w_k), times exp(-i sign(w_l - w_k) theta_H)
    under PhaseConvention.OUTER_PHASE.
    """
    if spec.is_infinite:
        raise InvalidArgumentError("finite-tau builder needs a finite tau")
    g = grid.scale_g
    terms = []
    for l, omega_l in enumerate(grid.freqs):
        for k, omega_k in enumerate(grid.freqs):
            coeff = g * math.sqrt(omega_l * omega_k) * finite_tau_kernel(omega_l, omega_k, spec)
            if spec.convention is PhaseConvention.OUTER_PHASE:
                coeff *= cmath.exp(-1j * _sign(omega_l - omega_k) * spec.theta_h)
            terms.append(_pair_term(coeff, l, k))
    return OperatorSum(grid.size, tuple(terms))


def build_signal_operator(grid: ModeGrid, spec: SignalOperatorSpec) -> OperatorSum:
    """Dispatch on tau: infinite selects the restricted sum, finite the full kernel sum."""
    if spec.is_infinite:
        return build_signal_operator_infinite(grid, spec)
    return build_signal_operator_finite(grid, spec)
