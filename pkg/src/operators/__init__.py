"""Heterodyne signal operators and their evaluation in product states."""

from .algebra import Ladder, OperatorSum, Term, is_hermitian, square
from .evaluation import ProductState, expectation, variance
from .grid import ModeGrid, PhaseConvention, SignalOperatorSpec
from .oracle import brute_force_expectation
from .signal import (
    build_signal_operator,
    build_signal_operator_finite,
    build_signal_operator_infinite,
    build_sprime,
    finite_tau_kernel,
)

__all__ = [
    "Ladder",
    "ModeGrid",
    "OperatorSum",
    "PhaseConvention",
    "ProductState",
    "SignalOperatorSpec",
    "Term",
    "brute_force_expectation",
    "build_signal_operator",
    "build_signal_operator_finite",
    "build_signal_operator_infinite",
    "build_sprime",
    "expectation",
    "finite_tau_kernel",
    "is_hermitian",
    "square",
    "variance",
]
