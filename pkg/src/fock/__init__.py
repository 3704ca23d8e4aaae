"""Single-mode states in a truncated number basis."""

from .ladder import MomentTable, ladder_string_expectation, moments, number_variance
from .states import (
    FockVector,
    ModeKind,
    SingleModeSpec,
    build_coherent,
    build_squeezed_coherent,
    build_vacuum,
    default_cutoff,
)

__all__ = [
    "FockVector",
    "ModeKind",
    "MomentTable",
    "SingleModeSpec",
    "build_coherent",
    "build_squeezed_coherent",
    "build_vacuum",
    "default_cutoff",
    "ladder_string_expectation",
    "moments",
    "number_variance",
]
