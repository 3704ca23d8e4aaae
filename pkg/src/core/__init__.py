"""Core utilities for configuration, logging and errors."""

from .errors import (
    ConfigurationError,
    CutoffTooSmallError,
    EmptyOperatorError,
    HeterodyneError,
    InvalidArgumentError,
    NumericalResidueError,
    ResourceBoundError,
    UndefinedSNRError,
    UsageError,
)
from .logger import setup_logger

__all__ = [
    "ConfigurationError",
    "CutoffTooSmallError",
    "EmptyOperatorError",
    "HeterodyneError",
    "InvalidArgumentError",
    "NumericalResidueError",
    "ResourceBoundError",
    "UndefinedSNRError",
    "UsageError",
    "setup_logger",
]
