"""
hetsqueeze - Error hierarchy

All errors raised by the package derive from HeterodyneError so callers can
catch the whole family; argument errors are also ValueErrors.
"""

from typing import Optional


class HeterodyneError(Exception):
    """Base class for all hetsqueeze errors."""


class InvalidArgumentError(HeterodyneError, ValueError):
    """An argument is outside the documented domain."""


class CutoffTooSmallError(InvalidArgumentError):
    """The Fock-space cutoff cannot represent the requested state accurately."""

    def __init__(self, message: str, minimal_cutoff: int):
        super().__init__(f"{message} (minimal adequate cutoff: {minimal_cutoff})")
        self.minimal_cutoff = minimal_cutoff


class EmptyOperatorError(InvalidArgumentError):
    """No mode pair of the grid matches the heterodyne frequency."""


class ResourceBoundError(HeterodyneError):
    """The brute-force oracle was asked for a space beyond its memory guard."""


class UndefinedSNRError(HeterodyneError, ArithmeticError):
    """The target-absent variance vanishes, so the SNR statistic is degenerate."""


class ConfigurationError(HeterodyneError):
    """Experiment inputs are inconsistent with each other."""


class NumericalResidueError(HeterodyneError):
    """A quantity that must be real carries an imaginary part above tolerance."""


class UsageError(HeterodyneError):
    """Command-line or config-file input could not be turned into a RunConfig."""

    def __init__(self, message: str, key: Optional[str] = None):
        prefix = f"{key}: " if key else ""
        super().__init__(f"{prefix}{message}")
        self.key = key
