"""
hetsqueeze - Single-mode states in a truncated number basis

Builds vacuum, coherent and squeezed-coherent states as normalized amplitude
vectors over occupations 0..cutoff.

Squeezed-coherent convention: |alpha, xi> = D(alpha) S(xi) |0> with
    D(alpha) = exp(alpha a^dag - alpha^* a)
    S(xi)    = exp((xi^* a^2 - xi a^dag^2) / 2)
which gives <a> = alpha and <a^dag a> = |alpha|^2 + sinh^2 |xi|.
"""

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln
from scipy.stats import poisson

from ..core.errors import CutoffTooSmallError, InvalidArgumentError
from ..core.logger import setup_logger

logger = setup_logger("fock")

NORM_TOLERANCE = 1e-12
COHERENT_TAIL_TOLERANCE = 1e-10
PHOTON_NUMBER_TOLERANCE = 1e-6
SQUEEZED_TAIL_PROBABILITY = 1e-12
MAX_SQUEEZING = 3.0
VACUUM_CUTOFF = 4


@dataclass(frozen=True)
class FockVector:
    """Normalized amplitudes of one mode over occupations 0..cutoff (read-only)."""

    cutoff: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.cutoff < 1:
            raise InvalidArgumentError(f"cutoff must be >= 1, got {self.cutoff}")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.cutoff + 1,):
            raise InvalidArgumentError(
                f"expected {self.cutoff + 1} amplitudes for cutoff {self.cutoff}, got shape {amps.shape}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidArgumentError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    @property
    def mean_photon_number(self) -> float:
        return float(np.dot(np.arange(self.cutoff + 1), self.probabilities))


class ModeKind(str, Enum):
    VACUUM = "vacuum"
    COHERENT = "coherent"
    SQUEEZED_COHERENT = "squeezed_coherent"


@dataclass(frozen=True)
class SingleModeSpec:
    """
    Declarative preparation of one mode.

    ``alpha`` is the displacement (beta for a coherent mode); ``xi`` the squeeze
    parameter, used only by squeezed-coherent modes.
    """

    kind: ModeKind
    alpha: complex = 0j
    xi: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "xi", complex(self.xi))
        if self.kind is ModeKind.VACUUM and (self.alpha != 0 or self.xi != 0):
            raise InvalidArgumentError("vacuum mode carries no parameters")
        if self.kind is ModeKind.COHERENT and self.xi != 0:
            raise InvalidArgumentError("coherent mode carries no squeeze parameter")

    @classmethod
    def vacuum(cls) -> "SingleModeSpec":
        return cls(ModeKind.VACUUM)

    @classmethod
    def coherent(cls, beta: complex) -> "SingleModeSpec":
        return cls(ModeKind.COHERENT, alpha=beta)

    @classmethod
    def squeezed_coherent(cls, alpha: complex, xi: complex) -> "SingleModeSpec":
        return cls(ModeKind.SQUEEZED_COHERENT, alpha=alpha, xi=xi)

    @property
    def r(self) -> float:
        """Squeezing parameter |xi|."""
        return abs(self.xi)

    @property
    def mean_photon_number(self) -> float:
        return abs(self.alpha) ** 2 + math.sinh(self.r) ** 2

    def default_cutoff(self) -> int:
        if self.kind is ModeKind.VACUUM:
            return VACUUM_CUTOFF
        return default_cutoff(self.alpha, self.xi)

    def realize(self, cutoff: Optional[int] = None, validate: bool = True) -> FockVector:
        """Build the amplitude vector for this preparation."""
        if self.kind is ModeKind.VACUUM:
            return build_vacuum(cutoff if cutoff is not None else VACUUM_CUTOFF)
        if self.kind is ModeKind.COHERENT:
            return build_coherent(self.alpha, cutoff, validate=validate)
        return build_squeezed_coherent(self.alpha, self.xi, cutoff, validate=validate)


def default_cutoff(alpha: complex, xi: complex = 0j) -> int:
    """
    Cutoff that keeps the number-distribution tail negligible.

    The displacement part follows ceil(4 (|alpha| + sinh r + 1)^2). Squeezed
    vacuum decays only like tanh(r)^n, so for r > 0 the levels needed to push
    tanh(r)^n below 1e-12 are added on top.
    """
    r = abs(xi)
    cutoff = math.ceil(4.0 * (abs(alpha) + math.sinh(r) + 1.0) ** 2)
    if r > 0:
        cutoff += math.ceil(math.log(SQUEEZED_TAIL_PROBABILITY) / math.log(math.tanh(r)))
    return max(1, cutoff)


def _check_cutoff(cutoff: int) -> None:
    if isinstance(cutoff, bool) or not isinstance(cutoff, (int, np.integer)):
        raise InvalidArgumentError(f"cutoff must be an integer, got {cutoff!r}")
    if cutoff < 1:
        raise InvalidArgumentError(f"cutoff must be >= 1, got {cutoff}")


def _normalized(amps: np.ndarray) -> np.ndarray:
    return amps / np.sqrt(np.vdot(amps, amps).real)


def build_vacuum(cutoff: int) -> FockVector:
    """Vacuum |0> truncated at ``cutoff``."""
    _check_cutoff(cutoff)
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0] = 1.0
    return FockVector(cutoff, amps)


def build_coherent(beta: complex, cutoff: Optional[int] = None, *, validate: bool = True) -> FockVector:
    """
    Coherent state |beta>, renormalized after truncation.

    Raises:
        CutoffTooSmallError: if the Poisson tail beyond ``cutoff`` is >= 1e-10
            (skipped when ``validate`` is False)
    """
    beta = complex(beta)
    if cutoff is None:
        cutoff = default_cutoff(beta)
    _check_cutoff(cutoff)
    if beta == 0:
        return build_vacuum(cutoff)

    mean = abs(beta) ** 2
    if validate:
        tail = float(poisson.sf(cutoff, mean))
        if tail >= COHERENT_TAIL_TOLERANCE:
            minimal = max(1, int(poisson.isf(COHERENT_TAIL_TOLERANCE, mean)))
            raise CutoffTooSmallError(
                f"Poisson tail {tail:.3e} beyond cutoff {cutoff} for |beta|^2={mean:g}", minimal
            )

    n = np.arange(cutoff + 1)
    log_magnitude = n * math.log(abs(beta)) - 0.5 * gammaln(n + 1)
    amps = np.exp(log_magnitude - log_magnitude.max()) * np.exp(1j * cmath.phase(beta) * n)
    logger.debug(f"Coherent state beta={beta} at cutoff {cutoff}")
    return FockVector(cutoff, _normalized(amps))


def _lowering(dim: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, dim)), offsets=1, shape=(dim, dim), format="csr", dtype=complex)


def build_squeezed_coherent(
    alpha: complex,
    xi: complex,
    cutoff: Optional[int] = None,
    *,
    validate: bool = True,
) -> FockVector:
    """
    Squeezed-coherent state D(alpha) S(xi) |0>.

    The truncated anti-Hermitian generators are exponentiated against the
    vacuum in a padded working space, then projected onto 0..cutoff and
    renormalized.

    Raises:
        InvalidArgumentError: if |xi| exceeds the supported envelope (3)
        CutoffTooSmallError: if the mean photon number misses |alpha|^2 + sinh^2 r
            by more than 1e-6 * max(1, nbar) (skipped when ``validate`` is False)
    """
    alpha = complex(alpha)
    xi = complex(xi)
    r = abs(xi)
    if r > MAX_SQUEEZING:
        raise InvalidArgumentError(f"squeezing parameter r={r:g} outside supported envelope r <= {MAX_SQUEEZING:g}")
    adequate = default_cutoff(alpha, xi)
    if cutoff is None:
        cutoff = adequate
    _check_cutoff(cutoff)
    if alpha == 0 and xi == 0:
        return build_vacuum(cutoff)

    working = max(2 * cutoff, cutoff + 32)
    a = _lowering(working)
    adag = a.conj().T.tocsr()
    state = np.zeros(working, dtype=complex)
    state[0] = 1.0
    if xi != 0:
        squeeze_generator = 0.5 * (np.conj(xi) * (a @ a) - xi * (adag @ adag))
        state = expm_multiply(squeeze_generator.tocsc(), state)
    if alpha != 0:
        displace_generator = alpha * adag - np.conj(alpha) * a
        state = expm_multiply(displace_generator.tocsc(), state)

    vector = FockVector(cutoff, _normalized(np.asarray(state[: cutoff + 1])))
    expected = abs(alpha) ** 2 + math.sinh(r) ** 2
    deviation = abs(vector.mean_photon_number - expected)
    logger.debug(
        f"Squeezed state alpha={alpha} xi={xi} cutoff={cutoff} working={working} "
        f"photon-number deviation={deviation:.3e}"
    )
    if validate and deviation > PHOTON_NUMBER_TOLERANCE * max(1.0, expected):
        raise CutoffTooSmallError(
            f"mean photon number off by {deviation:.3e} at cutoff {cutoff}", max(adequate, cutoff + 1)
        )
    return vector
