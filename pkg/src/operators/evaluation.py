"""
hetsqueeze - Expectation values in product states

Operators on different modes commute, so a monomial's expectation in a product
state factorizes into per-mode ladder strings (intra-mode order preserved).
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from ..core.errors import InvalidArgumentError, NumericalResidueError
from ..core.logger import setup_logger
from ..fock.ladder import ladder_string_expectation
from ..fock.states import FockVector, SingleModeSpec
from .algebra import Monomial, OperatorSum, is_hermitian, square
from .grid import ModeGrid

logger = setup_logger("operators")

MAX_MONOMIAL_DEGREE = 4
RESIDUE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ProductState:
    """One prepared mode per grid mode, with the realized amplitude vectors."""

    specs: Tuple[SingleModeSpec, ...]
    vectors: Tuple[FockVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "specs", tuple(self.specs))
        object.__setattr__(self, "vectors", tuple(self.vectors))
        if len(self.specs) != len(self.vectors):
            raise InvalidArgumentError(
                f"{len(self.specs)} mode specs but {len(self.vectors)} state vectors"
            )

    @property
    def num_modes(self) -> int:
        return len(self.vectors)

    @property
    def cutoffs(self) -> Tuple[int, ...]:
        return tuple(v.cutoff for v in self.vectors)

    @classmethod
    def from_specs(
        cls,
        specs: Sequence[SingleModeSpec],
        cutoffs: Optional[Sequence[Optional[int]]] = None,
        validate: bool = True,
    ) -> "ProductState":
        if cutoffs is None:
            cutoffs = [None] * len(specs)
        if len(cutoffs) != len(specs):
            raise InvalidArgumentError("one cutoff per mode spec expected")
        vectors = tuple(spec.realize(cutoff, validate=validate) for spec, cutoff in zip(specs, cutoffs))
        return cls(tuple(specs), vectors)

    @classmethod
    def target_absent(
        cls,
        grid: ModeGrid,
        lo: SingleModeSpec,
        cutoff: Optional[int] = None,
        validate: bool = True,
    ) -> "ProductState":
        """LO mode prepared as ``lo``; every other mode in vacuum."""
        specs = [SingleModeSpec.vacuum()] * grid.size
        specs[grid.lo_index] = lo
        cutoffs = [None] * grid.size
        cutoffs[grid.lo_index] = cutoff
        return cls.from_specs(specs, cutoffs, validate=validate)

    @classmethod
    def target_present(
        cls,
        grid: ModeGrid,
        lo: SingleModeSpec,
        beta: complex,
        cutoff: Optional[int] = None,
        target_cutoff: Optional[int] = None,
        validate: bool = True,
    ) -> "ProductState":
        """Target-absent state plus a coherent target-return mode |beta>."""
        specs = [SingleModeSpec.vacuum()] * grid.size
        specs[grid.lo_index] = lo
        specs[grid.target_index] = SingleModeSpec.coherent(beta)
        cutoffs = [None] * grid.size
        cutoffs[grid.lo_index] = cutoff
        cutoffs[grid.target_index] = target_cutoff
        return cls.from_specs(specs, cutoffs, validate=validate)


def _split_by_mode(monomial: Monomial) -> Dict[int, Tuple[bool, ...]]:
    per_mode: Dict[int, list] = {}
    for factor in monomial:
        per_mode.setdefault(factor.mode, []).append(factor.dagger)
    return {mode: tuple(daggers) for mode, daggers in per_mode.items()}


def _check_compatible(state: ProductState, op: OperatorSum) -> None:
    if state.num_modes != op.num_modes:
        raise InvalidArgumentError(
            f"state has {state.num_modes} modes but operator acts on {op.num_modes}"
        )
    if op.degree > MAX_MONOMIAL_DEGREE:
        raise InvalidArgumentError(f"monomial degree {op.degree} exceeds {MAX_MONOMIAL_DEGREE}")


def expectation(state: ProductState, op: OperatorSum) -> complex:
    """<psi| op |psi> by per-mode factorization of each monomial."""
    _check_compatible(state, op)
    cache: Dict[Tuple[int, Tuple[bool, ...]], complex] = {}
    total = 0j
    for term in op.terms:
        value = term.coeff
        for mode, daggers in _split_by_mode(term.monomial).items():
            key = (mode, daggers)
            if key not in cache:
                cache[key] = ladder_string_expectation(state.vectors[mode], daggers)
            value *= cache[key]
            if value == 0:
                break
        total += value
    return total


def variance(state: ProductState, op: OperatorSum) -> float:
    """
    <op^2> - <op>^2 for a Hermitian op. Negative round-off within tolerance comes back as 0.

    Raises:
        InvalidArgumentError: if op fails the Hermiticity check
        NumericalResidueError: if the imaginary residue exceeds 1e-10 relative,
            or the result is negative beyond that tolerance
    """
    if not is_hermitian(op):
        raise InvalidArgumentError("variance needs a Hermitian operator")
    mean = expectation(state, op)
    second = expectation(state, square(op))
    value = second - mean * mean
    scale = max(1.0, abs(second), abs(mean) ** 2)
    if abs(value.imag) > RESIDUE_TOLERANCE * scale:
        raise NumericalResidueError(f"variance has imaginary residue {value.imag:.3e} (scale {scale:.3e})")
    if value.real < -RESIDUE_TOLERANCE * scale:
        raise NumericalResidueError(f"variance is negative: {value.real:.3e}")
    return max(0.0, float(value.real))
