"""
hetsqueeze - Brute-force tensor-product oracle

Independent check of the factorized evaluator: the full product state is
expanded into a sparse map from occupation tuples to amplitudes, and every
monomial is applied factor by factor with explicit ladder actions.
"""

import math
from typing import Dict, Tuple

from ..core.errors import ResourceBoundError
from .algebra import Monomial, OperatorSum
from .evaluation import ProductState, _check_compatible

Occupation = Tuple[int, ...]
SparseState = Dict[Occupation, complex]

MAX_ORACLE_MODES = 3
MAX_ORACLE_CUTOFF = 30


def _expand(state: ProductState) -> SparseState:
    expanded: SparseState = {(): 1 + 0j}
    for vector in state.vectors:
        nonzero = [(n, complex(a)) for n, a in enumerate(vector.amps) if a != 0]
        expanded = {
            occupation + (n,): amp * a
            for occupation, amp in expanded.items()
            for n, a in nonzero
        }
    return expanded


def _apply(monomial: Monomial, vector: SparseState, cutoffs: Tuple[int, ...]) -> SparseState:
    for factor in reversed(monomial):
        result: SparseState = {}
        for occupation, amp in vector.items():
            n = occupation[factor.mode]
            if factor.dagger:
                if n == cutoffs[factor.mode]:
                    continue
                target, weight = n + 1, math.sqrt(n + 1)
            else:
                if n == 0:
                    continue
                target, weight = n - 1, math.sqrt(n)
            moved = occupation[:factor.mode] + (target,) + occupation[factor.mode + 1:]
            result[moved] = result.get(moved, 0j) + weight * amp
        vector = result
        if not vector:
            break
    return vector


def brute_force_expectation(
    state: ProductState,
    op: OperatorSum,
    max_modes: int = MAX_ORACLE_MODES,
    max_cutoff: int = MAX_ORACLE_CUTOFF,
) -> complex:
    """
    <psi| op |psi> evaluated in the full tensor-product space.

    Raises:
        ResourceBoundError: if the state has more than ``max_modes`` modes or a
            mode cutoff above ``max_cutoff``
    """
    if state.num_modes > max_modes:
        raise ResourceBoundError(f"oracle limited to {max_modes} modes, state has {state.num_modes}")
    if any(c > max_cutoff for c in state.cutoffs):
        raise ResourceBoundError(f"oracle limited to cutoff {max_cutoff}, state cutoffs {state.cutoffs}")
    _check_compatible(state, op)
    if not op.terms:
        return 0j

    psi = _expand(state)
    total = 0j
    for term in op.terms:
        acted = _apply(term.monomial, psi, state.cutoffs)
        overlap = sum(psi[occ].conjugate() * amp for occ, amp in acted.items() if occ in psi)
        total += term.coeff * overlap
    return complex(total)
