"""
hetsqueeze - Weighted sums of ordered ladder-operator monomials

Operators are kept as formal sums; nothing is normal-ordered or simplified.
Evaluation handles operator ordering exactly, so commutator identities show up
as numeric results rather than rewrite rules.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, NamedTuple, Tuple

from ..core.errors import InvalidArgumentError

HERMITICITY_TOLERANCE = 1e-12


class Ladder(NamedTuple):
    """One factor a_mode (dagger=False) or a_mode^dag (dagger=True)."""

    mode: int
    dagger: bool

    def __str__(self) -> str:
        return f"a{'+' if self.dagger else ''}_{self.mode}"


Monomial = Tuple[Ladder, ...]


def creation(mode: int) -> Ladder:
    return Ladder(mode, True)


def annihilation(mode: int) -> Ladder:
    return Ladder(mode, False)


def adjoint_monomial(monomial: Monomial) -> Monomial:
    """Reverse the order and flip every dagger."""
    return tuple(Ladder(f.mode, not f.dagger) for f in reversed(monomial))


@dataclass(frozen=True)
class Term:
    coeff: complex
    monomial: Monomial

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "monomial", tuple(Ladder(int(m), bool(d)) for m, d in self.monomial))

    @property
    def degree(self) -> int:
        return len(self.monomial)

    def adjoint(self) -> "Term":
        return Term(self.coeff.conjugate(), adjoint_monomial(self.monomial))

    def __str__(self) -> str:
        return f"({self.coeff:.6g}) " + " ".join(str(f) for f in self.monomial)


@dataclass(frozen=True)
class OperatorSum:
    """Finite weighted sum of ladder monomials on a ``num_modes``-mode space."""

    num_modes: int
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        for term in terms:
            for factor in term.monomial:
                if not 0 <= factor.mode < self.num_modes:
                    raise InvalidArgumentError(
                        f"factor {factor} outside a {self.num_modes}-mode space"
                    )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        if self.num_modes != other.num_modes:
            raise InvalidArgumentError("cannot add operators on different mode spaces")
        return OperatorSum(self.num_modes, self.terms + other.terms)

    @property
    def degree(self) -> int:
        return max((t.degree for t in self.terms), default=0)

    def coefficients(self) -> Dict[Monomial, complex]:
        """Coefficient per distinct monomial (repeated monomials are summed)."""
        merged: Dict[Monomial, complex] = defaultdict(complex)
        for term in self.terms:
            merged[term.monomial] += term.coeff
        return dict(merged)

    def adjoint(self) -> "OperatorSum":
        return OperatorSum(self.num_modes, tuple(t.adjoint() for t in self.terms))

    def filtered(self, keep) -> "OperatorSum":
        """Sub-sum of the terms for which ``keep(term)`` is true."""
        return OperatorSum(self.num_modes, tuple(t for t in self.terms if keep(t)))

    @classmethod
    def from_terms(cls, num_modes: int, terms: Iterable[Tuple[complex, Iterable[Tuple[int, bool]]]]) -> "OperatorSum":
        return cls(num_modes, tuple(Term(c, tuple(m)) for c, m in terms))


def is_hermitian(op: OperatorSum, rel_tol: float = HERMITICITY_TOLERANCE) -> bool:
    """
    True when every monomial's adjoint is present with the conjugate coefficient.

    Comparison is per monomial after merging duplicates, relative to the
    largest coefficient magnitude.
    """
    coeffs = op.coefficients()
    if not coeffs:
        return True
    scale = max(abs(c) for c in coeffs.values()) or 1.0
    for monomial, coeff in coeffs.items():
        partner = coeffs.get(adjoint_monomial(monomial), 0j)
        if abs(partner - coeff.conjugate()) > rel_tol * scale:
            return False
    return True


def square(op: OperatorSum) -> OperatorSum:
    """Formal product op*op: every ordered pair of terms, monomials concatenated."""
    if op.degree > 2:
        raise InvalidArgumentError(f"square expects monomials of degree <= 2, got {op.degree}")
    terms = tuple(
        Term(left.coeff * right.coeff, left.monomial + right.monomial)
        for left in op.terms
        for right in op.terms
    )
    return OperatorSum(op.num_modes, terms)
