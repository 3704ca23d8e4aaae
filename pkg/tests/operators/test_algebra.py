"""Tests for ladder-monomial operator sums."""

import unittest

from src.core.errors import InvalidArgumentError
from src.operators.algebra import (
    Ladder,
    OperatorSum,
    Term,
    adjoint_monomial,
    annihilation,
    creation,
    is_hermitian,
    square,
)


class TestOperatorSum(unittest.TestCase):
    """Construction, merging and adjoints."""

    def setUp(self):
        self.hop = OperatorSum.from_terms(2, [
            (1 + 2j, [(0, True), (1, False)]),
            (1 - 2j, [(1, True), (0, False)]),
        ])

    def test_factor_helpers(self):
        self.assertEqual(creation(3), Ladder(3, True))
        self.assertEqual(annihilation(3), Ladder(3, False))

    def test_mode_out_of_range(self):
        with self.assertRaises(InvalidArgumentError):
            OperatorSum.from_terms(1, [(1.0, [(1, False)])])

    def test_adjoint_monomial_reverses(self):
        monomial = (creation(0), annihilation(1), annihilation(1))
        self.assertEqual(adjoint_monomial(monomial), (creation(1), creation(1), annihilation(0)))

    def test_term_adjoint(self):
        term = Term(2j, (creation(0), annihilation(1)))
        adjoint = term.adjoint()
        self.assertEqual(adjoint.coeff, -2j)
        self.assertEqual(adjoint.monomial, (creation(1), annihilation(0)))

    def test_coefficients_merge_duplicates(self):
        op = OperatorSum.from_terms(1, [(1.0, [(0, True)]), (2.0, [(0, True)])])
        self.assertEqual(op.coefficients(), {(creation(0),): 3.0})

    def test_addition(self):
        total = self.hop + self.hop
        self.assertEqual(len(total), 4)
        with self.assertRaises(InvalidArgumentError):
            self.hop + OperatorSum(3)

    def test_degree(self):
        self.assertEqual(self.hop.degree, 2)
        self.assertEqual(OperatorSum(2).degree, 0)

    def test_filtered(self):
        kept = self.hop.filtered(lambda t: t.monomial[0].mode == 0)
        self.assertEqual(len(kept), 1)


class TestHermiticity(unittest.TestCase):
    """Hermiticity check and formal squaring."""

    def test_hermitian_pair(self):
        op = OperatorSum.from_terms(2, [
            (1 + 2j, [(0, True), (1, False)]),
            (1 - 2j, [(1, True), (0, False)]),
        ])
        self.assertTrue(is_hermitian(op))

    def test_wrong_phase_not_hermitian(self):
        op = OperatorSum.from_terms(2, [
            (1 + 2j, [(0, True), (1, False)]),
            (1 + 2j, [(1, True), (0, False)]),
        ])
        self.assertFalse(is_hermitian(op))

    def test_missing_partner_not_hermitian(self):
        self.assertFalse(is_hermitian(OperatorSum.from_terms(1, [(1.0, [(0, False)])])))

    def test_sum_with_adjoint_is_hermitian(self):
        op = OperatorSum.from_terms(2, [(0.3 - 1j, [(0, False), (1, False)]), (2.0, [(1, True)])])
        self.assertTrue(is_hermitian(op + op.adjoint()))

    def test_square_term_count(self):
        op = OperatorSum.from_terms(2, [(1.0, [(0, True), (1, False)]), (2.0, [(1, True), (0, False)])])
        squared = square(op)
        self.assertEqual(len(squared), 4)
        self.assertEqual(squared.degree, 4)
        self.assertIn(
            (creation(0), annihilation(1), creation(1), annihilation(0)),
            squared.coefficients(),
        )
        self.assertEqual(
            squared.coefficients()[(creation(0), annihilation(1), creation(1), annihilation(0))], 2.0
        )

    def test_square_rejects_high_degree(self):
        op = OperatorSum.from_terms(1, [(1.0, [(0, True), (0, True), (0, False)])])
        with self.assertRaises(InvalidArgumentError):
            square(op)


if __name__ == '__main__':
    unittest.main()
