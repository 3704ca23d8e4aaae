"""Tests for the brute-force tensor-product oracle."""

import unittest

import numpy as np

from src.core.errors import ResourceBoundError
from src.fock.states import SingleModeSpec
from src.operators.algebra import OperatorSum, square
from src.operators.evaluation import ProductState, expectation
from src.operators.grid import ModeGrid, SignalOperatorSpec
from src.operators.oracle import brute_force_expectation
from src.operators.signal import build_signal_operator_infinite
from src.workflows.verification import random_instance


class TestBruteForceOracle(unittest.TestCase):
    """Agreement with the factorized evaluator and resource limits."""

    def setUp(self):
        self.grid = ModeGrid.heterodyne(100.0, 1.0)
        self.s_op = build_signal_operator_infinite(self.grid, SignalOperatorSpec(omega_h=1.0, theta_h=0.3))
        lo = SingleModeSpec.squeezed_coherent(1.0 + 0.5j, 0.4)
        self.state = ProductState.target_present(
            self.grid, lo, 0.7 - 0.2j, cutoff=15, target_cutoff=15, validate=False
        )

    def test_signal_mean_agrees(self):
        fast = expectation(self.state, self.s_op)
        slow = brute_force_expectation(self.state, self.s_op)
        self.assertLess(abs(fast - slow), 1e-8 * max(1.0, abs(slow)))

    def test_second_moment_agrees(self):
        squared = square(self.s_op)
        fast = expectation(self.state, squared)
        slow = brute_force_expectation(self.state, squared)
        self.assertLess(abs(fast - slow), 1e-8 * max(1.0, abs(slow)))

    def test_truncation_edge(self):
        """Raising from the top level is dropped the same way in both evaluators."""
        state = ProductState.from_specs([SingleModeSpec.coherent(1.5)], [3], validate=False)
        op = OperatorSum.from_terms(1, [(1.0, [(0, False), (0, True)])])
        self.assertAlmostEqual(expectation(state, op), brute_force_expectation(state, op), places=12)

    def test_empty_operator(self):
        self.assertEqual(brute_force_expectation(self.state, OperatorSum(3)), 0)

    def test_random_instances_agree(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            state, op = random_instance(rng)
            fast = expectation(state, op)
            slow = brute_force_expectation(state, op, max_cutoff=25)
            self.assertLess(abs(fast - slow), 1e-8 * max(1.0, abs(slow)))

    def test_too_many_modes(self):
        state = ProductState.from_specs([SingleModeSpec.vacuum()] * 4)
        with self.assertRaises(ResourceBoundError):
            brute_force_expectation(state, OperatorSum(4))

    def test_cutoff_too_large(self):
        state = ProductState.from_specs([SingleModeSpec.coherent(1.0)], [40])
        with self.assertRaises(ResourceBoundError):
            brute_force_expectation(state, OperatorSum(1))


if __name__ == '__main__':
    unittest.main()
