"""Tests for factorized expectation values and variances in product states."""

import cmath
import math

import numpy as np
import pytest

from src.core.errors import InvalidArgumentError
from src.fock.states import SingleModeSpec, build_vacuum
from src.operators.algebra import OperatorSum
from src.operators.evaluation import ProductState, expectation, variance
from src.operators.grid import SignalOperatorSpec
from src.operators.signal import build_signal_operator_infinite, build_sprime


@pytest.fixture
def two_coherent():
    """|0.8+0.2i> (x) |-0.5i>."""
    return ProductState.from_specs([SingleModeSpec.coherent(0.8 + 0.2j), SingleModeSpec.coherent(-0.5j)])


class TestProductState:
    """Construction helpers."""

    def test_mismatched_lengths(self):
        with pytest.raises(InvalidArgumentError):
            ProductState((SingleModeSpec.vacuum(),), ())

    def test_one_cutoff_per_mode(self):
        with pytest.raises(InvalidArgumentError):
            ProductState.from_specs([SingleModeSpec.vacuum()], [4, 4])

    def test_target_absent(self, grid):
        lo = SingleModeSpec.squeezed_coherent(2.0, 0.3)
        state = ProductState.target_absent(grid, lo)
        assert state.num_modes == 3
        assert state.specs[grid.lo_index] == lo
        assert state.specs[grid.target_index] == SingleModeSpec.vacuum()
        assert state.cutoffs[grid.image_index] == 4

    def test_target_present(self, grid):
        state = ProductState.target_present(grid, SingleModeSpec.coherent(2.0), 1.0 + 1.0j, target_cutoff=30)
        assert state.specs[grid.target_index] == SingleModeSpec.coherent(1.0 + 1.0j)
        assert state.cutoffs[grid.target_index] == 30


class TestExpectation:
    """Factorized evaluation of monomials."""

    def test_cross_mode_factorizes(self, two_coherent):
        op = OperatorSum.from_terms(2, [(1.0, [(0, True), (1, False)])])
        expected = np.conj(0.8 + 0.2j) * (-0.5j)
        assert abs(expectation(two_coherent, op) - expected) < 1e-9

    def test_intra_mode_order_preserved(self, two_coherent):
        # a_0 a_1^dag a_0^dag: mode 0 sees a a^dag = n + 1
        op = OperatorSum.from_terms(2, [(1.0, [(0, False), (1, True), (0, True)])])
        expected = (abs(0.8 + 0.2j) ** 2 + 1) * np.conj(-0.5j)
        assert abs(expectation(two_coherent, op) - expected) < 1e-8

    def test_linear_in_coefficients(self, two_coherent):
        n0 = OperatorSum.from_terms(2, [(1.0, [(0, True), (0, False)])])
        scaled = OperatorSum.from_terms(2, [(2.5j, [(0, True), (0, False)])])
        assert abs(expectation(two_coherent, scaled) - 2.5j * expectation(two_coherent, n0)) < 1e-12

    def test_empty_operator(self, two_coherent):
        assert expectation(two_coherent, OperatorSum(2)) == 0

    def test_mode_count_mismatch(self, two_coherent):
        with pytest.raises(InvalidArgumentError):
            expectation(two_coherent, OperatorSum(3))

    def test_degree_limit(self, two_coherent):
        op = OperatorSum.from_terms(2, [(1.0, [(0, True)] * 5)])
        with pytest.raises(InvalidArgumentError):
            expectation(two_coherent, op)

    def test_zero_mean_without_target(self, grid):
        state = ProductState.target_absent(grid, SingleModeSpec.squeezed_coherent(2.0, 0.5))
        s_op = build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=1.0))
        assert abs(expectation(state, s_op)) <= 1e-12

    def test_signal_mean_with_target(self, grid):
        state = ProductState.target_present(grid, SingleModeSpec.coherent(2.0), 1.0)
        s_op = build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=1.0))
        assert expectation(state, s_op).real == pytest.approx(2 * math.sqrt(10100), rel=1e-8)

    @pytest.mark.parametrize("delta", [0.4, -1.3, math.pi])
    def test_signal_mean_phase_covariance(self, grid, delta):
        # only theta_T - theta_LO + theta_H enters the mean
        def mean(theta_lo, theta_h):
            lo = SingleModeSpec.coherent(cmath.rect(2.0, theta_lo))
            state = ProductState.target_present(grid, lo, cmath.rect(1.2, 0.9))
            return expectation(state, build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=1.0, theta_h=theta_h)))

        base = mean(0.3, 0.2)
        shifted = mean(0.3 + delta, 0.2 + delta)
        assert abs(shifted - base) <= 1e-10 * abs(base)


class TestVariance:
    """Variance of Hermitian operators."""

    def test_coherent_number_variance(self, two_coherent):
        n0 = OperatorSum.from_terms(2, [(1.0, [(0, True), (0, False)])])
        assert variance(two_coherent, n0) == pytest.approx(abs(0.8 + 0.2j) ** 2, rel=1e-8)

    def test_vacuum_has_no_number_noise(self):
        state = ProductState((SingleModeSpec.vacuum(),), (build_vacuum(4),))
        n0 = OperatorSum.from_terms(1, [(1.0, [(0, True), (0, False)])])
        assert variance(state, n0) == 0.0

    @pytest.mark.parametrize("coeff", [0.37 - 1.21j, 2.5 + 0.1j, -0.83 + 0.64j])
    def test_zero_variance_is_not_negative(self, coeff):
        # a a^dag is exactly 1 on vacuum
        state = ProductState((SingleModeSpec.vacuum(),), (build_vacuum(6),))
        op = OperatorSum.from_terms(1, [(coeff, [(0, False), (0, True)]), (coeff.conjugate(), [(0, False), (0, True)])])
        value = variance(state, op)
        assert value >= 0.0
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_rejects_non_hermitian(self, two_coherent):
        with pytest.raises(InvalidArgumentError):
            variance(two_coherent, OperatorSum.from_terms(2, [(1.0, [(0, False)])]))

    def test_target_absent_signal_variance(self, grid):
        state = ProductState.target_absent(grid, SingleModeSpec.coherent(2.0))
        s_op = build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=1.0))
        assert variance(state, s_op) == pytest.approx(20000.0, rel=1e-8)

    def test_squeezed_target_absent_signal_variance(self, grid):
        state = ProductState.target_absent(grid, SingleModeSpec.squeezed_coherent(2.0, 0.5))
        s_op = build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=1.0))
        assert variance(state, s_op) == pytest.approx(21357.70, abs=0.05)

    def test_sprime_variance_is_scaled_number_variance(self, grid):
        state = ProductState.target_absent(grid, SingleModeSpec.coherent(2.0))
        assert variance(state, build_sprime(grid)) == pytest.approx(100.0 ** 2 * 4.0, rel=1e-8)
