"""Tests for mode grids and signal-operator settings."""

import math

import pytest

from src.core.errors import InvalidArgumentError
from src.operators.grid import ModeGrid, PhaseConvention, SignalOperatorSpec


class TestModeGrid:
    """Grid construction and role bookkeeping."""

    def test_heterodyne_with_image(self):
        grid = ModeGrid.heterodyne(100.0, 1.0)
        assert grid.freqs == (99.0, 100.0, 101.0)
        assert grid.omega_lo == 100.0
        assert grid.omega_t == 101.0
        assert grid.image_index == 0
        assert grid.size == 3

    def test_heterodyne_without_image(self):
        grid = ModeGrid.heterodyne(100.0, 1.0, with_image=False)
        assert grid.freqs == (100.0, 101.0)
        assert grid.image_index is None

    def test_without_mode_reindexes(self):
        grid = ModeGrid.heterodyne(100.0, 1.0, scale_g=2.0)
        assert grid.without_mode(0) == ModeGrid.heterodyne(100.0, 1.0, scale_g=2.0, with_image=False)

    def test_cannot_remove_lo(self):
        with pytest.raises(InvalidArgumentError):
            ModeGrid.heterodyne(100.0, 1.0).without_mode(1)

    def test_lo_partners(self):
        grid = ModeGrid((99.0, 100.0, 101.0, 103.0), lo_index=1, target_index=2)
        assert grid.lo_partners(1.0) == [99.0, 101.0]

    def test_single_mode_grid(self):
        grid = ModeGrid((5.0,), lo_index=0, target_index=0)
        assert grid.size == 1

    @pytest.mark.parametrize("freqs", [(), (0.0, 1.0), (1.0, 1.0), (1.0, math.inf)])
    def test_invalid_frequencies(self, freqs):
        with pytest.raises(InvalidArgumentError):
            ModeGrid(freqs, lo_index=0, target_index=min(1, max(len(freqs) - 1, 0)))

    def test_lo_and_target_must_differ(self):
        with pytest.raises(InvalidArgumentError):
            ModeGrid((1.0, 2.0), lo_index=0, target_index=0)

    def test_index_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            ModeGrid((1.0, 2.0), lo_index=0, target_index=2)

    def test_non_positive_omega_h(self):
        with pytest.raises(InvalidArgumentError):
            ModeGrid.heterodyne(100.0, -1.0)


class TestSignalOperatorSpec:
    """Heterodyne settings."""

    def test_defaults(self):
        spec = SignalOperatorSpec(omega_h=2.0)
        assert spec.is_infinite
        assert spec.convention is PhaseConvention.KERNEL_ONLY
        assert spec.tolerance == pytest.approx(2e-9)
        assert spec.period == pytest.approx(math.pi)

    def test_explicit_tolerance(self):
        assert SignalOperatorSpec(omega_h=1.0, pair_tolerance=0.1).tolerance == 0.1

    @pytest.mark.parametrize("kwargs", [
        {"omega_h": 0.0},
        {"omega_h": 1.0, "tau": 0.0},
        {"omega_h": 1.0, "theta_h": math.nan},
        {"omega_h": 1.0, "pair_tolerance": -1.0},
    ])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            SignalOperatorSpec(**kwargs)
