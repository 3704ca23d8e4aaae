"""Tests for the SNR, number-variance and image-band studies."""

import math

import pytest

from src.analysis.params import RadarParams
from src.core.errors import ConfigurationError, UndefinedSNRError
from src.operators.grid import ModeGrid
from src.workflows.sweeps import (
    Normalization,
    OracleMode,
    SweepSpec,
    SweptParameter,
    check_grid,
    evaluate_point,
    number_variance_contrast,
    point_params,
    run_image_band_study,
    run_number_variance_study,
    run_snr_sweep,
)


@pytest.fixture
def held(radar_params):
    return radar_params


def _spec(held, grid, parameter, values, **kwargs):
    kwargs.setdefault("oracle_mode", OracleMode.OFF)
    kwargs.setdefault("workers", 2)
    return SweepSpec(swept_parameter=parameter, values=values, held=held, grid=grid, **kwargs)


class TestSweepSpec:
    """Sweep description validation."""

    def test_empty_values(self, held, grid):
        with pytest.raises(ConfigurationError):
            _spec(held, grid, SweptParameter.R, ())

    def test_non_finite_values(self, held, grid):
        with pytest.raises(ConfigurationError):
            _spec(held, grid, SweptParameter.R, (0.0, math.nan))

    def test_workers(self, held, grid):
        with pytest.raises(ConfigurationError):
            _spec(held, grid, SweptParameter.R, (0.0,), workers=0)


class TestPointParams:
    """Operating point per sweep value."""

    def test_fixed_nbar_rescales_alpha(self, held, grid):
        p = point_params(_spec(held, grid, SweptParameter.R, (0.5,)), 0.5)
        assert p.r == pytest.approx(0.5)
        assert p.nbar_lo == pytest.approx(4.0)

    def test_fixed_alpha_keeps_alpha(self, held, grid):
        spec = _spec(held, grid, SweptParameter.R, (0.5,), normalization=Normalization.FIXED_ALPHA)
        p = point_params(spec, 0.5)
        assert abs(p.alpha) == pytest.approx(2.0)
        assert p.nbar_lo == pytest.approx(4.2715403, rel=1e-7)

    def test_theta_offset(self, held, grid):
        spec = _spec(held, grid, SweptParameter.THETA_OFFSET, (1.0,))
        assert point_params(spec, 1.0).phase_offset == pytest.approx(1.0)

    def test_squeezing_exceeds_held_photon_number(self, held, grid):
        spec = _spec(held, grid, SweptParameter.R, (2.0,))
        with pytest.raises(ConfigurationError):
            point_params(spec, 2.0)

    def test_tau_is_not_a_point_sweep(self, held, grid):
        with pytest.raises(ConfigurationError):
            point_params(_spec(held, grid, SweptParameter.TAU, (10.0,)), 10.0)


class TestCheckGrid:
    """Grid/parameter consistency."""

    def test_partners(self, held, grid):
        assert check_grid(grid, held) == [99.0, 101.0]

    def test_lo_mismatch(self, held):
        with pytest.raises(ConfigurationError):
            check_grid(ModeGrid.heterodyne(50.0, 1.0), held)

    def test_scale_mismatch(self, held):
        with pytest.raises(ConfigurationError):
            check_grid(ModeGrid.heterodyne(100.0, 1.0, scale_g=2.0), held)


class TestSNRSweep:
    """Analytic and numeric SNR across a sweep."""

    def test_coherent_point(self, held, grid):
        rows = run_snr_sweep(_spec(held, grid, SweptParameter.R, (0.0,)))
        assert len(rows) == 1
        assert rows[0].snr_ratio == pytest.approx(1.0)
        assert rows[0].snr_analytic == pytest.approx(2.0 * 101 / 100)
        assert rows[0].agree

    def test_rows_carry_report(self, held, grid):
        row = run_snr_sweep(_spec(held, grid, SweptParameter.R, (0.5,)))[0]
        report = row.report
        assert report.var0 == row.var0_s
        assert report.var0_num == row.var0_s_numeric
        assert report.mean_s0_num == pytest.approx(0.0, abs=1e-9)
        assert report.mean_s1_num == pytest.approx(report.mean_s1, rel=1e-6)
        assert report.snr_numeric == row.snr_numeric
        assert report.snr_numeric == pytest.approx(report.snr_analytic, rel=1e-6)

    def test_headline_ratios(self, held, grid):
        rows = run_snr_sweep(_spec(held, grid, SweptParameter.R, (0.0, 0.25, 0.5, 1.0)))
        ratios = [row.snr_numeric / rows[0].snr_numeric for row in rows]
        for ratio, expected in zip(ratios, (1.0, 0.984047, 0.932115, 0.654726)):
            assert ratio == pytest.approx(expected, abs=1e-4)
        assert all(row.agree for row in rows)

    def test_variance_flat_at_fixed_photon_number(self, held, grid):
        rows = run_snr_sweep(_spec(held, grid, SweptParameter.R, (0.0, 0.5, 1.0)))
        for row in rows:
            assert row.var0_s == pytest.approx(20000.0, rel=1e-12)
            assert row.var0_s_numeric == pytest.approx(20000.0, rel=1e-6)

    def test_phase_offset_sweep(self, held, grid):
        spec = _spec(
            held, grid, SweptParameter.THETA_OFFSET, (0.0, math.pi / 4, math.pi / 2),
            normalization=Normalization.FIXED_ALPHA,
        )
        rows = run_snr_sweep(spec)
        assert rows[1].snr_analytic / rows[0].snr_analytic == pytest.approx(0.5)
        assert rows[2].snr_analytic == pytest.approx(0.0, abs=1e-12)
        assert all(row.agree for row in rows)

    def test_rows_follow_input_order(self, held, grid):
        values = (0.5, 0.0, 0.25)
        rows = run_snr_sweep(_spec(held, grid, SweptParameter.R, values, workers=3))
        assert [row.value for row in rows] == list(values)

    def test_spot_oracle(self, held, grid):
        rows = run_snr_sweep(_spec(held, grid, SweptParameter.R, (0.0, 0.25, 0.5), oracle_mode=OracleMode.SPOT))
        assert all(row.oracle_checked for row in rows)
        assert all(row.agree for row in rows)

    def test_empty_lo_is_undefined(self, grid):
        dark = RadarParams(alpha=0.0, xi=0.0, beta=1.0, theta_h=0.0, omega_t=101.0, omega_lo=100.0)
        spec = _spec(dark, grid, SweptParameter.R, (0.0,), normalization=Normalization.FIXED_ALPHA)
        with pytest.raises(UndefinedSNRError):
            run_snr_sweep(spec)

    def test_grid_mismatch(self, held):
        with pytest.raises(ConfigurationError):
            run_snr_sweep(_spec(held, ModeGrid.heterodyne(100.0, 2.0), SweptParameter.R, (0.0,)))


class TestNumberVarianceStudy:
    """Heterodyne variance against photon-number variance."""

    def test_contrast(self, grid):
        r = 0.5
        held = RadarParams(
            alpha=math.sqrt(4.0 - math.sinh(r) ** 2), xi=r, beta=1.0, theta_h=0.0, omega_t=101.0, omega_lo=100.0
        )
        values = tuple(2 * math.pi * j / 8 for j in range(8))
        baseline = evaluate_point(_spec(held, grid, SweptParameter.R, (0.0,)), 0.0, with_snr=False)
        squeezed = run_number_variance_study(_spec(held, grid, SweptParameter.THETA_XI, values))
        rows = [baseline] + squeezed
        contrast = number_variance_contrast(rows)
        assert contrast.max_sprime_drop >= 0.05
        assert contrast.drop_value == pytest.approx(0.0)
        assert contrast.var0_s_spread <= 1e-8
        assert all(row.snr_numeric is None for row in rows)
        assert all(row.report is None for row in rows)
        # baseline is the coherent row wherever it sits
        assert number_variance_contrast(squeezed + [baseline]) == contrast
        with pytest.raises(ConfigurationError):
            number_variance_contrast(squeezed)

    def test_amplitude_squeezed_number_variance(self, held, grid):
        row = evaluate_point(_spec(held, grid, SweptParameter.R, (0.5,)), 0.5, with_snr=False)
        alpha_sq = 4.0 - math.sinh(0.5) ** 2
        expected = alpha_sq * math.exp(-1.0) + 2 * math.sinh(0.5) ** 2 * math.cosh(0.5) ** 2
        assert row.var0_sprime_numeric == pytest.approx(1e4 * expected, rel=1e-6)
        assert row.agree

    def test_rejects_other_parameters(self, held, grid):
        with pytest.raises(ConfigurationError):
            run_number_variance_study(_spec(held, grid, SweptParameter.ALPHA_MAG, (1.0,)))

    def test_contrast_needs_rows(self):
        with pytest.raises(ConfigurationError):
            number_variance_contrast([])


class TestImageBandStudy:
    """Variance with and without the image-band mode."""

    def test_ratio(self, held, grid):
        report = run_image_band_study(grid, ModeGrid.heterodyne(100.0, 1.0, with_image=False), held.with_changes(xi=0.3))
        assert report.expected_ratio == pytest.approx(200 / 101)
        assert report.ratio == pytest.approx(200 / 101, rel=1e-6)
        assert report.analytic_with_image / report.analytic_without_image == pytest.approx(200 / 101)

    def test_narrowband_limit(self):
        p = RadarParams(alpha=2.0, xi=0.0, beta=1.0, theta_h=0.0, omega_t=100.001, omega_lo=100.0)
        report = run_image_band_study(
            ModeGrid.heterodyne(100.0, 0.001),
            ModeGrid.heterodyne(100.0, 0.001, with_image=False),
            p,
        )
        assert abs(report.ratio - 2.0) <= 3e-5

    def test_first_grid_needs_image(self, held):
        no_image = ModeGrid.heterodyne(100.0, 1.0, with_image=False)
        with pytest.raises(ConfigurationError):
            run_image_band_study(no_image, no_image, held)

    def test_grids_must_differ_only_by_image(self, held, grid):
        with pytest.raises(ConfigurationError):
            run_image_band_study(grid, ModeGrid.heterodyne(100.0, 2.0, with_image=False), held)
