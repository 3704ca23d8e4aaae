"""
hetsqueeze - Cross-check suite

Runs every closed-form result against the operator engine (and the engine
against the brute-force oracle) and reports one named check per line.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..analysis.formulas import (
    mean_s_present,
    number_variance_closed,
    number_variance_gaussian,
    snr,
    snr_definition,
    var0_s,
)
from ..analysis.params import DetectorVariant, RadarParams
from ..core.logger import setup_logger
from ..fock.ladder import ladder_string_expectation, moments, number_variance
from ..fock.states import (
    PHOTON_NUMBER_TOLERANCE,
    SingleModeSpec,
    build_coherent,
    build_squeezed_coherent,
    build_vacuum,
)
from ..operators.algebra import OperatorSum, Term, square
from ..operators.evaluation import ProductState, expectation, variance
from ..operators.grid import ModeGrid, PhaseConvention, SignalOperatorSpec
from ..operators.oracle import brute_force_expectation
from ..operators.signal import build_signal_operator_infinite
from .detection import gaussian_detection_curve
from .kernel import run_kernel_convergence
from .sweeps import (
    Normalization,
    OracleMode,
    SweepSpec,
    SweptParameter,
    evaluate_point,
    number_variance_contrast,
    run_image_band_study,
    run_number_variance_study,
    run_snr_sweep,
)

logger = setup_logger("verification")

RANDOM_INSTANCES = 50
HEADLINE_SQUEEZING = (0.0, 0.25, 0.5, 1.0)
HEADLINE_RATIOS = (1.0, 0.984047, 0.932115, 0.654726)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


def _rel(a: complex, b: complex, floor: float = 1e-12) -> float:
    return abs(a - b) / max(abs(b), floor)


def random_instance(rng: np.random.Generator) -> Tuple[ProductState, OperatorSum]:
    """
    Random product state on 1-3 modes (cutoffs <= 25) and a random operator of degree <= 4.
    """
    num_modes = int(rng.integers(1, 4))
    specs, cutoffs = [], []
    for _ in range(num_modes):
        kind = int(rng.integers(0, 3))
        alpha = complex(rng.normal(0, 0.6), rng.normal(0, 0.6))
        if kind == 0:
            specs.append(SingleModeSpec.vacuum())
        elif kind == 1:
            specs.append(SingleModeSpec.coherent(alpha))
        else:
            specs.append(SingleModeSpec.squeezed_coherent(alpha, cmath.rect(rng.uniform(0, 0.6), rng.uniform(0, 2 * math.pi))))
        cutoffs.append(int(rng.integers(6, 26)))
    state = ProductState.from_specs(specs, cutoffs, validate=False)

    terms = []
    for _ in range(int(rng.integers(1, 7))):
        degree = int(rng.integers(1, 5))
        monomial = tuple((int(rng.integers(0, num_modes)), bool(rng.integers(0, 2))) for _ in range(degree))
        terms.append((complex(rng.normal(), rng.normal()), monomial))
    return state, OperatorSum.from_terms(num_modes, terms)


def _random_hermitian(rng: np.random.Generator, num_modes: int) -> OperatorSum:
    terms = []
    for _ in range(int(rng.integers(1, 4))):
        degree = int(rng.integers(1, 3))
        monomial = tuple((int(rng.integers(0, num_modes)), bool(rng.integers(0, 2))) for _ in range(degree))
        terms.append((complex(rng.normal(), rng.normal()), monomial))
    op = OperatorSum.from_terms(num_modes, terms)
    return op + op.adjoint()


class VerificationWorkflow:
    """
    Named cross-checks between closed forms, the factorized evaluator and the oracle.

    ``run()`` returns a dict with ``success`` (all checks passed) and ``checks``
    (list of CheckResult in a fixed order).
    """

    def __init__(
        self,
        omega_lo: float = 100.0,
        omega_h: float = 1.0,
        g: float = 1.0,
        seed: int = 0,
        workers: int = 4,
    ):
        self.omega_lo = omega_lo
        self.omega_h = omega_h
        self.g = g
        self.seed = seed
        self.workers = workers
        self.grid = ModeGrid.heterodyne(omega_lo, omega_h, scale_g=g)
        self.base = RadarParams(
            alpha=2.0, xi=0.0, beta=1.0, theta_h=0.0,
            omega_t=omega_lo + omega_h, omega_lo=omega_lo, g=g,
        )

    def checks(self) -> List[Tuple[str, Callable[[], Tuple[bool, float, str]]]]:
        return [
            ("vacuum_state", self._check_vacuum),
            ("coherent_eigenvalue", self._check_coherent_eigenvalue),
            ("squeeze_moments", self._check_squeeze_moments),
            ("squeezed_photon_number", self._check_squeezed_photon_number),
            ("zero_squeeze_reduction", self._check_zero_squeeze_reduction),
            ("poissonian_number_variance", self._check_poissonian),
            ("sub_poissonian_number_variance", self._check_sub_poissonian),
            ("zero_mean_target_absent", self._check_zero_mean),
            ("signal_mean", self._check_signal_mean),
            ("target_absent_variance", self._check_variance),
            ("variance_selection_rule", self._check_selection_rule),
            ("image_band_ratio", self._check_image_band),
            ("narrowband_image_limit", self._check_narrowband_limit),
            ("snr_headline", self._check_snr_headline),
            ("number_variance_contrast", self._check_number_variance_contrast),
            ("kernel_reduction", self._check_kernel_reduction),
            ("phase_convention", self._check_phase_convention),
            ("oracle_equivalence", self._check_oracle_equivalence),
            ("balanced_complementarity", self._check_balanced_complementarity),
            ("g_invariance", self._check_g_invariance),
            ("detection_curve", self._check_detection_curve),
        ]

    def run(self) -> Dict[str, Any]:
        logger.info("Starting verification suite")
        results = []
        for name, check in self.checks():
            try:
                passed, deviation, detail = check()
            except Exception as e:
                logger.error(f"Check {name} raised: {e}", exc_info=True)
                passed, deviation, detail = False, math.inf, str(e)
            if passed:
                logger.info(f"  {name}: pass (max deviation {deviation:.3e})")
            else:
                logger.error(f"  {name}: FAIL (max deviation {deviation:.3e}) {detail}")
            results.append(CheckResult(name, bool(passed), float(deviation), detail))

        failed = [r.name for r in results if not r.passed]
        logger.info(f"Verification complete: {len(results) - len(failed)}/{len(results)} checks passed")
        return {"success": not failed, "checks": results, "failed": failed}

    # ========== Single-mode states ==========

    def _check_vacuum(self):
        state = build_vacuum(4)
        deviation = max(abs(state.amps[0] - 1), state.mean_photon_number)
        return deviation <= 1e-15, deviation, ""

    def _check_coherent_eigenvalue(self):
        deviation = 0.0
        for beta in (0.5, 1.5 + 0.5j, -1.0 + 2.0j):
            state = build_coherent(beta)
            deviation = max(deviation, abs(ladder_string_expectation(state, [False]) - beta))
        return deviation <= 1e-8, deviation, ""

    def _check_squeeze_moments(self):
        deviation = 0.0
        for r, theta in ((0.3, 0.0), (0.7, math.pi / 3), (1.0, -2.0)):
            table = moments(build_squeezed_coherent(0, cmath.rect(r, theta)))
            expected = -cmath.exp(1j * theta) * math.sinh(r) * math.cosh(r)
            deviation = max(deviation, abs(table.entry(0, 2) - expected), abs(table.entry(1, 1) - math.sinh(r) ** 2))
        return deviation <= 1e-6, deviation, ""

    def _check_squeezed_photon_number(self):
        deviation = 0.0
        for magnitude in (0.0, 1.0, 2.0):
            for r in (0.25, 0.5, 1.0, 1.5, 2.0):
                for theta in (0.0, math.pi / 2):
                    state = build_squeezed_coherent(magnitude, cmath.rect(r, theta))
                    expected = magnitude ** 2 + math.sinh(r) ** 2
                    deviation = max(deviation, abs(state.mean_photon_number - expected) / max(1.0, expected))
        return deviation <= PHOTON_NUMBER_TOLERANCE, deviation, ""

    def _check_zero_squeeze_reduction(self):
        deviation = 0.0
        for alpha in (0.5, 1.0 - 1.0j, 2.0):
            coherent = build_coherent(alpha)
            squeezed = build_squeezed_coherent(alpha, 0, coherent.cutoff)
            deviation = max(deviation, float(np.max(np.abs(coherent.amps - squeezed.amps))))
        return deviation <= 1e-8, deviation, ""

    def _check_poissonian(self):
        p = self.base
        scale = (p.g * p.omega_lo) ** 2
        expected = scale * abs(p.alpha) ** 2
        deviation = max(_rel(number_variance_closed(p), expected), _rel(number_variance_gaussian(p), expected))
        return deviation <= 1e-8, deviation, ""

    def _check_sub_poissonian(self):
        scale = (self.g * self.omega_lo) ** 2
        deviation = 0.0
        for theta_xi in (0.0, math.pi / 2, math.pi):
            p = self.base.with_changes(xi=cmath.rect(0.3, theta_xi))
            numeric = scale * number_variance(build_squeezed_coherent(p.alpha, p.xi))
            deviation = max(deviation, _rel(number_variance_gaussian(p), numeric))
        p = self.base.with_changes(xi=0.3)
        value = number_variance_closed(p)
        coherent_level = scale * p.nbar_lo
        passed = value < coherent_level and deviation <= 1e-6
        return passed, deviation, f"Var0 S' / coherent level = {value / coherent_level:.6f}"

    # ========== Heterodyne statistic ==========

    def _signal(self, p: RadarParams) -> OperatorSum:
        return build_signal_operator_infinite(self.grid, SignalOperatorSpec(omega_h=p.omega_h, theta_h=p.theta_h))

    def _check_zero_mean(self):
        deviation = 0.0
        for r in (0.0, 0.5):
            p = self.base.with_changes(xi=r)
            state = ProductState.target_absent(self.grid, SingleModeSpec.squeezed_coherent(p.alpha, p.xi))
            deviation = max(deviation, abs(expectation(state, self._signal(p))))
        return deviation <= 1e-12, deviation, ""

    def _check_signal_mean(self):
        deviation = 0.0
        for alpha in (0.5, 1.0, 2.0):
            for beta in (0.5, 1.0, 1.5):
                for offset in (0.0, math.pi / 3, 2 * math.pi / 3):
                    p = self.base.with_changes(alpha=alpha, beta=cmath.rect(beta, offset))
                    state = ProductState.target_present(self.grid, SingleModeSpec.coherent(p.alpha), p.beta)
                    numeric = expectation(state, self._signal(p)).real
                    deviation = max(deviation, _rel(numeric, mean_s_present(p)))
        return deviation <= 1e-6, deviation, "3x3x3 grid over |alpha|, |beta|, phase offset"

    def _check_variance(self):
        deviation = 0.0
        partners = self.grid.lo_partners(self.omega_h)
        for r in (0.0, 0.5):
            p = self.base.with_changes(xi=r)
            state = ProductState.target_absent(self.grid, SingleModeSpec.squeezed_coherent(p.alpha, p.xi))
            deviation = max(deviation, _rel(variance(state, self._signal(p)), var0_s(p, partners)))
        return deviation <= 1e-6, deviation, ""

    def _check_selection_rule(self):
        """Only a_LO^dag a_k a_k^dag a_LO survives in <S^2> with the target absent."""
        p = self.base.with_changes(xi=0.5)
        s_op = self._signal(p)
        state = ProductState.target_absent(self.grid, SingleModeSpec.squeezed_coherent(p.alpha, p.xi))
        lo = self.grid.lo_index
        surviving = set()
        for term in square(s_op):
            value = term.coeff * expectation(state, OperatorSum(s_op.num_modes, (Term(1 + 0j, term.monomial),)))
            if abs(value) > 1e-9:
                surviving.add(term.monomial)
        partner_modes = [k for k in range(self.grid.size) if k != lo]
        expected = {
            ((lo, True), (k, False), (k, True), (lo, False)) for k in partner_modes
        }
        surviving = {tuple((f.mode, f.dagger) for f in m) for m in surviving}
        return surviving == expected, float(len(surviving ^ expected)), f"{len(surviving)} surviving monomials"

    def _check_image_band(self):
        deviation = 0.0
        for omega_lo, omega_h in ((self.omega_lo, self.omega_h), (50.0, 5.0), (10.0, 0.5)):
            report = self._image_band(omega_lo, omega_h)
            deviation = max(deviation, _rel(report.ratio, report.expected_ratio))
        return deviation <= 1e-6, deviation, ""

    def _check_narrowband_limit(self):
        report = self._image_band(self.omega_lo, self.omega_lo * 1e-5)
        deviation = abs(report.ratio - 2.0)
        return deviation <= 3e-5, deviation, f"ratio {report.ratio:.9f}"

    def _image_band(self, omega_lo: float, omega_h: float):
        with_image = ModeGrid.heterodyne(omega_lo, omega_h, scale_g=self.g)
        without_image = ModeGrid.heterodyne(omega_lo, omega_h, scale_g=self.g, with_image=False)
        p = self.base.with_changes(omega_lo=omega_lo, omega_t=omega_lo + omega_h, xi=0.3)
        return run_image_band_study(with_image, without_image, p)

    # ========== Studies ==========

    def _check_snr_headline(self):
        spec = SweepSpec(
            swept_parameter=SweptParameter.R,
            values=HEADLINE_SQUEEZING,
            held=self.base,
            grid=self.grid,
            normalization=Normalization.FIXED_NBAR_LO,
            oracle_mode=OracleMode.SPOT,
            workers=self.workers,
        )
        rows = run_snr_sweep(spec)
        ratios = [row.snr_numeric / rows[0].snr_numeric for row in rows]
        deviation = max(abs(a - b) for a, b in zip(ratios, HEADLINE_RATIOS))
        decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
        passed = deviation <= 1e-4 and decreasing and all(row.agree for row in rows)
        return passed, deviation, "ratios " + ", ".join(f"{r:.6f}" for r in ratios)

    def _check_number_variance_contrast(self):
        coherent_spec = SweepSpec(
            swept_parameter=SweptParameter.R, values=(0.0,), held=self.base, grid=self.grid,
            oracle_mode=OracleMode.OFF,
        )
        baseline = evaluate_point(coherent_spec, 0.0, with_snr=False)
        rows = [baseline]
        for r in (0.25, 0.5):
            phase_spec = SweepSpec(
                swept_parameter=SweptParameter.THETA_XI,
                values=tuple(2 * math.pi * j / 16 for j in range(16)),
                held=self.base.with_changes(alpha=math.sqrt(self.base.nbar_lo - math.sinh(r) ** 2), xi=r),
                grid=self.grid,
                normalization=Normalization.FIXED_NBAR_LO,
                oracle_mode=OracleMode.OFF,
                workers=self.workers,
            )
            rows.extend(run_number_variance_study(phase_spec))
        contrast = number_variance_contrast(rows)
        passed = contrast.max_sprime_drop >= 0.05 and contrast.var0_s_spread <= 1e-8
        detail = f"Var0 S' drop {contrast.max_sprime_drop:.4f} at theta_xi={contrast.drop_value:.4f}"
        return passed, contrast.var0_s_spread, detail

    def _kernel_report(self, theta_h: float):
        spec = SweepSpec(
            swept_parameter=SweptParameter.TAU,
            values=(100.0, 1000.0, 10000.0),
            held=self.base.with_changes(theta_h=theta_h),
            grid=self.grid,
        )
        return run_kernel_convergence(spec)

    def _check_kernel_reduction(self):
        report = self._kernel_report(0.0)
        deviation = report.rows[-1].deviation_kernel_only
        passed = PhaseConvention.KERNEL_ONLY in report.converging and report.conventions_identical
        return passed, deviation, report.verdict

    def _check_phase_convention(self):
        report = self._kernel_report(math.pi / 3)
        deviation = min(report.rows[-1].deviation(c) for c in report.converging) if report.converging else math.inf
        return len(report.converging) == 1, deviation, report.verdict

    def _check_oracle_equivalence(self):
        rng = np.random.default_rng(self.seed)
        deviation = 0.0
        for _ in range(RANDOM_INSTANCES):
            state, op = random_instance(rng)
            fast = expectation(state, op)
            slow = brute_force_expectation(state, op, max_cutoff=25)
            deviation = max(deviation, abs(fast - slow) / max(1.0, abs(slow)))
            # variance() rejects complex or negative results beyond tolerance
            hermitian = _random_hermitian(rng, state.num_modes)
            if variance(state, hermitian) < 0:
                return False, deviation, "negative variance"
        return deviation <= 1e-8, deviation, f"{RANDOM_INSTANCES} random instances"

    # ========== Closed-form identities ==========

    def _check_balanced_complementarity(self):
        rng = np.random.default_rng(self.seed + 1)
        deviation = 0.0
        for _ in range(10):
            p = self.base.with_changes(
                alpha=cmath.rect(2.0, rng.uniform(0, 2 * math.pi)),
                beta=cmath.rect(1.0, rng.uniform(0, 2 * math.pi)),
                xi=rng.uniform(0, 1.0),
                theta_h=rng.uniform(0, 2 * math.pi),
            )
            single = snr(p)
            balanced = snr(p.with_changes(detector_variant=DetectorVariant.BALANCED))
            expected = 2 * (1 - math.sinh(p.r) ** 2 / p.nbar_lo) * p.nbar_t
            deviation = max(deviation, abs(single + balanced - expected))
        return deviation <= 1e-10, deviation, ""

    def _check_g_invariance(self):
        partners = self.grid.lo_partners(self.omega_h)
        values = []
        for g in (0.1, 1.0, 10.0):
            p = self.base.with_changes(g=g, xi=0.5)
            values.append(snr_definition(mean_s_present(p), 0.0, var0_s(p, partners)))
        deviation = max(_rel(v, values[1]) for v in values)
        return deviation <= 1e-12, deviation, ""

    def _check_detection_curve(self):
        pfas = [0.001, 0.01, 0.05, 0.1, 0.5]
        null_gap = max(abs(point.pd - point.pfa) for point in gaussian_detection_curve(0.0, pfas))
        reference = gaussian_detection_curve(4.0, [0.05])[0].pd
        curves = [[point.pd for point in gaussian_detection_curve(s, pfas)] for s in (0.0, 1.0, 4.0, 9.0)]
        monotone = all(
            all(b >= a for a, b in zip(curve, curve[1:])) for curve in curves
        ) and all(
            all(b >= a for a, b in zip(column, column[1:])) for column in zip(*curves)
        )
        passed = monotone and null_gap <= 1e-12 and abs(reference - 0.6388) <= 1e-3
        return passed, max(null_gap, abs(reference - 0.6388)), f"pd(snr=4, pfa=0.05)={reference:.4f}"
