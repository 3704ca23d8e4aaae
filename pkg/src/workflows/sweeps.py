"""
hetsqueeze - Parameter sweep studies

Each sweep point is evaluated twice: through the closed forms in
``src.analysis`` and through the operator engine on a truncated product state.
Rows record both values and whether they agree. Points are independent and run
on a thread pool; output order follows the input values.
"""

import cmath
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..analysis.formulas import build_snr_report, number_variance_closed, var0_s
from ..analysis.params import DetectorVariant, RadarParams, SNRReport
from ..core.errors import ConfigurationError, HeterodyneError
from ..core.logger import setup_logger
from ..fock.states import SingleModeSpec
from ..operators.algebra import OperatorSum, square
from ..operators.evaluation import ProductState, expectation, variance
from ..operators.grid import ModeGrid, SignalOperatorSpec
from ..operators.oracle import brute_force_expectation
from ..operators.signal import build_signal_operator_infinite, build_sprime

logger = setup_logger("workflow")

AGREEMENT_TOLERANCE = 1e-5
AGREEMENT_FLOOR = 1e-12
ORACLE_TOLERANCE = 1e-8
ORACLE_CUTOFF = 20
GRID_TOLERANCE = 1e-9
COHERENT_R_TOLERANCE = 1e-12


class SweptParameter(str, Enum):
    R = "r"
    THETA_XI = "theta_xi"
    THETA_OFFSET = "theta_offset"
    ALPHA_MAG = "alpha_mag"
    TAU = "tau"


class Normalization(str, Enum):
    """Hold |alpha| fixed, or adjust it so nbar_LO stays at the baseline value."""

    FIXED_ALPHA = "fixed_alpha"
    FIXED_NBAR_LO = "fixed_nbar_lo"


class OracleMode(str, Enum):
    SPOT = "spot"
    FULL = "full"
    OFF = "off"


@dataclass(frozen=True)
class SweepSpec:
    swept_parameter: SweptParameter
    values: Tuple[float, ...]
    held: RadarParams
    grid: ModeGrid
    normalization: Normalization = Normalization.FIXED_NBAR_LO
    oracle_mode: OracleMode = OracleMode.SPOT
    workers: int = 4
    cutoff: Optional[int] = None

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ConfigurationError("sweep needs at least one value")
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError(f"sweep values must be finite: {values}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class SweepRow:
    value: float
    r: float
    nbar_lo: float
    var0_s: float
    var0_s_numeric: float
    var0_sprime: float
    var0_sprime_numeric: float
    agree: bool
    snr_analytic: Optional[float] = None
    snr_numeric: Optional[float] = None
    snr_ratio: Optional[float] = None
    mean_s1: Optional[float] = None
    mean_s1_numeric: Optional[float] = None
    oracle_checked: bool = False
    report: Optional[SNRReport] = None


@dataclass(frozen=True)
class NumberVarianceContrast:
    """Largest drop of Var0 S' below the first row, and the spread of Var0 S."""

    max_sprime_drop: float
    drop_value: float
    var0_s_spread: float


@dataclass(frozen=True)
class ImageBandReport:
    var_with_image: float
    var_without_image: float
    ratio: float
    expected_ratio: float
    analytic_with_image: float = field(default=0.0)
    analytic_without_image: float = field(default=0.0)


def _relative_gap(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic), AGREEMENT_FLOOR)


def check_grid(grid: ModeGrid, p: RadarParams) -> List[float]:
    """
    Confirm the grid carries the operating point and return the LO partners.

    Raises:
        ConfigurationError: if the grid's LO/target frequencies or scale differ
            from ``p``, or the target is not an omega_H partner of the LO
    """
    tol = GRID_TOLERANCE * max(1.0, p.omega_t)
    if abs(grid.omega_lo - p.omega_lo) > tol or abs(grid.omega_t - p.omega_t) > tol:
        raise ConfigurationError(
            f"grid LO/target ({grid.omega_lo}, {grid.omega_t}) do not match "
            f"omega_lo={p.omega_lo}, omega_t={p.omega_t}"
        )
    if not math.isclose(grid.scale_g, p.g, rel_tol=1e-12):
        raise ConfigurationError(f"grid scale g={grid.scale_g} differs from parameter g={p.g}")
    partners = grid.lo_partners(p.omega_h)
    if not partners:
        raise ConfigurationError(f"no grid mode is an omega_h={p.omega_h} partner of the LO")
    return partners


def point_params(spec: SweepSpec, value: float) -> RadarParams:
    """
    Operating point for one sweep value.

    R keeps the squeeze phase of ``held.xi``; THETA_XI keeps its magnitude;
    THETA_OFFSET sets theta_H so that theta_T - theta_LO + theta_H equals the
    value; ALPHA_MAG keeps arg(alpha). Under FIXED_NBAR_LO an R sweep rescales
    |alpha| to sqrt(nbar_LO - sinh^2 r).
    """
    held = spec.held
    parameter = spec.swept_parameter
    if parameter is SweptParameter.R:
        if value < 0:
            raise ConfigurationError(f"squeezing parameter must be >= 0, got {value}")
        p = held.with_changes(xi=cmath.rect(value, held.theta_xi))
    elif parameter is SweptParameter.THETA_XI:
        p = held.with_changes(xi=cmath.rect(held.r, value))
    elif parameter is SweptParameter.THETA_OFFSET:
        p = held.with_changes(theta_h=value - (held.theta_t - held.theta_lo))
    elif parameter is SweptParameter.ALPHA_MAG:
        if value < 0:
            raise ConfigurationError(f"|alpha| must be >= 0, got {value}")
        return held.with_changes(alpha=cmath.rect(value, held.theta_lo))
    else:
        raise ConfigurationError(f"{parameter.value} sweeps are run by the kernel convergence study")

    if spec.normalization is Normalization.FIXED_NBAR_LO:
        coherent_part = held.nbar_lo - math.sinh(p.r) ** 2
        if coherent_part < 0:
            raise ConfigurationError(
                f"sinh^2(r)={math.sinh(p.r) ** 2:.6g} exceeds the held nbar_LO={held.nbar_lo:.6g}"
            )
        p = p.with_changes(alpha=cmath.rect(math.sqrt(coherent_part), held.theta_lo))
    return p


def _effective_beta(p: RadarParams) -> complex:
    # balanced pair: the reflected arm picks up a -pi/2 phase
    if p.detector_variant is DetectorVariant.BALANCED:
        return p.beta * -1j
    return p.beta


def _oracle_agrees(
    grid: ModeGrid,
    p: RadarParams,
    s_op: OperatorSum,
) -> bool:
    lo = SingleModeSpec.squeezed_coherent(p.alpha, p.xi)
    present = ProductState.target_present(
        grid, lo, _effective_beta(p), cutoff=ORACLE_CUTOFF, target_cutoff=ORACLE_CUTOFF, validate=False
    )
    absent = ProductState.target_absent(grid, lo, cutoff=ORACLE_CUTOFF, validate=False)
    s_squared = square(s_op)
    ok = True
    for label, state, op in (("<S>_1", present, s_op), ("<S^2>_0", absent, s_squared)):
        fast = expectation(state, op)
        slow = brute_force_expectation(state, op)
        gap = abs(fast - slow) / max(1.0, abs(slow))
        if gap > ORACLE_TOLERANCE:
            logger.warning(f"Oracle disagreement on {label}: factorized={fast} brute-force={slow} gap={gap:.3e}")
            ok = False
    return ok


def evaluate_point(
    spec: SweepSpec,
    value: float,
    with_oracle: bool = False,
    with_snr: bool = True,
) -> SweepRow:
    """
    Analytic and numeric values at one sweep point.

    Args:
        spec: Sweep description
        value: Value of the swept parameter
        with_oracle: Cross-check the factorized evaluator against the brute-force oracle
        with_snr: Include the SNR columns (undefined when nbar_LO = 0)

    Returns:
        SweepRow for the point
    """
    p = point_params(spec, value)
    grid = spec.grid
    partners = check_grid(grid, p)
    lo = SingleModeSpec.squeezed_coherent(p.alpha, p.xi)

    s_op = build_signal_operator_infinite(grid, SignalOperatorSpec(omega_h=p.omega_h, theta_h=p.theta_h))
    sprime_op = build_sprime(grid)
    absent = ProductState.target_absent(grid, lo, cutoff=spec.cutoff)

    var_s = var0_s(p, partners)
    var_s_num = variance(absent, s_op)
    var_sprime = number_variance_closed(p, cutoff=spec.cutoff)
    var_sprime_num = variance(absent, sprime_op)
    gaps = [_relative_gap(var_s, var_s_num), _relative_gap(var_sprime, var_sprime_num)]

    snr_fields = {}
    if with_snr:
        present = ProductState.target_present(grid, lo, _effective_beta(p), cutoff=spec.cutoff)
        report = build_snr_report(
            p,
            partners,
            mean_s0_num=expectation(absent, s_op).real,
            mean_s1_num=expectation(present, s_op).real,
            var0_num=var_s_num,
        )
        gaps.append(_relative_gap(report.snr_analytic, report.snr_numeric))
        snr_fields = dict(
            snr_analytic=report.snr_analytic,
            snr_numeric=report.snr_numeric,
            snr_ratio=report.snr_ratio_vs_coherent,
            mean_s1=report.mean_s1,
            mean_s1_numeric=report.mean_s1_num,
            report=report,
        )

    agree = max(gaps) <= AGREEMENT_TOLERANCE
    oracle_checked = False
    if with_oracle:
        agree = _oracle_agrees(grid, p, s_op) and agree
        oracle_checked = True
    if not agree:
        logger.warning(f"Analytic/numeric mismatch at {spec.swept_parameter.value}={value}: max gap {max(gaps):.3e}")

    return SweepRow(
        value=value,
        r=p.r,
        nbar_lo=p.nbar_lo,
        var0_s=var_s,
        var0_s_numeric=var_s_num,
        var0_sprime=var_sprime,
        var0_sprime_numeric=var_sprime_num,
        agree=agree,
        oracle_checked=oracle_checked,
        **snr_fields,
    )


def _oracle_indices(mode: OracleMode, count: int) -> set:
    if mode is OracleMode.FULL:
        return set(range(count))
    if mode is OracleMode.SPOT:
        return {0, count // 2, count - 1}
    return set()


def _run_points(spec: SweepSpec, with_snr: bool) -> List[SweepRow]:
    check_grid(spec.grid, spec.held)
    spot = _oracle_indices(spec.oracle_mode, len(spec.values))
    rows: List[Optional[SweepRow]] = [None] * len(spec.values)
    logger.info(
        f"Sweeping {spec.swept_parameter.value} over {len(spec.values)} values "
        f"({spec.normalization.value}, oracle={spec.oracle_mode.value}, {spec.workers} workers)"
    )

    with ThreadPoolExecutor(max_workers=spec.workers) as executor:
        future_to_index = {
            executor.submit(evaluate_point, spec, value, i in spot, with_snr): i
            for i, value in enumerate(spec.values)
        }
        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                rows[index] = future.result()
            except HeterodyneError as e:
                logger.error(f"Sweep point {spec.values[index]} failed: {e}")
                raise
            logger.debug(f"  Point {index + 1}/{len(spec.values)} done")

    passed = sum(1 for row in rows if row.agree)
    logger.info(f"Sweep complete: {passed}/{len(rows)} rows agree")
    return rows


def run_snr_sweep(spec: SweepSpec) -> List[SweepRow]:
    """
    SNR (analytic and numeric) across the sweep values.

    Raises:
        ConfigurationError: if the grid does not match the held parameters
        UndefinedSNRError: if a point has nbar_LO = 0
    """
    return _run_points(spec, with_snr=True)


def run_number_variance_study(spec: SweepSpec) -> List[SweepRow]:
    """
    Var0 S against Var0 S' across an r or theta_xi sweep.

    At FIXED_NBAR_LO the heterodyne variance is flat while the number variance
    can dip below its coherent value.
    """
    if spec.swept_parameter not in (SweptParameter.R, SweptParameter.THETA_XI):
        raise ConfigurationError(
            f"number-variance study sweeps r or theta_xi, not {spec.swept_parameter.value}"
        )
    return _run_points(spec, with_snr=False)


def number_variance_contrast(rows: Sequence[SweepRow]) -> NumberVarianceContrast:
    """
    Compare each row's Var0 S' with the first coherent (r = 0) row's, and report the Var0 S spread.

    Raises:
        ConfigurationError: if there are no rows or none of them is coherent
    """
    if not rows:
        raise ConfigurationError("contrast needs at least one row")
    coherent = [row for row in rows if row.r <= COHERENT_R_TOLERANCE]
    if not coherent:
        raise ConfigurationError("contrast needs a coherent (r = 0) row as its baseline")
    reference = coherent[0]
    baseline = reference.var0_sprime_numeric
    drop, drop_value = 0.0, reference.value
    if baseline > 0:
        for row in rows:
            if row is reference:
                continue
            candidate = (baseline - row.var0_sprime_numeric) / baseline
            if candidate > drop:
                drop, drop_value = candidate, row.value
    var_s = [row.var0_s_numeric for row in rows]
    scale = max(max(abs(v) for v in var_s), AGREEMENT_FLOOR)
    return NumberVarianceContrast(
        max_sprime_drop=drop,
        drop_value=drop_value,
        var0_s_spread=(max(var_s) - min(var_s)) / scale,
    )


def run_image_band_study(grid_with_image: ModeGrid, grid_without_image: ModeGrid, p: RadarParams) -> ImageBandReport:
    """
    Target-absent variance of S with and without the image-band mode.

    Raises:
        ConfigurationError: if the grids differ by anything other than the image mode
    """
    if grid_with_image.image_index is None:
        raise ConfigurationError("first grid has no image-band mode")
    expected_grid = grid_with_image.without_mode(grid_with_image.image_index)
    if expected_grid != grid_without_image:
        raise ConfigurationError(
            f"grids {grid_with_image.freqs} and {grid_without_image.freqs} differ by more than the image mode"
        )

    lo = SingleModeSpec.squeezed_coherent(p.alpha, p.xi)
    sig = SignalOperatorSpec(omega_h=p.omega_h, theta_h=p.theta_h)
    variances = []
    analytic = []
    for grid in (grid_with_image, grid_without_image):
        partners = check_grid(grid, p)
        state = ProductState.target_absent(grid, lo)
        variances.append(variance(state, build_signal_operator_infinite(grid, sig)))
        analytic.append(var0_s(p, partners))

    with_image, without_image = variances
    if not without_image > 0:
        raise ConfigurationError("image-band ratio undefined: Var0 S vanishes without the image mode")
    expected = sum(grid_with_image.lo_partners(p.omega_h)) / sum(grid_without_image.lo_partners(p.omega_h))
    ratio = with_image / without_image
    logger.info(f"Image band: Var0 S ratio {ratio:.9f} (expected {expected:.9f})")
    return ImageBandReport(
        var_with_image=with_image,
        var_without_image=without_image,
        ratio=ratio,
        expected_ratio=expected,
        analytic_with_image=analytic[0],
        analytic_without_image=analytic[1],
    )
