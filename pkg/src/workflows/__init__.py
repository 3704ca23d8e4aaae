"""Sweep studies, kernel convergence, detection curves and the verification suite."""

from .detection import DetectionPoint, gaussian_detection_curve
from .kernel import KernelConvergenceReport, KernelConvergenceRow, run_kernel_convergence
from .sweeps import (
    ImageBandReport,
    Normalization,
    NumberVarianceContrast,
    OracleMode,
    SweepRow,
    SweepSpec,
    SweptParameter,
    evaluate_point,
    number_variance_contrast,
    run_image_band_study,
    run_number_variance_study,
    run_snr_sweep,
)
from .verification import CheckResult, VerificationWorkflow

__all__ = [
    "CheckResult",
    "DetectionPoint",
    "ImageBandReport",
    "KernelConvergenceReport",
    "KernelConvergenceRow",
    "Normalization",
    "NumberVarianceContrast",
    "OracleMode",
    "SweepRow",
    "SweepSpec",
    "SweptParameter",
    "VerificationWorkflow",
    "evaluate_point",
    "gaussian_detection_curve",
    "number_variance_contrast",
    "run_image_band_study",
    "run_kernel_convergence",
    "run_number_variance_study",
    "run_snr_sweep",
]
