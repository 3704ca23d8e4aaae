"""Closed-form results for heterodyne detection with a squeezed LO."""

from .formulas import (
    build_snr_report,
    mean_s_present,
    number_variance_closed,
    number_variance_gaussian,
    snr,
    snr_definition,
    snr_ratio,
    var0_s,
)
from .params import DetectorVariant, RadarParams, SNRReport

__all__ = [
    "DetectorVariant",
    "RadarParams",
    "SNRReport",
    "build_snr_report",
    "mean_s_present",
    "number_variance_closed",
    "number_variance_gaussian",
    "snr",
    "snr_definition",
    "snr_ratio",
    "var0_s",
]
