"""
hetsqueeze CLI - command-line interface for the studies and the verification suite.

Usage:
  hetsqueeze verify
  hetsqueeze sweep-snr --values 0,0.5,1
  hetsqueeze sweep-snr --parameter theta_offset --values -1,0,1
  hetsqueeze sweep-numvar --parameter theta_xi --xi_re 0.3
  hetsqueeze image-band
  hetsqueeze kernel --theta_h 1.0471975511965976
  hetsqueeze roc --snr 4

CSV goes to --output_path or standard output; logs go to stderr and the log files.
Exit codes: 0 success, 1 failed check or internal error, 2 usage error, 3 I/O failure.
"""

import argparse
import re
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from ..analysis.formulas import snr
from ..core.config import (
    Command,
    RunConfig,
    config_path_from_env,
    parse_config_text,
    read_config_file,
)
from ..core.errors import HeterodyneError, UsageError
from ..core.logger import setup_logger
from ..storage.result_storage import ResultStorage
from ..workflows.detection import gaussian_detection_curve
from ..workflows.kernel import run_kernel_convergence
from ..workflows.sweeps import (
    SweepSpec,
    SweptParameter,
    run_image_band_study,
    run_number_variance_study,
    run_snr_sweep,
)
from ..workflows.verification import VerificationWorkflow

logger = setup_logger()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

COLUMNS: Dict[Command, Tuple[str, ...]] = {
    Command.VERIFY: ("check", "status", "max_deviation"),
    Command.SWEEP_SNR: ("value", "snr_analytic", "snr_numeric", "snr_ratio", "var0_s", "var0_sprime", "agree"),
    Command.SWEEP_NUMVAR: (
        "value", "nbar_lo", "var0_s", "var0_s_numeric", "var0_sprime", "var0_sprime_numeric", "agree",
    ),
    Command.IMAGE_BAND: ("var_with_image", "var_without_image", "ratio", "expected_ratio"),
    Command.KERNEL: ("tau_periods", "tau", "deviation_kernel_only", "deviation_outer_phase"),
    Command.ROC: ("snr", "pfa", "pd"),
}

CONFIG_KEYS = tuple(name for name in RunConfig.model_fields if name != "command")


class _UsageParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> _UsageParser:
    parser = _UsageParser(
        prog="hetsqueeze",
        allow_abbrev=False,
        description="Heterodyne detection with a squeezed local oscillator: sweeps, checks and detection curves",
    )
    parser.add_argument("command", choices=[c.value for c in Command], help="Study to run")
    parser.add_argument("--config", default=None, help="Config file of key = value lines")
    for key in CONFIG_KEYS:
        parser.add_argument(f"--{key}", default=None, metavar="VALUE", help=f"Override {key}")
    return parser


_NEGATIVE_VALUE = re.compile(r"^-\.?\d")


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--key -1,0,1`` as ``--key=-1,0,1`` so argparse reads it as a value."""
    joined: List[str] = []
    args = list(argv)
    i = 0
    while i < len(args):
        arg = args[i]
        if arg.startswith("--") and "=" not in arg and i + 1 < len(args) and _NEGATIVE_VALUE.match(args[i + 1]):
            joined.append(f"{arg}={args[i + 1]}")
            i += 2
        else:
            joined.append(arg)
            i += 1
    return joined


def parse_config(argv: Sequence[str], config_text: Optional[str] = None) -> RunConfig:
    """
    Build a RunConfig from command-line arguments and optional config-file text.

    Args:
        argv: Arguments after the program name
        config_text: Config-file contents; when None the file named by --config
            (or HETSQUEEZE_CONFIG) is read

    Returns:
        Validated RunConfig

    Raises:
        UsageError: on unknown keys, unparsable or missing values
        OSError: if the config file cannot be read
    """
    args = build_parser().parse_args(_join_negative_values(argv))

    if config_text is None:
        path = args.config or config_path_from_env()
        if path:
            logger.debug(f"Reading config file {path}")
            config_text = read_config_file(path)

    settings: Dict[str, Any] = {}
    if config_text:
        file_settings = parse_config_text(config_text)
        if "command" in file_settings:
            raise UsageError("the command is given on the command line, not in the config file", key="command")
        settings.update(file_settings)
    for key in CONFIG_KEYS:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    settings["command"] = args.command

    try:
        return RunConfig(**settings)
    except ValidationError as e:
        error = e.errors()[0]
        key = str(error["loc"][0]) if error.get("loc") else None
        raise UsageError(error["msg"], key=key) from None


def _sweep_spec(config: RunConfig, parameter: SweptParameter) -> SweepSpec:
    return SweepSpec(
        swept_parameter=parameter,
        values=config.sweep_values,
        held=config.radar_params(),
        grid=config.grid(),
        normalization=config.normalization,
        oracle_mode=config.oracle_mode,
        workers=config.workers,
        cutoff=config.cutoff,
    )


def _verify_rows(config: RunConfig) -> Tuple[List[Dict[str, Any]], bool]:
    workflow = VerificationWorkflow(
        omega_lo=config.omega_lo,
        omega_h=config.omega_h,
        g=config.g,
        seed=config.seed,
        workers=config.workers,
    )
    result = workflow.run()
    rows = [
        {"check": c.name, "status": "pass" if c.passed else "fail", "max_deviation": c.max_deviation}
        for c in result["checks"]
    ]
    return rows, result["success"]


def _sweep_rows(config: RunConfig) -> List[Dict[str, Any]]:
    spec = _sweep_spec(config, config.parameter)
    if config.command is Command.SWEEP_SNR:
        rows = run_snr_sweep(spec)
    else:
        rows = run_number_variance_study(spec)
    return [vars(row) for row in rows]


def _image_band_rows(config: RunConfig) -> List[Dict[str, Any]]:
    report = run_image_band_study(config.grid(), config.grid(with_image=False), config.radar_params())
    return [vars(report)]


def _kernel_rows(config: RunConfig) -> List[Dict[str, Any]]:
    report = run_kernel_convergence(_sweep_spec(config, SweptParameter.TAU))
    for convention, c in report.fitted_c.items():
        logger.info(f"  fitted C ({convention.value}) = {c:.6g}")
    logger.info(f"Verdict: {report.verdict}")
    return [vars(row) for row in report.rows]


def _roc_rows(config: RunConfig) -> List[Dict[str, Any]]:
    value = config.snr if config.snr is not None else snr(config.radar_params())
    logger.info(f"Detection curve at SNR {value:.6g}")
    return [
        {"snr": value, "pfa": point.pfa, "pd": point.pd}
        for point in gaussian_detection_curve(value, config.sweep_values)
    ]


def run(config: RunConfig) -> int:
    """
    Execute one command and write its CSV.

    Returns:
        Exit code (0 success, 1 failed verification or internal error, 3 I/O failure)
    """
    logger.info(f"hetsqueeze {config.command.value}")
    passed = True
    try:
        if config.command is Command.VERIFY:
            rows, passed = _verify_rows(config)
        elif config.command in (Command.SWEEP_SNR, Command.SWEEP_NUMVAR):
            rows = _sweep_rows(config)
        elif config.command is Command.IMAGE_BAND:
            rows = _image_band_rows(config)
        elif config.command is Command.KERNEL:
            rows = _kernel_rows(config)
        else:
            rows = _roc_rows(config)
    except HeterodyneError as e:
        logger.error(f"{config.command.value} failed: {e}")
        return EXIT_FAILED

    try:
        path = ResultStorage().save_rows(rows, COLUMNS[config.command], config.output_path)
    except OSError as e:
        logger.error(f"Cannot write results: {e}")
        return EXIT_IO
    if path:
        logger.info(f"Results saved to: {path}")

    if not passed:
        logger.error("Verification failed")
        return EXIT_FAILED
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None):
    """CLI entry point (console script `hetsqueeze`)."""
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        sys.exit(EXIT_USAGE)
    except OSError as e:
        logger.error(f"Cannot read config file: {e}")
        sys.exit(EXIT_IO)

    try:
        code = run(config)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user. Exiting.")
        code = EXIT_FAILED
    except Exception as e:
        logger.error(f"Fatal error: {str(e)}", exc_info=True)
        code = EXIT_FAILED
    sys.exit(code)


if __name__ == "__main__":
    main()
