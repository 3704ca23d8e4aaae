"""Pytest configuration - project root on sys.path and shared operating points."""

import sys
from pathlib import Path

import pytest

# Add project root so "from src.xxx" works
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.analysis.params import RadarParams  # noqa: E402
from src.operators.grid import ModeGrid  # noqa: E402


@pytest.fixture
def grid():
    """Image, LO and target modes at 99, 100, 101."""
    return ModeGrid.heterodyne(100.0, 1.0)


@pytest.fixture
def radar_params():
    """|alpha| = 2, beta = 1, omega_LO = 100, omega_T = 101, unsqueezed."""
    return RadarParams(alpha=2.0, xi=0.0, beta=1.0, theta_h=0.0, omega_t=101.0, omega_lo=100.0)
