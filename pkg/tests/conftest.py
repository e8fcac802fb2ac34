"""Pytest configuration and shared fixtures for rsharmonic tests."""

import math
from pathlib import Path
from typing import Generator, List

import numpy as np
import pytest
from loguru import logger

from rsharmonic.models import ConformalMetric

# Re-exported so the helper fixtures are available in every test module
__all__ = [
    "profile_helper",
    "ode_case_helper",
    "certificate_helper",
    "cli_runner_helper",
    "cli_workflow_helper",
]

try:
    from tests.unit.utils import ode_case_helper, profile_helper  # noqa: F401
except ImportError:
    pass

try:
    from tests.integration.utils import certificate_helper, cli_runner_helper  # noqa: F401
except ImportError:
    pass

try:
    from tests.end_to_end.utils import cli_workflow_helper  # noqa: F401
except ImportError:
    pass


TESTS_DIR = Path(__file__).parent

# Settings variables that would leak a developer's shell into the tests
_RSH_VARIABLES = (
    "RSH_LOG_LEVEL",
    "RSH_LOG_CONSOLE",
    "RSH_LOG_FILE",
    "RSH_LOG_STRUCTURED",
    "RSH_LOG_ROTATION",
    "RSH_LOG_RETENTION",
    "RSH_LOG_COMPRESSION",
    "RSH_PERFORMANCE_ENABLED",
    "RSH_PERFORMANCE_THRESHOLD_MS",
    "RSH_QUAD_TOL",
    "RSH_IVP_RTOL",
    "RSH_IVP_ATOL",
    "RSH_IVP_MAX_STEPS",
    "RSH_ROOT_TOL",
    "RSH_SHOOT_SAMPLES",
    "RSH_THM2_PROBE",
    "RSH_THM3_PROBE",
    "RSH_THM3_THRESHOLD",
    "RSH_RESIDUAL_STEP",
    "RSH_CERTIFICATE_TOL",
)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path) -> Generator[Path, None, None]:
    """Pin the test logging profile, send log files to tmp and ignore stray .env files."""
    for name in _RSH_VARIABLES:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("RSH_ENV", "test")
    monkeypatch.setenv("RSH_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.chdir(tmp_path)
    yield tmp_path
    logger.remove()
    logger.disable("rsharmonic")


@pytest.fixture
def temp_dir(tmp_path) -> Path:
    """Directory for files written by a test."""
    out = tmp_path / "out"
    out.mkdir()
    return out


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(20240521)


@pytest.fixture
def all_metrics() -> List[ConformalMetric]:
    """One metric of each kind."""
    return [
        ConformalMetric.euclidean(),
        ConformalMetric.poincare_disc(),
        ConformalMetric.punctured_disc(),
        ConformalMetric.annulus(1.0),
    ]


@pytest.fixture
def ln2() -> float:
    return math.log(2.0)
