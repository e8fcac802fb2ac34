"""rsharmonic - rotationally symmetric harmonic maps between planar annuli and discs."""

# Configure warnings before any other imports
from .warnings_config import configure_warnings

configure_warnings()

from loguru import logger

# Library users opt in to log output; the CLI enables it in setup_logging.
logger.disable("rsharmonic")

__version__ = "0.1.0"

from .certify import (
    certify_prop4,
    certify_thm1,
    certify_thm2,
    certify_thm3_existence,
    certify_thm3_nonexistence,
    cross_validate_thm1,
)
from .closedform import evaluate, substitute_log, swap_to_r_of_F
from .metrics import core_radius, dlog_sigma, sigma
from .models import (
    Certificate,
    CertificateClaim,
    ClosedForm,
    ClosedFormFamily,
    ConformalMetric,
    MetricKind,
    ProfileSample,
)
from .numerics import IVPSpec, ShootingProblem, find_root, integrate_ivp, quad, shoot
from .radial import RadialODE, reduce, residual_1d, residual_2d
from .cli import main

__all__ = [
    "sigma",
    "dlog_sigma",
    "core_radius",
    "MetricKind",
    "ConformalMetric",
    "ProfileSample",
    "ClosedFormFamily",
    "ClosedForm",
    "CertificateClaim",
    "Certificate",
    "RadialODE",
    "reduce",
    "residual_1d",
    "residual_2d",
    "substitute_log",
    "swap_to_r_of_F",
    "evaluate",
    "IVPSpec",
    "ShootingProblem",
    "integrate_ivp",
    "quad",
    "find_root",
    "shoot",
    "certify_thm1",
    "cross_validate_thm1",
    "certify_thm2",
    "certify_thm3_nonexistence",
    "certify_thm3_existence",
    "certify_prop4",
    "main",
]
