"""
Warning filters for rsharmonic.

SciPy integration warnings stay visible; the quadrature wrapper turns them
into errors.
"""

import os
import warnings
from typing import Optional

_TRUTHY = ("true", "1", "yes", "on")


def _debug_from_env() -> bool:
    return any(os.getenv(name, "").lower() in _TRUTHY for name in ("RSH_DEBUG", "DEBUG"))


def configure_warnings(debug_mode: Optional[bool] = None) -> None:
    """Install warning filters; ``debug_mode`` (or RSH_DEBUG) shows everything."""
    if debug_mode is None:
        debug_mode = _debug_from_env()

    if debug_mode:
        warnings.simplefilter("always")
        return

    # python -m rsharmonic imports the package twice
    warnings.filterwarnings(
        "ignore",
        category=RuntimeWarning,
        message=".*found in sys.modules after import of package.*",
    )
    warnings.filterwarnings("ignore", category=FutureWarning, module="pandas.*")


__all__ = ["configure_warnings"]
