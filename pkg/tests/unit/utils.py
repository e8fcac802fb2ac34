"""Utilities for unit tests."""

from typing import Callable, List, Tuple

import numpy as np
import pytest

from rsharmonic.closedform import h_thm3_derivatives, q_exact_derivatives
from rsharmonic.models import ProfileSample

Triple = Tuple[float, float, float]


class ODECaseHelper:
    """Known solutions of the radial ODE, as (f, f', f'') at a radius."""

    @staticmethod
    def linear(c: float) -> Callable[[float], Triple]:
        """f = c r solves the radial ODE for every rotationally symmetric metric."""
        return lambda r: (c * r, c, 0.0)

    @staticmethod
    def q(a: float) -> Callable[[float], Triple]:
        return lambda r: q_exact_derivatives(r, a)

    @staticmethod
    def h(c3: float, c4: float) -> Callable[[float], Triple]:
        return lambda r: h_thm3_derivatives(r, c3, c4)

    @staticmethod
    def pole_free_grid(c3: float, lo: float, hi: float, n: int, gap: float = 1e-6) -> List[float]:
        """Radii in [lo, hi] staying away from the zero of 1 + c3 r^2."""
        return [float(r) for r in np.linspace(lo, hi, n) if abs(1.0 + c3 * r * r) > gap]


class ProfileHelper:
    """Builders for ProfileSample objects."""

    @staticmethod
    def quadratic(lo: float = 0.0, hi: float = 1.0, n: int = 11, with_second: bool = True) -> ProfileSample:
        r = np.linspace(lo, hi, n)
        return ProfileSample(
            r=r,
            f=r * r,
            fprime=2 * r,
            fsecond=np.full(n, 2.0) if with_second else None,
        )

    @staticmethod
    def sampled(fn: Callable[[float], Triple], lo: float, hi: float, n: int = 401) -> ProfileSample:
        r = np.linspace(lo, hi, n)
        rows = np.array([fn(float(x)) for x in r])
        return ProfileSample(r=r, f=rows[:, 0], fprime=rows[:, 1], fsecond=rows[:, 2])


@pytest.fixture
def ode_case_helper() -> ODECaseHelper:
    """Provide known radial solutions."""
    return ODECaseHelper()


@pytest.fixture
def profile_helper() -> ProfileHelper:
    """Provide profile builders."""
    return ProfileHelper()
