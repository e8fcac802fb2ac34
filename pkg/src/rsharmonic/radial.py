"""Radial reduction of the harmonic map equation.

For u = f(r)e^{i theta} the equation u_{z zbar} + (2 sigma_u / sigma) u_z u_{zbar} = 0
collapses to the scalar ODE

    f'' = Phi(r, f, f') = -f'/r + f/r^2 - dlog_sigma(f) * ((f')^2 - f^2/r^2).

This module builds that ODE and checks candidate maps against it, both in the
reduced form and directly in the plane.
"""

import cmath
import math
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .exceptions import (
    MetricDomainError,
    StepSizeError,
    UnsupportedMetricError,
)
from .logging_config import get_logger
from .metrics import dlog_sigma
from .models import ConformalMetric, MetricKind, ProfileSample

logger = get_logger(__name__)

Interval = Tuple[float, float]
RadialProfile = Union[ProfileSample, Callable[[float], float]]


class SecondOrderODE:
    """Scalar second-order ODE y'' = phi(x, y, y') on an open interval of x."""

    variable = "x"
    unknown = "y"

    def __init__(self, domain: Interval):
        lo, hi = float(domain[0]), float(domain[1])
        if not lo < hi:
            raise ValueError(f"empty domain ({lo}, {hi})")
        self.domain = (lo, hi)

    def phi(self, x: float, y: float, yp: float) -> float:
        raise NotImplementedError

    def residual(self, x: float, y: float, yp: float, ypp: float) -> float:
        """y'' - phi(x, y, y'); zero exactly on solutions."""
        return ypp - self.phi(x, y, yp)

    def in_domain(self, x: float) -> bool:
        lo, hi = self.domain
        return lo < x < hi

    def admits(self, x: float, y: float) -> bool:
        """Whether the state (x, y) is one the right-hand side is defined at."""
        return self.in_domain(x) and math.isfinite(y)

    def rhs(self, x: float, state: np.ndarray) -> np.ndarray:
        """First-order system form (y, y')' = (y', phi)."""
        y, yp = state[0], state[1]
        return np.array([yp, self.phi(x, y, yp)])

    def describe(self) -> str:
        return f"{self.unknown}'' = phi({self.variable}, {self.unknown}, {self.unknown}')"


class RadialODE(SecondOrderODE):
    """Radial harmonic-map ODE for a rotationally symmetric target metric."""

    variable = "r"
    unknown = "f"

    def __init__(self, metric: ConformalMetric, domain: Optional[Interval] = None):
        super().__init__(domain or (0.0, math.inf))
        if self.domain[0] < 0:
            raise ValueError("radial domain must lie in r > 0")
        self.metric = metric

    def coupling(self, f: float) -> float:
        """Coefficient dlog_sigma(f) of the nonlinear term."""
        if self.metric.kind == MetricKind.EUCLIDEAN:
            return 0.0
        return dlog_sigma(self.metric, f)

    def phi(self, r: float, f: float, fp: float) -> float:
        if r <= 0:
            raise MetricDomainError("radial ODE is singular at r <= 0", r=r)
        base = -fp / r + f / (r * r)
        if self.metric.kind == MetricKind.EUCLIDEAN:
            return base
        return base - self.coupling(f) * (fp * fp - f * f / (r * r))

    def admits(self, r: float, f: float) -> bool:
        if not super().admits(r, f):
            return False
        return self.metric.kind == MetricKind.EUCLIDEAN or self.metric.contains(f)

    def describe(self) -> str:
        kind = self.metric.kind
        head = "f'' + f'/r - f/r^2"
        tail = "((f')^2 - f^2/r^2) = 0"
        if kind == MetricKind.EUCLIDEAN:
            return f"{head} = 0"
        if kind == MetricKind.POINCARE_DISC:
            return f"{head} + (2f/(1 - f^2)) {tail}"
        if kind == MetricKind.PUNCTURED_DISC:
            return f"{head} - ((1 + ln f)/(f ln f)) {tail}"
        k = math.pi / self.metric.a
        return f"{head} - ((1 + {k:.12g} cot({k:.12g} ln f))/f) {tail}"

    def describe_domain(self) -> str:
        lo, hi = self.metric.bounds
        target = f"f in ({lo:.12g}, {hi:.12g})"
        if self.metric.kind == MetricKind.POINCARE_DISC:
            target = f"f in [{lo:.12g}, {hi:.12g})"
        return f"r in ({self.domain[0]:.12g}, {self.domain[1]:.12g}); {target}"


def reduce(metric: ConformalMetric, domain: Optional[Interval] = None) -> RadialODE:
    """Radial ODE of rotationally symmetric harmonic maps into ``metric``."""
    ode = RadialODE(metric, domain)
    logger.debug("Reduced harmonic map equation", metric=metric.label())
    return ode


def residual_1d(ode: SecondOrderODE, r: float, f: float, fp: float, fpp: float) -> float:
    """Residual f'' - Phi(r, f, f') of a single point.

    Raises:
        MetricDomainError: r outside the ODE domain or f outside the metric domain.
    """
    if not ode.in_domain(r):
        raise MetricDomainError("radius outside the ODE domain", r=r, domain=ode.domain)
    return ode.residual(r, f, fp, fpp)


def _as_callable(profile: RadialProfile) -> Tuple[Callable[[float], float], Interval]:
    if isinstance(profile, ProfileSample):
        return profile.interpolant(), (float(profile.r[0]), float(profile.r[-1]))
    return profile, (0.0, math.inf)


def residual_2d(
    metric: ConformalMetric,
    profile: RadialProfile,
    z: complex,
    h: float = 1e-3,
    support: Optional[Interval] = None,
) -> complex:
    """Planar residual u_{z zbar} + (2 sigma_u/sigma) u_z u_{zbar} of u = f(|z|)e^{i arg z}.

    Second derivatives come from the five-point Laplacian and first derivatives
    from central differences, so the truncation error is O(h^2). ``support`` is
    the radial interval where ``profile`` is defined; a ProfileSample supplies
    its own.

    Raises:
        StepSizeError: h is not positive or the 2h-disc around z leaves the support.
        MetricDomainError: |u| leaves the metric domain at a stencil node.
    """
    f, sample_support = _as_callable(profile)
    lo, hi = support or sample_support
    z = complex(z)
    rho = abs(z)
    if not h > 0:
        raise StepSizeError("finite-difference step must be positive", h=h)
    if rho - 2 * h <= lo or rho + 2 * h >= hi:
        raise StepSizeError(
            "stencil does not fit inside the profile support",
            z=str(z),
            h=h,
            support=(lo, hi),
        )

    def u(w: complex) -> complex:
        radius = abs(w)
        return float(f(radius)) * (w / radius)

    center = u(z)
    east, west = u(z + h), u(z - h)
    north, south = u(z + 1j * h), u(z - 1j * h)

    laplacian = (east + west + north + south - 4 * center) / (h * h)
    u_x = (east - west) / (2 * h)
    u_y = (north - south) / (2 * h)
    u_z = 0.5 * (u_x - 1j * u_y)
    u_zbar = 0.5 * (u_x + 1j * u_y)
    value = 0.25 * laplacian

    if metric.kind == MetricKind.EUCLIDEAN:
        return value
    modulus = abs(center)
    if modulus == 0.0:
        if metric.kind != MetricKind.POINCARE_DISC:
            metric.check_domain(modulus)
        return value
    # 2 sigma_u / sigma = dlog_sigma(|u|) * conj(u) / |u|
    factor = dlog_sigma(metric, modulus) * center.conjugate() / modulus
    return value + factor * u_z * u_zbar


def expected_residual_2d(ode: RadialODE, z: complex, f: float, fp: float, fpp: float) -> complex:
    """Planar residual implied by a 1D residual: (1/4) e^{i arg z} (f'' - Phi)."""
    return 0.25 * cmath.exp(1j * cmath.phase(z)) * ode.residual(abs(z), f, fp, fpp)


def invert_target(
    metric: ConformalMetric, f: float, fp: float, fpp: float
) -> Tuple[float, float, float]:
    """Compose a profile with the annulus isometry f -> e^{-a}/f.

    Swaps the boundary circles of P(a), so increasing solutions of the radial
    ODE become decreasing ones. Returns the new (f, f', f'') at the same r.
    """
    if metric.kind != MetricKind.ANNULUS:
        raise UnsupportedMetricError(
            "target inversion is an isometry only of the hyperbolic annulus",
            kind=metric.kind.value,
        )
    if f == 0:
        raise MetricDomainError("cannot invert f = 0", f=f)
    c = math.exp(-metric.a)
    g = c / f
    gp = -c * fp / (f * f)
    gpp = c * (2.0 * fp * fp / f**3 - fpp / (f * f))
    return g, gp, gpp


def invert_domain(
    a: float, r: float, f: float, fp: float, fpp: float
) -> Tuple[float, float, float, float]:
    """Precompose a profile on P(a) with the inversion r -> e^{-a}/r.

    The radial ODE is invariant under this change of variable for every target
    metric. Returns (s, g, g', g'') with s = e^{-a}/r and g(s) = f(r).
    """
    if a <= 0:
        raise MetricDomainError("annulus modulus must be positive", a=a)
    if r <= 0:
        raise MetricDomainError("radius must be positive", r=r)
    c = math.exp(-a)
    s = c / r
    gp = -fp * r * r / c
    gpp = (fpp * r**4 + 2.0 * fp * r**3) / (c * c)
    return s, f, gp, gpp


__all__ = [
    "SecondOrderODE",
    "RadialODE",
    "reduce",
    "residual_1d",
    "residual_2d",
    "expected_residual_2d",
    "invert_target",
    "invert_domain",
]
