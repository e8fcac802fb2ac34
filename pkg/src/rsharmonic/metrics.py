"""Rotationally symmetric target metrics sigma(rho)|du| and their log-derivatives.

All four metrics are functions of rho = |u| only; the radial reduction needs
nothing else from them.
"""

import math

from .exceptions import SingularityError, UnsupportedMetricError
from .models import ConformalMetric, MetricKind

# sin((pi/a) ln rho) below this is treated as a zero of the annulus formulas.
_SIN_FLOOR = 4 * 2.220446049250313e-16


def _annulus_angle(metric: ConformalMetric, rho: float) -> float:
    angle = (math.pi / metric.a) * math.log(rho)
    if abs(math.sin(angle)) < _SIN_FLOOR:
        raise SingularityError(
            "annulus metric degenerates where (pi/a) ln rho is a multiple of pi",
            rho=rho,
            a=metric.a,
        )
    return angle


def sigma(metric: ConformalMetric, rho: float) -> float:
    """Conformal factor sigma(rho) of the target metric.

    Raises:
        MetricDomainError: rho outside the metric's valid domain.
    """
    rho = metric.check_domain(rho)
    kind = metric.kind
    if kind == MetricKind.EUCLIDEAN:
        return 1.0
    if kind == MetricKind.POINCARE_DISC:
        return 2.0 / (1.0 - rho * rho)
    if kind == MetricKind.PUNCTURED_DISC:
        return 1.0 / (rho * math.log(1.0 / rho))
    angle = _annulus_angle(metric, rho)
    return -math.pi / (metric.a * rho * math.sin(angle))


def dlog_sigma(metric: ConformalMetric, rho: float) -> float:
    """d(ln sigma)/d(rho) in closed form.

    Raises:
        MetricDomainError: rho outside the metric's valid domain.
        SingularityError: the annulus cotangent has a pole at rho.
    """
    rho = metric.check_domain(rho)
    kind = metric.kind
    if kind == MetricKind.EUCLIDEAN:
        return 0.0
    if kind == MetricKind.POINCARE_DISC:
        return 2.0 * rho / (1.0 - rho * rho)
    if kind == MetricKind.PUNCTURED_DISC:
        log_rho = math.log(rho)
        return -(log_rho + 1.0) / (rho * log_rho)
    angle = _annulus_angle(metric, rho)
    k = math.pi / metric.a
    return -1.0 / rho - k / (rho * math.tan(angle))


def core_radius(metric: ConformalMetric) -> float:
    """Radius of the annulus core geodesic, where rho * sigma(rho) is smallest."""
    if metric.kind != MetricKind.ANNULUS:
        raise UnsupportedMetricError(
            "only the hyperbolic annulus has a core geodesic", kind=metric.kind.value
        )
    return math.exp(-metric.a / 2.0)


__all__ = ["sigma", "dlog_sigma", "core_radius"]
