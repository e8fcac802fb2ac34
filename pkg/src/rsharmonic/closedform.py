"""Closed-form objects behind the radial ODE.

Covers the logarithmic substitution F = ln f, the swap to r as a function of F,
the Bernoulli, Riccati and linear first integrals, and the explicit solution
families with their constants.
"""

import math
from typing import Tuple

from .exceptions import (
    ConstantRangeError,
    DegenerateSwapError,
    MetricDomainError,
    PoleError,
    SingularityError,
    UnsupportedMetricError,
)
from .models import ClosedForm, ClosedFormFamily, ConformalMetric, MetricKind
from .numerics import DEFAULT_QUAD_TOL, quad
from .radial import RadialODE, SecondOrderODE

# 1 + c3 r^2 closer to zero than this is a pole of the Theorem 3 family.
POLE_TOL = 1e-12
# Relative agreement required between the two algebraic forms of H.
FORM_AGREEMENT = 1e-12
# Relative slack when checking that r lies in [e^{-a}, 1].
_EDGE_SLACK = 1e-14

# beyond ln(sqrt(c1) |G|) = 20, asinh is ln(2y) to double precision
_ASINH_LOG_SWITCH = 20.0


def _log_coefficient(metric: ConformalMetric, F: float) -> float:
    """lambda(F) in F'' = -F'/r + lambda(F)((F')^2 - 1/r^2)."""
    if metric.kind == MetricKind.ANNULUS:
        if not -metric.a < F < 0:
            raise MetricDomainError("F = ln f must lie in (-a, 0)", F=F, a=metric.a)
        k = math.pi / metric.a
        s = math.sin(k * F)
        if s == 0.0:
            raise SingularityError("cot(pi F / a) has a pole", F=F)
        return k * math.cos(k * F) / s
    if not F < 0:
        raise MetricDomainError("G = ln g must be negative", G=F)
    return 1.0 / F


class LogProfileODE(SecondOrderODE):
    """Radial ODE rewritten for F = ln f (hyperbolic targets only)."""

    variable = "r"
    unknown = "F"

    def __init__(self, radial: RadialODE):
        super().__init__(radial.domain)
        self.radial = radial
        self.metric = radial.metric

    def coefficient(self, F: float) -> float:
        return _log_coefficient(self.metric, F)

    def phi(self, r: float, F: float, Fp: float) -> float:
        if r <= 0:
            raise MetricDomainError("r must be positive", r=r)
        return -Fp / r + self.coefficient(F) * (Fp * Fp - 1.0 / (r * r))

    def admits(self, r: float, F: float) -> bool:
        if not self.in_domain(r) or not math.isfinite(F) or not F < 0:
            return False
        return self.metric.kind != MetricKind.ANNULUS or F > -self.metric.a

    def describe(self) -> str:
        if self.metric.kind == MetricKind.ANNULUS:
            k = math.pi / self.metric.a
            return (
                f"F'' + F'/r - {k:.12g} cot({k:.12g} F) (F')^2 "
                f"+ {k:.12g} cot({k:.12g} F)/r^2 = 0"
            )
        return "G'' + G'/r - (G')^2/G + 1/(r^2 G) = 0"


class SwappedODE(SecondOrderODE):
    """ODE for r as a function of F = ln f, valid where F' does not vanish."""

    variable = "F"
    unknown = "r"

    def __init__(self, log_ode: LogProfileODE):
        metric = log_ode.metric
        lo = -metric.a if metric.kind == MetricKind.ANNULUS else -math.inf
        super().__init__((lo, 0.0))
        self.log_ode = log_ode
        self.metric = metric

    def phi(self, F: float, r: float, rp: float) -> float:
        if r <= 0:
            raise MetricDomainError("r must be positive", r=r)
        lam = self.log_ode.coefficient(F)
        x = rp / r
        return r * (x * x - lam * x + lam * x**3)

    def admits(self, F: float, r: float) -> bool:
        return self.in_domain(F) and math.isfinite(r) and r > 0

    def describe(self) -> str:
        if self.metric.kind == MetricKind.ANNULUS:
            k = math.pi / self.metric.a
            lam = f"{k:.12g} cot({k:.12g} F)"
            return f"r''/r - (r'/r)^2 + {lam} r'/r - (r'/r)^3 {lam} = 0"
        return "r''/r - (r'/r)^2 + r'/(r G) - (r'/r)^3 / G = 0"


def substitute_log(ode: RadialODE) -> LogProfileODE:
    """Rewrite a hyperbolic-target radial ODE in terms of F = ln f.

    Raises:
        UnsupportedMetricError: the target is not the annulus or punctured disc.
    """
    if ode.metric.kind not in (MetricKind.ANNULUS, MetricKind.PUNCTURED_DISC):
        raise UnsupportedMetricError(
            "log substitution needs a hyperbolic annulus or punctured disc target",
            kind=ode.metric.kind.value,
        )
    return LogProfileODE(ode)


def swap_to_r_of_F(odeF: LogProfileODE) -> SwappedODE:
    """Regard r as a function of F."""
    if not isinstance(odeF, LogProfileODE):
        raise UnsupportedMetricError("swap expects the output of substitute_log")
    return SwappedODE(odeF)


def to_log_state(f: float, fp: float, fpp: float) -> Tuple[float, float, float]:
    """(F, F', F'') for F = ln f."""
    if not f > 0:
        raise MetricDomainError("ln f needs f > 0", f=f)
    ratio = fp / f
    return math.log(f), ratio, fpp / f - ratio * ratio


def swap_state(Fr: float, Frr: float) -> Tuple[float, float]:
    """(r_F, r_FF) from (F_r, F_rr); inverse of unswap_state."""
    if Fr == 0.0:
        raise DegenerateSwapError("swap undefined where F'(r) = 0")
    return 1.0 / Fr, -Frr / Fr**3


def unswap_state(rF: float, rFF: float) -> Tuple[float, float]:
    """(F_r, F_rr) from (r_F, r_FF): F_r = 1/r_F, F_rr = -r_FF / r_F^3."""
    if rF == 0.0:
        raise DegenerateSwapError("swap undefined where r'(F) = 0")
    return 1.0 / rF, -rFF / rF**3


# Theorem 1: hyperbolic annulus target


def _check_c0(c0: float) -> None:
    if not 1.0 + c0 > 0:
        raise ConstantRangeError("x needs 1 + c0 > 0", c0=c0)


def x_thm1(F: float, a: float, c0: float) -> float:
    """x = (ln r)'(F) = 1 / sqrt(1 + c0 sin^2(pi F / a)), equal to 1 at F in {-a, 0}."""
    _check_c0(c0)
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    if not -a <= F <= 0:
        raise MetricDomainError("F must lie in [-a, 0]", F=F, a=a)
    if F == 0.0 or F == -a:
        return 1.0
    s = math.sin(math.pi * F / a)
    return 1.0 / math.sqrt(1.0 + c0 * s * s)


def lnr_thm1(F: float, a: float, c0: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    """(ln r)(F) = integral of x_thm1 from 0 to F."""
    x_thm1(F, a, c0)
    if F == 0.0:
        return 0.0
    return quad(lambda t: x_thm1(t, a, c0), 0.0, F, tol)


def bernoulli_residual_thm1(F: float, a: float, c0: float, h: float = 1e-6) -> float:
    """x' + lambda x - lambda x^3 with lambda = (pi/a) cot(pi F/a) and x' by central differences."""
    k = math.pi / a
    lam = k / math.tan(k * F)
    x = x_thm1(F, a, c0)
    xp = (x_thm1(F + h, a, c0) - x_thm1(F - h, a, c0)) / (2.0 * h)
    return xp + lam * x - lam * x**3


# Theorem 2: hyperbolic punctured disc target


def _check_G(G: float) -> None:
    if not G <= 0:
        raise MetricDomainError("G = ln g must be nonpositive", G=G)


def lnr_prime_thm2(G: float, c1: float) -> float:
    """(ln r)'(G) = 1 / sqrt(1 + c1 G^2)."""
    _check_G(G)
    if c1 < 0:
        raise ConstantRangeError("c1 must be nonnegative", c1=c1)
    return 1.0 / math.hypot(1.0, math.sqrt(c1) * G)


def lnr_thm2(G: float, c1: float) -> float:
    """(ln r)(G) = asinh(sqrt(c1) G) / sqrt(c1); equals G when c1 = 0."""
    _check_G(G)
    if c1 < 0:
        raise ConstantRangeError("c1 must be nonnegative", c1=c1)
    if c1 == 0:
        return G
    root = math.sqrt(c1)
    return math.asinh(root * G) / root


def r_thm2(G: float, c1: float) -> float:
    """r(G) = (sqrt(c1) G + sqrt(1 + c1 G^2))^(1/sqrt(c1)).

    Evaluated through asinh so it stays accurate for large negative G.
    """
    if not c1 > 0:
        raise ConstantRangeError("r_thm2 needs c1 > 0", c1=c1)
    return math.exp(lnr_thm2(G, c1))


def lnr_thm2_log(ln_abs_G: float, c1: float) -> float:
    """(ln r)(G) at G = -e^{ln_abs_G}, finite even where G itself overflows."""
    if not c1 > 0:
        raise ConstantRangeError("lnr_thm2_log needs c1 > 0", c1=c1)
    root = math.sqrt(c1)
    x = math.log(root) + ln_abs_G
    if x < _ASINH_LOG_SWITCH:
        return -math.asinh(math.exp(x)) / root
    # asinh(y) = ln(2y) + O(y^-2)
    return -(math.log(2.0) + x) / root


def crossing_thm2_log(a: float, c1: float) -> float:
    """ln|G*| for the G* < 0 with r(G*) = e^{-a}, i.e. G* = -sinh(a sqrt(c1)) / sqrt(c1)."""
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    if not c1 > 0:
        raise ConstantRangeError("crossing_thm2_log needs c1 > 0", c1=c1)
    root = math.sqrt(c1)
    x = a * root
    ln_sinh = x + math.log(-math.expm1(-2.0 * x)) - math.log(2.0)
    return ln_sinh - math.log(root)


# Theorem 3: Euclidean target


def _check_pole(r: float, c3: float) -> float:
    if not r > 0:
        raise MetricDomainError("r must be positive", r=r)
    w = 1.0 + c3 * r * r
    if abs(w) < POLE_TOL:
        raise PoleError("1 + c3 r^2 vanishes", r=r, c3=c3)
    return w


def H_thm3_forms(r: float, c3: float) -> Tuple[float, float]:
    """The two algebraic forms 1/r - 2/(c3 r^3 + r) and -1/r + 2 c3 r/(1 + c3 r^2)."""
    w = _check_pole(r, c3)
    return 1.0 / r - 2.0 / (r * w), -1.0 / r + 2.0 * c3 * r / w


def H_thm3(r: float, c3: float) -> float:
    """H = (ln h)' for the Euclidean-target family.

    Raises:
        PoleError: 1 + c3 r^2 = 0.
        SingularityError: the two algebraic forms disagree beyond rounding.
    """
    first, second = H_thm3_forms(r, c3)
    scale = max(1.0, 1.0 / r, abs(first), abs(second), abs(2.0 / (r * (1.0 + c3 * r * r))))
    if abs(first - second) > FORM_AGREEMENT * scale:
        raise SingularityError(
            "algebraic forms of H disagree", r=r, c3=c3, difference=first - second
        )
    return second


def H_thm3_derivative(r: float, c3: float) -> float:
    """H'(r) = 1/r^2 + 2 c3 (1 - c3 r^2) / (1 + c3 r^2)^2."""
    w = _check_pole(r, c3)
    return 1.0 / (r * r) + 2.0 * c3 * (1.0 - c3 * r * r) / (w * w)


def riccati_residual_thm3(r: float, c3: float) -> float:
    """H' + H^2 + H/r - 1/r^2."""
    H = H_thm3(r, c3)
    return H_thm3_derivative(r, c3) + H * H + H / r - 1.0 / (r * r)


def h_thm3(r: float, c3: float, c4: float) -> float:
    """h = |1 + c3 r^2| e^{c4} / r."""
    w = _check_pole(r, c3)
    return abs(w) * math.exp(c4) / r


def h_thm3_derivatives(r: float, c3: float, c4: float) -> Tuple[float, float, float]:
    """(h, h', h'') away from the kink of |1 + c3 r^2|."""
    w = _check_pole(r, c3)
    scale = math.copysign(math.exp(c4), w)
    return (
        scale * (1.0 / r + c3 * r),
        scale * (c3 - 1.0 / (r * r)),
        scale * 2.0 / r**3,
    )


def admissible_thm3(r: float, c3: float) -> bool:
    """Whether 1 + c3 r^2 > 2 or 1 + c3 r^2 < 0, the sign condition for H > 0."""
    w = 1.0 + c3 * r * r
    return w > 2.0 or w < 0.0


def _q_bounds(r: float, a: float) -> None:
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    lower = math.exp(-a)
    if r < lower * (1.0 - _EDGE_SLACK) or r > 1.0 + _EDGE_SLACK:
        raise MetricDomainError("r must lie in [e^-a, 1]", r=r, a=a)


def q_continued(r: float, a: float) -> float:
    """The formula of q on all of r > 0, without clamping to [e^-a, 1]."""
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    if not r > 0:
        raise MetricDomainError("r must be positive", r=r)
    return math.expm1(2.0 * (a + math.log(r))) / (r * math.expm1(2.0 * a))


def q_exact(r: float, a: float) -> float:
    """q = (e^{2a} r^2 - 1) / (r (e^{2a} - 1)), the harmonic diffeomorphism of P(a) onto D*."""
    _q_bounds(r, a)
    if r <= math.exp(-a):
        return 0.0
    if r >= 1.0:
        return 1.0
    return min(1.0, max(0.0, q_continued(r, a)))


def q_exact_derivatives(r: float, a: float) -> Tuple[float, float, float]:
    """(q, q', q'') with q' = (e^{2a} + 1/r^2)/(e^{2a} - 1) and q'' = -2/(r^3 (e^{2a} - 1))."""
    q = q_exact(r, a)
    denom = math.expm1(2.0 * a)
    return q, (math.exp(2.0 * a) + 1.0 / (r * r)) / denom, -2.0 / (r**3 * denom)


# Proposition 4: Poincare disc target


def v_invsq_prop4(k: float, c5: float) -> float:
    """v^{-2} = k^2 + c5 (1 - k^2)^2 with v = (ln r)'(k)."""
    if c5 < 0:
        raise ConstantRangeError("c5 must be nonnegative", c5=c5)
    if not 0.0 <= k <= 1.0:
        raise MetricDomainError("k must lie in [0, 1]", k=k)
    if k == 0.0 and c5 == 0.0:
        raise ConstantRangeError("v is undefined at k = 0 when c5 = 0", k=k, c5=c5)
    m = 1.0 - k * k
    return k * k + c5 * m * m


def linear_residual_prop4(k: float, c5: float, h: float = 1e-6) -> float:
    """(v^-2)' + 4k/(1-k^2) v^-2 - 2(k + k^3)/(1 - k^2), derivative by central differences."""
    w = v_invsq_prop4(k, c5)
    wp = (v_invsq_prop4(k + h, c5) - v_invsq_prop4(k - h, c5)) / (2.0 * h)
    m = 1.0 - k * k
    return wp + 4.0 * k / m * w - 2.0 * (k + k**3) / m


def prop4_lnr(k: float, k0: float, c5: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    """ln r(k) - ln r(k0) along a Poincare-target trajectory."""
    return quad(lambda t: 1.0 / math.sqrt(v_invsq_prop4(t, c5)), k0, k, tol)


def evaluate(form: ClosedForm, param: float) -> float:
    """Evaluate one member of a closed-form family at its variable ``param``."""
    c = form.constants
    family = form.family
    if family == ClosedFormFamily.THM1_X:
        return x_thm1(param, c["a"], c["c0"])
    if family == ClosedFormFamily.THM1_LNR:
        return lnr_thm1(param, c["a"], c["c0"])
    if family == ClosedFormFamily.THM2_LNR_PRIME:
        return lnr_prime_thm2(param, c["c1"])
    if family == ClosedFormFamily.THM2_R:
        return r_thm2(param, c["c1"])
    if family == ClosedFormFamily.THM3_H:
        return H_thm3(param, c["c3"])
    if family == ClosedFormFamily.THM3_LOWER_H:
        return h_thm3(param, c["c3"], c["c4"])
    if family == ClosedFormFamily.THM3_Q:
        return q_exact(param, c["a"])
    return v_invsq_prop4(param, c["c5"])


__all__ = [
    "LogProfileODE",
    "SwappedODE",
    "substitute_log",
    "swap_to_r_of_F",
    "to_log_state",
    "swap_state",
    "unswap_state",
    "x_thm1",
    "lnr_thm1",
    "bernoulli_residual_thm1",
    "lnr_prime_thm2",
    "lnr_thm2",
    "r_thm2",
    "lnr_thm2_log",
    "crossing_thm2_log",
    "H_thm3_forms",
    "H_thm3",
    "H_thm3_derivative",
    "riccati_residual_thm3",
    "h_thm3",
    "h_thm3_derivatives",
    "admissible_thm3",
    "q_continued",
    "q_exact",
    "q_exact_derivatives",
    "v_invsq_prop4",
    "linear_residual_prop4",
    "prop4_lnr",
    "evaluate",
]
