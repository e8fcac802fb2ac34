"""Numeric certificates for the nonexistence and existence results.

Each certifier sweeps the constants of an exhaustive solution family and
checks, member by member, the quantified boundary violation that rules the
family out (or, for the existence claim, that the explicit solution really is
one). The sweep grid stands in for a universal quantifier: the certificate is
evidence by family, not a proof.
"""

import cmath
import math
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .closedform import (
    admissible_thm3,
    h_thm3,
    lnr_thm1,
    prop4_lnr,
    q_continued,
    q_exact,
    q_exact_derivatives,
    crossing_thm2_log,
    lnr_thm2_log,
    substitute_log,
    swap_to_r_of_F,
    v_invsq_prop4,
    x_thm1,
    POLE_TOL,
)
from .exceptions import ConstantRangeError
from .logging_config import get_logger
from .logging_utils import PerformanceTracker
from .models import (
    Certificate,
    CertificateClaim,
    ConformalMetric,
    SweepPoint,
    Verdict,
)
from .numerics import (
    DEFAULT_QUAD_TOL,
    DEFAULT_SAMPLES,
    IVPSpec,
    ShootingProblem,
    integrate_ivp,
    shoot,
)
from .radial import invert_domain, reduce, residual_1d, residual_2d

logger = get_logger(__name__)
performance_tracker = PerformanceTracker()


def default_constant_grid(include_zero: bool = True, points: int = 25) -> List[float]:
    """Log-spaced constants over [1e-3, 1e4], plus 0 when admissible."""
    count = points - 1 if include_zero else points
    grid = np.logspace(-3.0, 4.0, count).tolist()
    return ([0.0] if include_zero else []) + grid


def default_c3_grid(points_per_side: int = 12) -> List[float]:
    """c3 values symmetric about 0, magnitudes log-spaced over [1e-3, 1e4]."""
    side = np.logspace(-3.0, 4.0, points_per_side)
    return sorted((-side).tolist() + [0.0] + side.tolist())


DEFAULT_C4_GRID = (-1.0, 0.0, 1.0)

# How far past the closed-form crossing a deepened Theorem 2 probe goes.
PROBE_FACTOR = 1e10
_LN_FLOAT_MAX = math.log(1e308)


def _verdict(ok: bool) -> Verdict:
    return Verdict.PASS if ok else Verdict.FAIL


def _emit(certificate: Certificate) -> Certificate:
    logger.info(
        "Certificate computed",
        claim=certificate.claim.value,
        verdict=certificate.verdict.value,
        points=len(certificate.points),
        failing=len(certificate.failing_points()),
    )
    return certificate


# Theorem 1


def cross_validate_thm1(
    a: float,
    c0: float,
    start_fraction: float = 0.01,
    window: Sequence[float] = (0.1, 0.9),
    samples: int = 41,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> float:
    """Largest |r(F) - exp(lnr_thm1(F))| over F in [-0.9a, -0.1a].

    r(F) is obtained by integrating the swapped ODE for r as a function of F
    from F = -start_fraction * a with the slope given by x_thm1.
    """
    swapped = swap_to_r_of_F(substitute_log(reduce(ConformalMetric.annulus(a))))
    F0 = -start_fraction * a
    r0 = math.exp(lnr_thm1(F0, a, c0))
    F_lo, F_hi = -window[1] * a, -window[0] * a
    grid = np.linspace(F_lo, F_hi, samples)
    spec = IVPSpec(
        ode=swapped,
        r0=F0,
        f0=r0,
        fp0=r0 * x_thm1(F0, a, c0),
        r1=F_lo,
        rtol=rtol,
        atol=atol,
        max_step=(F0 - F_lo) / 400.0,
        t_eval=grid,
    )
    sample = integrate_ivp(spec)
    exact = np.array([math.exp(lnr_thm1(F, a, c0)) for F in sample.r])
    error = float(np.max(np.abs(sample.f - exact)))
    logger.debug("Cross-validated Bernoulli family", a=a, c0=c0, error=error)
    return error


@performance_tracker.track_performance("certify.thm1")
def certify_thm1(
    a: float,
    c0_grid: Optional[Iterable[float]] = None,
    tol: float = 1e-9,
    quad_tol: float = DEFAULT_QUAD_TOL,
    cross_check: bool = False,
    cross_tol: float = 1e-6,
) -> Certificate:
    """ln r stays bounded as F -> -a for every Bernoulli-family member.

    B(c0) = |lnr_thm1(-a)| is finite and squeezed between a / sqrt(1 + c0) and a
    (for c0 >= 0), so r(F) >= e^{-B} > 0 cannot reach the puncture.
    """
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    grid = list(c0_grid) if c0_grid is not None else default_constant_grid()
    tolerances = {"bound": tol, "quadrature": quad_tol}
    if cross_check:
        tolerances["cross_check"] = cross_tol
    points: List[SweepPoint] = []
    for c0 in grid:
        if not 1.0 + c0 > 0:
            raise ConstantRangeError("c0 must exceed -1", c0=c0)
        B = abs(lnr_thm1(-a, a, c0, quad_tol))
        ratio = 1.0 / math.sqrt(1.0 + c0)
        upper = a * max(1.0, ratio)
        lower = a * min(1.0, ratio)
        ok = math.isfinite(B) and lower - tol <= B <= upper + tol
        quantities: Dict[str, object] = {
            "B": B,
            "lower_bound": lower,
            "upper_bound": upper,
            "r_floor": math.exp(-B),
        }
        if cross_check:
            error = cross_validate_thm1(a, c0)
            quantities["cross_check_error"] = error
            ok = ok and error <= cross_tol
        points.append(
            SweepPoint(constants={"a": a, "c0": c0}, quantities=quantities, verdict=_verdict(ok))
        )
    return _emit(
        Certificate(
            claim=CertificateClaim.THM1_NONEXISTENCE,
            params={"a": a, "c0_grid": grid, "cross_check": cross_check},
            points=points,
            tolerances=tolerances,
            narrative=(
                "Theorem 1: ln r = integral of x over [0, F] stays bounded as F -> -a, so no "
                "rotationally symmetric harmonic diffeomorphism maps D* onto P(a) with its "
                "hyperbolic metric."
            ),
        )
    )


# Theorem 2


@performance_tracker.track_performance("certify.thm2")
def certify_thm2(
    a: float,
    c1_grid: Optional[Iterable[float]] = None,
    G_probe: float = -1e6,
    tol: float = 1e-9,
    probe_count: int = 25,
) -> Certificate:
    """r(G) falls below e^{-a} before g reaches 0, so r(g -> 0+) != e^{-a}.

    ``tol`` is the margin required between -a and ln r at the deepest G.
    """
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    if not G_probe < 0:
        raise ConstantRangeError("G_probe must be negative", G_probe=G_probe)
    grid = list(c1_grid) if c1_grid is not None else default_constant_grid()
    inner = math.exp(-a)
    points: List[SweepPoint] = []
    for c1 in grid:
        if c1 < 0:
            raise ConstantRangeError("c1 must be nonnegative", c1=c1)
        if c1 == 0:
            # g = r: the inner boundary circle maps to |u| = e^{-a}, not to the puncture.
            # ln g = -a there, finite even where e^{-a} underflows.
            ok = math.isfinite(a)
            quantities: Dict[str, object] = {
                "branch": "g=r",
                "g_at_inner": inner,
                "ln_g_at_inner": -a,
                "required_g_at_inner": 0.0,
                "margin": inner,
            }
        else:
            # r ~ (2 sqrt(c1) |G|)^(-1/sqrt(c1)) decays slowly for large c1,
            # so the probe lives in ln|G| and the verdict in ln r
            crossing = crossing_thm2_log(a, c1)
            ln_probe = math.log(-G_probe)
            ln_r = lnr_thm2_log(ln_probe, c1)
            deepened = not -a - ln_r > tol
            if deepened:
                ln_probe = max(ln_probe, crossing) + math.log(PROBE_FACTOR)
                ln_r = lnr_thm2_log(ln_probe, c1)
                logger.debug("Probe deepened", c1=c1, ln_abs_G=ln_probe, ln_r=ln_r)
            # ln|G| from ln 1e-3 out to the probe
            start = min(math.log(1e-3), ln_probe - 1.0)
            samples = np.linspace(start, ln_probe, probe_count)
            values = np.array([lnr_thm2_log(float(L), c1) for L in samples])
            monotone = bool(np.all(np.diff(values) < 0))
            ln_margin = -a - ln_r
            ok = ln_margin > tol and monotone
            quantities = {
                "branch": "c1>0",
                "ln_abs_G_crossing": crossing,
                "ln_abs_G_at_probe": ln_probe,
                "probe_deepened": deepened,
                "ln_r_at_probe": ln_r,
                "r_at_probe": math.exp(ln_r),
                "inner_radius": inner,
                "margin": inner - math.exp(ln_r),
                "ln_margin": ln_margin,
                "monotone": monotone,
            }
            if not deepened:
                quantities["G_at_probe"] = G_probe
            elif ln_probe < _LN_FLOAT_MAX:
                quantities["G_at_probe"] = -math.exp(ln_probe)
        points.append(
            SweepPoint(constants={"a": a, "c1": c1}, quantities=quantities, verdict=_verdict(ok))
        )
    return _emit(
        Certificate(
            claim=CertificateClaim.THM2_NONEXISTENCE,
            params={"a": a, "c1_grid": grid, "G_probe": G_probe},
            points=points,
            tolerances={"ln_margin": tol},
            narrative=(
                "Theorem 2: every solution r(G) tends to 0 as g -> 0+ instead of e^{-a}, so no "
                "rotationally symmetric harmonic diffeomorphism maps P(a) onto D* with its "
                "hyperbolic metric."
            ),
        )
    )


# Theorem 3


def admissibility_witness(c3: float) -> float:
    """Radius r0 in (0, 1) where 1 + c3 r0^2 lies in [0, 2]."""
    return min(0.5, 1.0 / math.sqrt(2.0 * abs(c3) + 1.0))


@performance_tracker.track_performance("certify.thm3_nonexistence")
def certify_thm3_nonexistence(
    c3_grid: Optional[Iterable[float]] = None,
    c4_grid: Optional[Iterable[float]] = None,
    r_probe: float = 1e-6,
    threshold: float = 1e5,
) -> Certificate:
    """Every h = |1 + c3 r^2| e^{c4} / r blows up at 0, and H > 0 fails somewhere."""
    if not 0 < r_probe < 1:
        raise ConstantRangeError("r_probe must lie in (0, 1)", r_probe=r_probe)
    c3_values = list(c3_grid) if c3_grid is not None else default_c3_grid()
    c4_values = list(c4_grid) if c4_grid is not None else list(DEFAULT_C4_GRID)
    points: List[SweepPoint] = []
    for c3 in c3_values:
        r0 = admissibility_witness(c3)
        witness_value = 1.0 + c3 * r0 * r0
        witness_ok = not admissible_thm3(r0, c3)
        for c4 in c4_values:
            probe = r_probe
            shifted = False
            while abs(1.0 + c3 * probe * probe) < POLE_TOL:
                probe *= 0.5
                shifted = True
            if shifted:
                logger.warning("Probe hit a pole, shifted", c3=c3, probe=probe)
            h = h_thm3(probe, c3, c4)
            blowup = h > threshold
            points.append(
                SweepPoint(
                    constants={"c3": c3, "c4": c4},
                    quantities={
                        "probe_radius": probe,
                        "probe_shifted": shifted,
                        "h_at_probe": h,
                        "blowup": blowup,
                        "witness_r0": r0,
                        "witness_value": witness_value,
                        "witness_fails_admissibility": witness_ok,
                    },
                    verdict=_verdict(blowup and witness_ok),
                )
            )
    return _emit(
        Certificate(
            claim=CertificateClaim.THM3_NONEXISTENCE,
            params={
                "c3_grid": c3_values,
                "c4_grid": c4_values,
                "r_probe": r_probe,
                "threshold": threshold,
            },
            points=points,
            tolerances={"threshold": threshold},
            narrative=(
                "Theorem 3 (first half): every Euler solution h blows up as r -> 0 and violates "
                "H > 0, so no rotationally symmetric harmonic diffeomorphism maps D* onto P(a) "
                "with its Euclidean metric."
            ),
        )
    )


def planar_sample(lo: float, hi: float, count: int = 20) -> List[complex]:
    """Points spread in angle whose radii cover the middle half of (lo, hi)."""
    width = hi - lo
    out = []
    for j in range(count):
        radius = lo + width * (0.25 + 0.5 * j / max(count - 1, 1))
        angle = 2.0 * math.pi * j / count + 0.1
        out.append(cmath.rect(radius, angle))
    return out


def _planar_residuals(
    metric: ConformalMetric,
    profile: Callable[[float], float],
    inner: float,
    count: int,
    h: float,
) -> Tuple[float, float]:
    """Largest planar residual at step h, and after Richardson extrapolation over h and h/2.

    ``profile`` must be defined past [inner, 1]: the stencil is not clipped to the annulus.
    The O(h^2) term of the stencil cancels in (4 R(h/2) - R(h)) / 3.
    """
    at_step = extrapolated = 0.0
    for z in planar_sample(inner, 1.0, count):
        coarse = residual_2d(metric, profile, z, h, support=(0.0, math.inf))
        fine = residual_2d(metric, profile, z, h / 2.0, support=(0.0, math.inf))
        at_step = max(at_step, abs(coarse))
        extrapolated = max(extrapolated, abs(4.0 * fine - coarse) / 3.0)
    return at_step, extrapolated


@performance_tracker.track_performance("certify.thm3_existence")
def certify_thm3_existence(
    a: float,
    tol: float = 1e-8,
    residual_tol: float = 1e-10,
    residual_2d_tol: float = 1e-5,
    samples: int = DEFAULT_SAMPLES,
    planar_points: int = 20,
    h: float = 1e-3,
    **shoot_options: float,
) -> Certificate:
    """q = (e^{2a} r^2 - 1) / (r (e^{2a} - 1)) is a harmonic diffeomorphism of P(a) onto D*.

    Checks the radial residual, boundary values and monotonicity of q on a grid,
    reproduces q by shooting, evaluates the planar residual, and checks the
    reversed map q(e^{-a}/r) with its swapped boundary values.
    """
    if a <= 0:
        raise ConstantRangeError("a must be positive", a=a)
    ode = reduce(ConformalMetric.euclidean())
    inner = math.exp(-a)
    grid = np.linspace(inner, 1.0, samples)
    triples = [q_exact_derivatives(float(r), a) for r in grid]
    q_values = np.array([t[0] for t in triples])
    slopes = np.array([t[1] for t in triples])

    residual = max(abs(residual_1d(ode, float(r), *t)) for r, t in zip(grid, triples))
    boundary_ok = q_exact(inner, a) == 0.0 and q_exact(1.0, a) == 1.0
    monotone = bool(np.all(slopes > 0) and np.all(np.diff(q_values) > 0))

    problem = ShootingProblem.from_boundary(ode, inner, 0.0, 1.0, 1.0, samples=samples, **shoot_options)
    profile = shoot(problem)
    exact_on_profile = np.array([q_exact(float(r), a) for r in profile.r])
    shoot_error = float(np.max(np.abs(profile.f - exact_on_profile)))
    slope_error = abs(profile.meta["slope"] - 2.0 / -math.expm1(-2.0 * a))

    planar_at_step, planar = _planar_residuals(
        ode.metric, lambda rho: q_continued(rho, a), inner, planar_points, h
    )

    reversed_residual = 0.0
    for r, (q, qp, qpp) in zip(grid[1:-1], triples[1:-1]):
        s, g, gp, gpp = invert_domain(a, float(r), q, qp, qpp)
        reversed_residual = max(reversed_residual, abs(residual_1d(ode, s, g, gp, gpp)))

    ok = (
        residual <= residual_tol
        and boundary_ok
        and monotone
        and profile.claims_diffeomorphism
        and shoot_error < tol
        and planar <= residual_2d_tol
        and reversed_residual <= residual_tol
    )
    point = SweepPoint(
        constants={"a": a},
        quantities={
            "max_residual_1d": residual,
            "boundary_exact": boundary_ok,
            "monotone": monotone,
            "shoot_max_error": shoot_error,
            "shoot_slope": float(profile.meta["slope"]),
            "shoot_slope_error": slope_error,
            "shoot_count": int(profile.meta["shots"]),
            "shoot_monotone": profile.claims_diffeomorphism,
            "max_residual_2d": planar,
            "max_residual_2d_at_step": planar_at_step,
            "residual_2d_step": h,
            "reversed_max_residual_1d": reversed_residual,
        },
        verdict=_verdict(ok),
    )
    return _emit(
        Certificate(
            claim=CertificateClaim.THM3_EXISTENCE,
            params={"a": a, "samples": samples, "planar_points": planar_points},
            points=[point],
            tolerances={
                "shoot": tol,
                "residual_1d": residual_tol,
                "residual_2d": residual_2d_tol,
            },
            narrative=(
                "Theorem 3 (second half): q(r) e^{i theta} is a rotationally symmetric harmonic "
                "diffeomorphism from P(a) onto D* with its Euclidean metric."
            ),
        )
    )


# Proposition 4


def _prop4_b2_closed(c5: float) -> float:
    return c5 if c5 <= 0.5 else 1.0 - 1.0 / (4.0 * c5)


def prop4_bounds(c5: float, grid_points: int = 2001) -> Dict[str, float]:
    """b2 = min and b1 = max of v^{-2} over k in [0, 1], by grid scan plus local refinement."""
    if not c5 > 0:
        raise ConstantRangeError("bounds need c5 > 0", c5=c5)
    ks = np.linspace(0.0, 1.0, grid_points)
    m = 1.0 - ks * ks
    values = ks * ks + c5 * m * m
    i = int(np.argmin(values))
    lo, hi = ks[max(i - 1, 0)], ks[min(i + 1, grid_points - 1)]
    refined = optimize.minimize_scalar(
        lambda k: k * k + c5 * (1.0 - k * k) ** 2,
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if refined.fun < values[i]:
        k_min, b2 = float(refined.x), float(refined.fun)
    else:
        k_min, b2 = float(ks[i]), float(values[i])
    return {"b2": b2, "k_min": k_min, "b1": float(np.max(values))}


def cross_validate_prop4(
    c5: float, k0: float = 0.5, fraction: float = 0.5, samples: int = 21
) -> float:
    """Largest |ln r - prop4_lnr(k)| along an integrated Poincare-target trajectory.

    Starts at r = 1, k = k0 with k' = sqrt(v^{-2}(k0)) and integrates outwards
    to ``fraction`` of ln sup r.
    """
    ode = reduce(ConformalMetric.poincare_disc())
    ln_sup = prop4_lnr(1.0, k0, c5)
    r_end = math.exp(fraction * ln_sup)
    grid = np.linspace(1.0, r_end, samples)
    spec = IVPSpec(
        ode=ode,
        r0=1.0,
        f0=k0,
        fp0=math.sqrt(v_invsq_prop4(k0, c5)),
        r1=r_end,
        max_step=(r_end - 1.0) / 200.0,
        t_eval=grid,
    )
    sample = integrate_ivp(spec)
    errors = [
        abs(math.log(r) - prop4_lnr(float(k), k0, c5)) for r, k in zip(sample.r, sample.f)
    ]
    return float(max(errors))


@performance_tracker.track_performance("certify.prop4")
def certify_prop4(
    c5_grid: Optional[Iterable[float]] = None,
    tol: float = 1e-9,
    grid_points: int = 2001,
    cross_check: bool = False,
    cross_tol: float = 1e-7,
) -> Certificate:
    """v^{-2} >= b2 > 0 bounds |(ln r)'(k)| by 1/sqrt(b2), so r stays finite as k -> 1."""
    grid = list(c5_grid) if c5_grid is not None else default_constant_grid()
    points: List[SweepPoint] = []
    for c5 in grid:
        if c5 < 0:
            raise ConstantRangeError("c5 must be nonnegative", c5=c5)
        if c5 == 0:
            # v^{-2} = k^2 gives r = c6 k, bounded by c6
            quantities: Dict[str, object] = {"branch": "r=c6*k", "sup_r_over_c6": 1.0}
            ok = True
        else:
            bounds = prop4_bounds(c5, grid_points)
            b2 = bounds["b2"]
            ln_sup = 1.0 / math.sqrt(b2)
            quantities = {
                "branch": "c5>0",
                "b2": b2,
                "b1": bounds["b1"],
                "k_min": bounds["k_min"],
                "b2_closed_form": _prop4_b2_closed(c5),
                "ln_sup_r_bound": ln_sup,
                "sup_r_bound": math.exp(ln_sup),
            }
            ok = b2 > tol and b2 <= min(1.0, c5) + tol
            if cross_check:
                error = cross_validate_prop4(c5)
                quantities["cross_check_error"] = error
                ok = ok and error <= cross_tol
        points.append(SweepPoint(constants={"c5": c5}, quantities=quantities, verdict=_verdict(ok)))
    tolerances = {"b2": tol}
    if cross_check:
        tolerances["cross_check"] = cross_tol
    return _emit(
        Certificate(
            claim=CertificateClaim.PROP4_NONEXISTENCE,
            params={"c5_grid": grid, "grid_points": grid_points, "cross_check": cross_check},
            points=points,
            tolerances=tolerances,
            narrative=(
                "Proposition 4: (ln r)'(k) <= 1/sqrt(b2) keeps r bounded as k -> 1, so no "
                "rotationally symmetric harmonic diffeomorphism maps C onto the hyperbolic disc."
            ),
        )
    )


__all__ = [
    "default_constant_grid",
    "default_c3_grid",
    "cross_validate_thm1",
    "certify_thm1",
    "certify_thm2",
    "admissibility_witness",
    "planar_sample",
    "certify_thm3_nonexistence",
    "certify_thm3_existence",
    "prop4_bounds",
    "cross_validate_prop4",
    "certify_prop4",
]
