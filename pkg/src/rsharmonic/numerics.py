"""Numerical building blocks: IVP integration, quadrature, root finding, shooting.

Thin wrappers around scipy that add the domain checks, step floor and
diagnostics the certificates rely on.
"""

import math
import warnings
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    field_validator,
    model_validator,
)
from scipy import integrate, optimize
from scipy.integrate import IntegrationWarning
from scipy.interpolate import CubicHermiteSpline

from .exceptions import (
    InvalidBracketError,
    MaxStepsExceededError,
    QuadratureError,
    RadialHarmonicError,
    RootNotConvergedError,
    SingularityStopError,
    StepUnderflowError,
)
from .logging_config import get_logger
from .logging_utils import PerformanceTracker
from .models import ProfileSample
from .radial import SecondOrderODE

logger = get_logger(__name__)
performance_tracker = PerformanceTracker()

DEFAULT_RTOL = 1e-11
DEFAULT_ATOL = 1e-12
DEFAULT_QUAD_TOL = 1e-11
DEFAULT_ROOT_TOL = 1e-13
DEFAULT_MAX_STEPS = 200_000
DEFAULT_SAMPLES = 1001
# Smallest step the integrator may take before declaring a singularity.
STEP_FLOOR = 1e-14
# Offset used instead of a singular left endpoint r = 0.
SINGULAR_START = 1e-6
# Fraction of the interval used as the largest step when dense output is needed.
DENSE_STEP_FRACTION = 1.0 / 200.0


class IVPSpec(BaseModel):
    """Initial value problem for a second-order ODE."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ode: SecondOrderODE
    r0: float
    f0: float
    fp0: float
    r1: float
    rtol: float = Field(DEFAULT_RTOL, gt=0)
    atol: float = Field(DEFAULT_ATOL, gt=0)
    max_steps: int = Field(DEFAULT_MAX_STEPS, gt=0)
    max_step: Optional[float] = Field(None, gt=0)
    t_eval: Optional[np.ndarray] = Field(
        None, description="Points for dense output; accepted steps are returned if unset"
    )

    @field_validator("t_eval", mode="before")
    @classmethod
    def as_array(cls, v: Any) -> Optional[np.ndarray]:
        if v is None:
            return None
        return np.unique(np.asarray(v, dtype=float))

    @model_validator(mode="after")
    def check_interval(self) -> "IVPSpec":
        if self.r0 == self.r1:
            raise ValueError("r0 and r1 must differ")
        for end in (self.r0, self.r1):
            if not self.ode.in_domain(end):
                raise ValueError(f"{end} is outside the ODE domain {self.ode.domain}")
        if self.t_eval is not None:
            lo, hi = sorted((self.r0, self.r1))
            if self.t_eval.size == 0 or self.t_eval[0] < lo or self.t_eval[-1] > hi:
                raise ValueError("t_eval must lie inside [r0, r1]")
        return self

    @property
    def direction(self) -> float:
        return 1.0 if self.r1 > self.r0 else -1.0


class _RhsFailure(Exception):
    """Right-hand side could not be evaluated at a trial state."""

    def __init__(self, x: float, state: np.ndarray, cause: Exception):
        super().__init__(str(cause))
        self.x = x
        self.state = state
        self.cause = cause


def _system(ode: SecondOrderODE) -> Callable[[float, np.ndarray], np.ndarray]:
    def fun(x: float, state: np.ndarray) -> np.ndarray:
        try:
            out = ode.rhs(x, state)
        except (RadialHarmonicError, ArithmeticError, ValueError) as exc:
            raise _RhsFailure(x, state, exc) from exc
        if not np.all(np.isfinite(out)):
            raise _RhsFailure(x, state, ArithmeticError("non-finite derivative"))
        return out

    return fun


def _state(x: float, y: np.ndarray) -> Dict[str, float]:
    return {"r": float(x), "f": float(y[0]), "fprime": float(y[1])}


def integrate_ivp(spec: IVPSpec) -> ProfileSample:
    """Integrate ``spec`` with an adaptive embedded Runge-Kutta 4(5) pair.

    Returns the accepted steps, or cubic Hermite dense output at ``spec.t_eval``.

    Raises:
        SingularityStopError: the solution left the domain of the ODE.
        StepUnderflowError: the step size fell below STEP_FLOOR.
        MaxStepsExceededError: more than ``spec.max_steps`` steps were needed.
    """
    ode = spec.ode
    fun = _system(ode)
    y0 = np.array([spec.f0, spec.fp0], dtype=float)
    if not ode.admits(spec.r0, spec.f0):
        raise SingularityStopError(
            "initial state outside the ODE domain", last_state=_state(spec.r0, y0)
        )

    try:
        solver = integrate.RK45(
            fun,
            spec.r0,
            y0,
            spec.r1,
            rtol=spec.rtol,
            atol=spec.atol,
            max_step=spec.max_step if spec.max_step is not None else np.inf,
        )
        dy0 = fun(spec.r0, y0)
    except _RhsFailure as exc:
        raise SingularityStopError(
            f"right-hand side undefined at the start: {exc.cause}",
            last_state=_state(spec.r0, y0),
        ) from exc.cause
    xs: List[float] = [spec.r0]
    ys: List[np.ndarray] = [y0]
    dys: List[np.ndarray] = [dy0]
    steps = 0

    while solver.status == "running":
        if steps >= spec.max_steps:
            raise MaxStepsExceededError(
                "step budget exhausted",
                last_state=_state(solver.t, solver.y),
                max_steps=spec.max_steps,
            )
        try:
            message = solver.step()
        except _RhsFailure as exc:
            raise SingularityStopError(
                f"right-hand side undefined: {exc.cause}",
                last_state=_state(xs[-1], ys[-1]),
                trial_r=float(exc.x),
            ) from exc.cause
        if solver.status == "failed":
            raise StepUnderflowError(
                message or "step size underflow", last_state=_state(xs[-1], ys[-1])
            )
        steps += 1
        x, y = float(solver.t), solver.y.copy()
        if solver.status == "running" and solver.step_size < STEP_FLOOR:
            raise StepUnderflowError(
                "step size fell below the floor",
                last_state=_state(x, y),
                step=float(solver.step_size),
            )
        if not np.all(np.isfinite(y)) or not ode.admits(x, y[0]):
            raise SingularityStopError(
                "solution left the ODE domain", last_state=_state(x, y)
            )
        xs.append(x)
        ys.append(y)
        dys.append(fun(x, y))

    order = slice(None) if spec.direction > 0 else slice(None, None, -1)
    t = np.asarray(xs)[order]
    state = np.asarray(ys)[order]
    deriv = np.asarray(dys)[order]
    meta = {"steps": steps, "nfev": int(solver.nfev), "direction": spec.direction}

    if spec.t_eval is None:
        return ProfileSample(
            r=t, f=state[:, 0], fprime=state[:, 1], fsecond=deriv[:, 1], meta=meta
        )

    f_interp = CubicHermiteSpline(t, state[:, 0], deriv[:, 0])
    fp_interp = CubicHermiteSpline(t, state[:, 1], deriv[:, 1])
    r_out = spec.t_eval
    f_out = f_interp(r_out)
    fp_out = fp_interp(r_out)
    fpp_out = np.array([ode.phi(x, y, yp) for x, y, yp in zip(r_out, f_out, fp_out)])
    return ProfileSample(r=r_out, f=f_out, fprime=fp_out, fsecond=fpp_out, meta=meta)


def quad(
    integrand: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_QUAD_TOL,
    limit: int = 200,
) -> float:
    """Adaptive Gauss-Kronrod quadrature with absolute error at most ``tol``.

    The rule never evaluates the integrand at ``lo`` or ``hi``.

    Raises:
        QuadratureError: subdivision limit reached or error estimate above tol.
    """
    if not tol > 0:
        raise ValueError("quadrature tolerance must be positive")
    if lo == hi:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                integrand, lo, hi, epsabs=tol, epsrel=0.0, limit=limit
            )
        except IntegrationWarning as exc:
            raise QuadratureError(str(exc).strip(), lo=lo, hi=hi, tol=tol) from exc
    if not math.isfinite(value) or abserr > tol:
        raise QuadratureError(
            "error estimate above tolerance", lo=lo, hi=hi, tol=tol, estimate=abserr
        )
    return float(value)


def find_root(
    fn: Callable[[float], float],
    bracket: Tuple[float, float],
    tol: float = DEFAULT_ROOT_TOL,
    maxiter: int = 200,
) -> float:
    """Brent's method on a sign-changing bracket.

    Raises:
        InvalidBracketError: fn(lo) and fn(hi) do not differ in sign.
        RootNotConvergedError: no convergence within maxiter iterations.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo, f_hi = fn(lo), fn(hi)
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)):
        raise InvalidBracketError("bracket values are not finite", lo=lo, hi=hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise InvalidBracketError(
            "bracket does not enclose a sign change",
            lo=lo,
            hi=hi,
            f_lo=f_lo,
            f_hi=f_hi,
        )
    root, result = optimize.brentq(
        fn, lo, hi, xtol=tol, maxiter=maxiter, full_output=True, disp=False
    )
    if not result.converged:
        raise RootNotConvergedError(
            result.flag, lo=lo, hi=hi, iterations=result.iterations
        )
    logger.debug(
        "Root found", root=root, iterations=result.iterations, calls=result.function_calls
    )
    return float(root)


class ShootingProblem(BaseModel):
    """Two-point boundary value problem solved by shooting on the initial slope."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ode: SecondOrderODE
    r_left: float
    f_left: float
    r_right: float
    f_right: float
    bracket: Tuple[float, float]
    tol: float = Field(DEFAULT_ROOT_TOL, gt=0)
    rtol: float = Field(DEFAULT_RTOL, gt=0)
    atol: float = Field(DEFAULT_ATOL, gt=0)
    samples: int = Field(DEFAULT_SAMPLES, ge=2)
    max_steps: int = Field(DEFAULT_MAX_STEPS, gt=0)
    _bracket_mismatch: Dict[float, float] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def check_layout(self) -> "ShootingProblem":
        """Check radii and bracket order, then shoot from both bracket ends.

        Raises:
            InvalidBracketError: the mismatch is not finite or keeps its sign.
            NumericalDiagnostic: an integration from a bracket end fails.
        """
        if not self.r_left < self.r_right:
            raise ValueError("r_left must be smaller than r_right")
        lo, hi = self.bracket
        if not lo < hi:
            raise ValueError("slope bracket must satisfy s_lo < s_hi")
        m_lo, m_hi = self.mismatch(lo), self.mismatch(hi)
        if not (math.isfinite(m_lo) and math.isfinite(m_hi)) or m_lo * m_hi > 0:
            raise InvalidBracketError(
                "bracket does not enclose a sign change",
                lo=lo,
                hi=hi,
                f_lo=m_lo,
                f_hi=m_hi,
            )
        self._bracket_mismatch = {lo: m_lo, hi: m_hi}
        return self

    @property
    def bracket_mismatch(self) -> Dict[float, float]:
        """Mismatch at the two bracket ends, computed at construction."""
        return dict(self._bracket_mismatch)

    @classmethod
    def from_boundary(
        cls,
        ode: SecondOrderODE,
        r_left: float,
        f_left: float,
        r_right: float,
        f_right: float,
        **kwargs: Any,
    ) -> "ShootingProblem":
        """Problem whose bracket spans [0.5, 4] times the mean slope.

        A left boundary at the singular radius 0 is moved to SINGULAR_START.
        """
        if r_left <= 0.0:
            logger.debug("Shifting singular left boundary", offset=SINGULAR_START)
            r_left = SINGULAR_START
        if "bracket" not in kwargs:
            mean = (f_right - f_left) / (r_right - r_left)
            if mean == 0.0:
                kwargs["bracket"] = (-1.0, 1.0)
            else:
                kwargs["bracket"] = tuple(sorted((0.5 * mean, 4.0 * mean)))
        return cls(
            ode=ode,
            r_left=r_left,
            f_left=f_left,
            r_right=r_right,
            f_right=f_right,
            **kwargs,
        )

    def ivp(self, slope: float, t_eval: Optional[np.ndarray] = None) -> IVPSpec:
        span = self.r_right - self.r_left
        return IVPSpec(
            ode=self.ode,
            r0=self.r_left,
            f0=self.f_left,
            fp0=slope,
            r1=self.r_right,
            rtol=self.rtol,
            atol=self.atol,
            max_steps=self.max_steps,
            max_step=span * DENSE_STEP_FRACTION if t_eval is not None else None,
            t_eval=t_eval,
        )

    def mismatch(self, slope: float) -> float:
        """f(r_right) - f_right for the given initial slope."""
        sample = integrate_ivp(self.ivp(slope))
        return float(sample.f[-1]) - self.f_right


@performance_tracker.track_performance("numerics.shoot")
def shoot(problem: ShootingProblem) -> ProfileSample:
    """Solve ``problem`` and return its profile on ``problem.samples`` radii.

    Raises:
        NumericalDiagnostic: any integrator diagnostic met while shooting.
    """
    # brentq re-evaluates the bracket ends; each evaluation is a full integration.
    shots = problem.bracket_mismatch

    def mismatch(slope: float) -> float:
        if slope not in shots:
            shots[slope] = problem.mismatch(slope)
        return shots[slope]

    slope = find_root(mismatch, problem.bracket, problem.tol)
    grid = np.linspace(problem.r_left, problem.r_right, problem.samples)
    sample = integrate_ivp(problem.ivp(slope, t_eval=grid))

    boundary_error = max(
        abs(float(sample.f[0]) - problem.f_left),
        abs(float(sample.f[-1]) - problem.f_right),
    )
    signs = np.sign(sample.fprime)
    monotone = bool(
        signs[0] != 0
        and np.all(signs == signs[0])
        and np.all(np.diff(sample.f) * signs[0] > 0)
    )
    meta = dict(sample.meta)
    meta.update(slope=slope, shots=len(shots), boundary_error=boundary_error)
    logger.info(
        "Shooting converged",
        slope=slope,
        shots=len(shots),
        boundary_error=boundary_error,
        monotone=monotone,
    )
    return ProfileSample(
        r=sample.r,
        f=sample.f,
        fprime=sample.fprime,
        fsecond=sample.fsecond,
        inner_label=problem.f_left,
        outer_label=problem.f_right,
        claims_diffeomorphism=monotone,
        meta=meta,
    )


__all__ = [
    "IVPSpec",
    "ShootingProblem",
    "integrate_ivp",
    "quad",
    "find_root",
    "shoot",
    "DEFAULT_RTOL",
    "DEFAULT_ATOL",
    "DEFAULT_QUAD_TOL",
    "DEFAULT_ROOT_TOL",
    "STEP_FLOOR",
    "SINGULAR_START",
]
