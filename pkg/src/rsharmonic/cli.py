"""Command-line interface for rsharmonic."""

# Configure warnings early
from .warnings_config import configure_warnings

configure_warnings()

import json
import math
import os
import platform
import sys
import time
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
import jsonschema
import numpy as np
import pandas as pd
import scipy
import typer
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from typer.core import TyperGroup

from . import __version__
from .certify import (
    certify_prop4,
    certify_thm1,
    certify_thm2,
    certify_thm3_existence,
    certify_thm3_nonexistence,
    planar_sample,
)
from .closedform import evaluate, q_exact
from .exceptions import (
    ConfigError,
    NumericalDiagnostic,
    RadialHarmonicError,
    SingularityError,
)
from .logging_config import (
    LogContext,
    get_logger,
    log_operation_end,
    log_operation_start,
    setup_logging,
)
from .logging_utils import LogFormatter, PerformanceTracker
from .models import (
    Certificate,
    CertificateClaim,
    ClosedForm,
    ClosedFormFamily,
    ConformalMetric,
    MetricKind,
    ProfileSample,
)
from .numerics import ShootingProblem, shoot
from .outputs import load_run_defaults, profile_frame, write_certificate_json, write_csv
from .radial import reduce as reduce_metric
from .radial import residual_2d
from .settings import Settings

console = Console(stderr=True)

logger = get_logger(__name__)

performance_tracker = PerformanceTracker()

COMMANDS = ("reduce", "solve", "certify", "sample", "verify", "version")


def _usage_error_types() -> Tuple[type, ...]:
    """UsageError of every click package TyperGroup derives from.

    Recent typer releases ship their own copy of click, whose exceptions are not
    subclasses of click.UsageError.
    """
    found = {click.UsageError}
    for base in TyperGroup.__mro__:
        package = base.__module__.rsplit(".", 1)[0]
        for name in (package, f"{package}.exceptions"):
            usage = getattr(sys.modules.get(name), "UsageError", None)
            if isinstance(usage, type) and issubclass(usage, Exception):
                found.add(usage)
    return tuple(found)


USAGE_ERRORS = _usage_error_types()


class _UsageExitGroup(TyperGroup):
    """Report click usage errors with exit code 1 instead of 2.

    Exit code 2 is reserved for numerical diagnostics and FAIL verdicts.
    """

    def make_context(self, info_name, args, parent=None, **extra):  # type: ignore[override]
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except USAGE_ERRORS as exc:
            exc.exit_code = 1  # type: ignore[attr-defined]
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except USAGE_ERRORS as exc:
            exc.exit_code = 1  # type: ignore[attr-defined]
            raise


app = typer.Typer(
    name="rsharmonic",
    cls=_UsageExitGroup,
    help="Rotationally symmetric harmonic maps: reduction, solving, sampling and certificates.",
    rich_markup_mode="rich",
    add_completion=False,
)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class BoundaryCondition(str, Enum):
    existence = "existence"
    identity = "identity"
    custom = "custom"


class VerifyProfile(str, Enum):
    identity = "identity"
    q = "q"
    shoot = "shoot"


CLAIM_ALIASES: Dict[str, CertificateClaim] = {
    "thm1": CertificateClaim.THM1_NONEXISTENCE,
    "thm2": CertificateClaim.THM2_NONEXISTENCE,
    "thm3": CertificateClaim.THM3_NONEXISTENCE,
    "prop4": CertificateClaim.PROP4_NONEXISTENCE,
}

# Sweep flags accepted by each claim.
CLAIM_CONSTANTS: Dict[CertificateClaim, Tuple[str, ...]] = {
    CertificateClaim.THM1_NONEXISTENCE: ("c0",),
    CertificateClaim.THM2_NONEXISTENCE: ("c1",),
    CertificateClaim.THM3_NONEXISTENCE: ("c3", "c4"),
    CertificateClaim.THM3_EXISTENCE: (),
    CertificateClaim.PROP4_NONEXISTENCE: ("c5",),
}

CLAIMS_NEEDING_A = (
    CertificateClaim.THM1_NONEXISTENCE,
    CertificateClaim.THM2_NONEXISTENCE,
    CertificateClaim.THM3_EXISTENCE,
)

FAMILY_ALIASES: Dict[str, ClosedFormFamily] = {
    "x_thm1": ClosedFormFamily.THM1_X,
    "lnr_thm1": ClosedFormFamily.THM1_LNR,
    "lnr_prime_thm2": ClosedFormFamily.THM2_LNR_PRIME,
    "r_thm2": ClosedFormFamily.THM2_R,
    "H_thm3": ClosedFormFamily.THM3_H,
    "h_thm3": ClosedFormFamily.THM3_LOWER_H,
    "q_exact": ClosedFormFamily.THM3_Q,
    "v_invsq_prop4": ClosedFormFamily.PROP4_VINVSQ,
    "v_invsq": ClosedFormFamily.PROP4_VINVSQ,
}


class RunConfig(BaseModel):
    """Validated options of one CLI invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str
    metric: Optional[MetricKind] = None
    a: Optional[float] = Field(None, gt=0)
    needs_a: bool = Field(False, description="The command works on the annulus P(a)")
    constants: Dict[str, List[float]] = Field(default_factory=dict)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    output: Optional[Path] = None
    output_format: str = "csv"

    @field_validator("metric", mode="before")
    @classmethod
    def parse_metric(cls, v: Any) -> Optional[MetricKind]:
        if v is None:
            return None
        return MetricKind.parse(v)

    @field_validator("tolerances")
    @classmethod
    def positive_tolerances(cls, v: Dict[str, float]) -> Dict[str, float]:
        for name, value in v.items():
            if not value > 0:
                raise ValueError(f"{name} must be positive")
        return v

    @model_validator(mode="after")
    def require_modulus(self) -> "RunConfig":
        if self.a is None and (self.metric == MetricKind.ANNULUS or self.needs_a):
            raise ValueError(f"{self.command} needs --a")
        return self

    def conformal_metric(self) -> ConformalMetric:
        if self.metric is None:
            raise ConfigError("no metric selected", command=self.command)
        if self.metric == MetricKind.ANNULUS:
            return ConformalMetric.annulus(self.a)
        return ConformalMetric(kind=self.metric)


def _configure_logging(verbose: bool = False, quiet: bool = False, environment: Optional[str] = None) -> None:
    if quiet:
        level = "ERROR"
    elif verbose:
        level = "DEBUG"
    else:
        level = None
    setup_logging(environment=environment or os.getenv("RSH_ENV", "local"), level=level)

    global logger
    logger = get_logger(__name__)


def _settings(ctx: typer.Context) -> Settings:
    obj = ctx.find_root().obj
    return obj if isinstance(obj, Settings) else Settings.from_env()


def _parse_floats(text: Optional[str], name: str) -> Optional[List[float]]:
    """Comma-separated numbers, or None when the flag was not given."""
    if text is None or not str(text).strip():
        return None
    try:
        values = [float(part) for part in str(text).split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"--{name} expects comma-separated numbers", value=text) from exc
    if not values or not all(math.isfinite(v) for v in values):
        raise ConfigError(f"--{name} expects finite numbers", value=text)
    return values


def _parse_points(text: Optional[str]) -> Optional[List[complex]]:
    if text is None or not text.strip():
        return None
    try:
        return [complex(part.replace(" ", "")) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError("--points expects complex numbers such as 0.6+0.2j", value=text) from exc


def _parse_claim(claim: str) -> CertificateClaim:
    key = claim.strip().lower()
    if key in CLAIM_ALIASES:
        return CLAIM_ALIASES[key]
    try:
        return CertificateClaim(key)
    except ValueError as exc:
        choices = sorted(list(CLAIM_ALIASES) + [c.value for c in CertificateClaim])
        raise ConfigError("unknown claim", claim=claim, choices=choices) from exc


def _parse_family(family: str) -> ClosedFormFamily:
    key = family.strip()
    if key in FAMILY_ALIASES:
        return FAMILY_ALIASES[key]
    try:
        return ClosedFormFamily(key)
    except ValueError as exc:
        choices = sorted(list(FAMILY_ALIASES) + [f.value for f in ClosedFormFamily])
        raise ConfigError("unknown closed-form family", family=family, choices=choices) from exc


def _exit_code(exc: BaseException) -> int:
    return 2 if isinstance(exc, (NumericalDiagnostic, SingularityError)) else 1


def _run(operation: str, verbose: bool, action: Callable[[], int], **context: Any) -> None:
    """Run ``action`` under an operation id and turn failures into exit codes."""
    operation_id = log_operation_start(operation, **context)
    start = time.perf_counter()
    code = 1
    try:
        with LogContext(operation_id, operation=operation):
            code = action()
    except (RadialHarmonicError, ValidationError, jsonschema.ValidationError, OSError) as exc:
        code = _exit_code(exc)
        logger.error(
            f"{operation} failed",
            error=str(exc),
            exception_type=type(exc).__name__,
            exit_code=code,
        )
        label = "Numerical diagnostic" if code == 2 else "Error"
        console.print(f"[red]❌ {label}:[/red] {escape(str(exc))}")
        if isinstance(exc, NumericalDiagnostic) and exc.last_state:
            console.print(f"[dim]last state: {escape(str(exc.last_state))}[/dim]")
        if verbose:
            console.print_exception()
    finally:
        log_operation_end(
            operation,
            operation_id,
            success=code == 0,
            exit_code=code,
            duration=LogFormatter.format_duration(time.perf_counter() - start),
        )
    if code:
        raise typer.Exit(code)


def _show_profile_summary(profile: ProfileSample, output: Optional[Path]) -> None:
    table = Table(title="Shooting Summary", box=box.ROUNDED)
    table.add_column("Property", style="bold cyan")
    table.add_column("Value", style="yellow")
    table.add_row("Samples", str(len(profile)))
    table.add_row("Initial slope", f"{profile.meta['slope']:.15g}")
    table.add_row("Shots", str(profile.meta["shots"]))
    table.add_row("Boundary error", f"{profile.meta['boundary_error']:.3e}")
    table.add_row("Monotone", "yes" if profile.claims_diffeomorphism else "no")
    table.add_row("Output", str(output) if output else "stdout")
    console.print(table)


def _show_certificate_summary(certificate: Certificate) -> None:
    table = Table(title=f"Certificate {certificate.claim.value}", box=box.ROUNDED)
    table.add_column("Constants", style="cyan")
    table.add_column("Verdict")
    shown = certificate.points if len(certificate.points) <= 30 else certificate.failing_points()
    for point in shown:
        constants = ", ".join(f"{k}={v:g}" for k, v in point.constants.items())
        colour = "green" if point.passed else "red"
        table.add_row(constants, f"[{colour}]{point.verdict.value}[/{colour}]")
    console.print(table)
    colour = "green" if certificate.passed else "red"
    console.print(
        f"[{colour}]{certificate.verdict.value}[/{colour}] over {len(certificate.points)} sweep points"
    )


# Common options
_VERBOSE = typer.Option(False, "--verbose", "-v", help="🔍 Verbose logging")
_QUIET = typer.Option(False, "--quiet", "-q", help="🔇 Only errors on stderr")
_ENVIRONMENT = typer.Option(
    None, "--env", "--environment", help="🌍 Logging environment (local, dev, test, stage, prod)"
)
_A = typer.Option(None, "--a", help="Annulus modulus a > 0; P(a) = {e^-a < |z| < 1}")
_OUTPUT = typer.Option(None, "--output", "-o", help="📄 Output file (stdout if omitted)")


@app.callback()
def cli(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(
        None,
        "--config",
        "-c",
        exists=True,
        dir_okay=False,
        help="⚙️ key=value or YAML file pre-populating command options",
    ),
    env_file: Optional[Path] = typer.Option(
        None, "--env-file", exists=True, dir_okay=False, help="dotenv file with RSH_* settings"
    ),
) -> None:
    """Rotationally symmetric harmonic maps between annuli, discs and punctured discs."""
    try:
        ctx.obj = Settings.from_env(env_file)
        if config is not None:
            ctx.default_map = load_run_defaults(config, COMMANDS)
    except ConfigError as exc:
        console.print(f"[red]❌ Configuration error:[/red] {escape(str(exc))}")
        raise typer.Exit(1)


@app.command("reduce")
@performance_tracker.track_performance("cli.reduce")
def cmd_reduce(
    metric: str = typer.Option(
        ..., "--metric", "-m", help="euclidean, poincare, punctured or annulus"
    ),
    a: Optional[float] = _A,
    output_format: OutputFormat = typer.Option(OutputFormat.text, "--format", "-f"),
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """📐 Print the radial ODE f'' = Phi(r, f, f') for a target metric."""
    _configure_logging(verbose, quiet, environment)

    def action() -> int:
        config = RunConfig(command="reduce", metric=metric, a=a, output_format=output_format.value)
        target = config.conformal_metric()
        ode = reduce_metric(target)
        if output_format == OutputFormat.json:
            document = {
                "metric": target.kind.value,
                "a": target.a,
                "equation": ode.describe(),
                "domain": ode.describe_domain(),
            }
            typer.echo(json.dumps(document, indent=2, sort_keys=True))
        else:
            typer.echo(ode.describe())
            typer.echo(ode.describe_domain())
        return 0

    _run("reduce", verbose, action, metric=metric)


def _boundary(
    config: RunConfig,
    bc: BoundaryCondition,
    r_left: Optional[float],
    r_right: Optional[float],
    f_left: Optional[float],
    f_right: Optional[float],
) -> Tuple[float, float, float, float]:
    kind = config.metric
    if bc == BoundaryCondition.existence:
        rl = math.exp(-config.a) if r_left is None else r_left
        rr = 1.0 if r_right is None else r_right
        return rl, rr, 0.0 if f_left is None else f_left, 1.0 if f_right is None else f_right
    if bc == BoundaryCondition.identity:
        if kind == MetricKind.ANNULUS:
            lo, hi = math.exp(-0.75 * config.a), math.exp(-0.25 * config.a)
        elif kind == MetricKind.EUCLIDEAN and config.a is not None:
            lo, hi = math.exp(-config.a), 1.0
        else:
            lo, hi = 0.5, 0.9
        rl = lo if r_left is None else r_left
        rr = hi if r_right is None else r_right
        return rl, rr, rl, rr
    missing = [
        name
        for name, value in (("r-left", r_left), ("r-right", r_right), ("f-left", f_left), ("f-right", f_right))
        if value is None
    ]
    if missing:
        raise ConfigError("--bc custom needs all boundary flags", missing=missing)
    return r_left, r_right, f_left, f_right


@app.command("solve")
@performance_tracker.track_performance("cli.solve")
def cmd_solve(
    ctx: typer.Context,
    metric: str = typer.Option("euclidean", "--metric", "-m", help="Target metric"),
    a: Optional[float] = _A,
    bc: BoundaryCondition = typer.Option(
        BoundaryCondition.existence, "--bc", help="existence: f(e^-a)=0, f(1)=1; identity: f=r; custom"
    ),
    r_left: Optional[float] = typer.Option(None, "--r-left"),
    r_right: Optional[float] = typer.Option(None, "--r-right"),
    f_left: Optional[float] = typer.Option(None, "--f-left"),
    f_right: Optional[float] = typer.Option(None, "--f-right"),
    bracket_lo: Optional[float] = typer.Option(None, "--bracket-lo", help="Lower initial slope"),
    bracket_hi: Optional[float] = typer.Option(None, "--bracket-hi", help="Upper initial slope"),
    samples: Optional[int] = typer.Option(None, "--samples", min=2),
    rtol: Optional[float] = typer.Option(None, "--rtol"),
    atol: Optional[float] = typer.Option(None, "--atol"),
    root_tol: Optional[float] = typer.Option(None, "--root-tol"),
    output: Optional[Path] = _OUTPUT,
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """🎯 Shoot a two-point boundary value problem; CSV columns r,f,fprime,residual_1d."""
    _configure_logging(verbose, quiet, environment)

    def action() -> int:
        settings = _settings(ctx)
        tolerances = {
            "rtol": rtol if rtol is not None else settings.ivp_rtol,
            "atol": atol if atol is not None else settings.ivp_atol,
            "tol": root_tol if root_tol is not None else settings.root_tol,
        }
        config = RunConfig(
            command="solve",
            metric=metric,
            a=a,
            needs_a=bc == BoundaryCondition.existence,
            tolerances=tolerances,
            output=output,
        )
        ode = reduce_metric(config.conformal_metric())
        rl, rr, fl, fr = _boundary(config, bc, r_left, r_right, f_left, f_right)
        options: Dict[str, Any] = dict(
            tolerances,
            samples=samples or settings.shoot_samples,
            max_steps=settings.ivp_max_steps,
        )
        if (bracket_lo is None) != (bracket_hi is None):
            raise ConfigError("--bracket-lo and --bracket-hi go together")
        if bracket_lo is not None:
            options["bracket"] = (bracket_lo, bracket_hi)
        problem = ShootingProblem.from_boundary(ode, rl, fl, rr, fr, **options)
        profile = shoot(problem)
        write_csv(profile_frame(ode, profile), output)
        if not quiet:
            _show_profile_summary(profile, output)
        return 0

    _run("solve", verbose, action, metric=metric, bc=bc.value)


@app.command("certify")
@performance_tracker.track_performance("cli.certify")
def cmd_certify(
    ctx: typer.Context,
    claim: str = typer.Option(
        ..., "--claim", help="thm1, thm2, thm3, thm3-existence, prop4 or a full claim name"
    ),
    a: Optional[float] = _A,
    c0: Optional[str] = typer.Option(None, "--c0", help="Comma-separated c0 values"),
    c1: Optional[str] = typer.Option(None, "--c1", help="Comma-separated c1 values"),
    c3: Optional[str] = typer.Option(None, "--c3", help="Comma-separated c3 values"),
    c4: Optional[str] = typer.Option(None, "--c4", help="Comma-separated c4 values"),
    c5: Optional[str] = typer.Option(None, "--c5", help="Comma-separated c5 values"),
    cross_check: bool = typer.Option(
        False, "--cross-check", help="Also integrate the ODE against the closed form"
    ),
    output: Optional[Path] = _OUTPUT,
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """🧾 Compute a certificate as JSON; exit 0 on PASS, 2 on FAIL."""
    _configure_logging(verbose, quiet, environment)

    def action() -> int:
        settings = _settings(ctx)
        kind = _parse_claim(claim)
        given = {
            name: values
            for name, values in (
                ("c0", _parse_floats(c0, "c0")),
                ("c1", _parse_floats(c1, "c1")),
                ("c3", _parse_floats(c3, "c3")),
                ("c4", _parse_floats(c4, "c4")),
                ("c5", _parse_floats(c5, "c5")),
            )
            if values is not None
        }
        unused = sorted(set(given) - set(CLAIM_CONSTANTS[kind]))
        if unused:
            raise ConfigError("constants do not apply to this claim", claim=kind.value, unused=unused)
        config = RunConfig(
            command="certify",
            a=a,
            needs_a=kind in CLAIMS_NEEDING_A,
            constants=given,
            output=output,
            output_format="json",
        )
        tol = settings.certificate_tol
        if kind == CertificateClaim.THM1_NONEXISTENCE:
            certificate = certify_thm1(
                config.a, given.get("c0"), tol=tol, quad_tol=settings.quad_tol, cross_check=cross_check
            )
        elif kind == CertificateClaim.THM2_NONEXISTENCE:
            certificate = certify_thm2(config.a, given.get("c1"), G_probe=settings.thm2_probe, tol=tol)
        elif kind == CertificateClaim.THM3_NONEXISTENCE:
            certificate = certify_thm3_nonexistence(
                given.get("c3"),
                given.get("c4"),
                r_probe=settings.thm3_probe,
                threshold=settings.thm3_threshold,
            )
        elif kind == CertificateClaim.THM3_EXISTENCE:
            certificate = certify_thm3_existence(config.a, h=settings.residual_step)
        else:
            certificate = certify_prop4(given.get("c5"), tol=tol, cross_check=cross_check)
        write_certificate_json(certificate, output)
        if not quiet:
            _show_certificate_summary(certificate)
        return 0 if certificate.passed else 2

    _run("certify", verbose, action, claim=claim)


@app.command("sample")
@performance_tracker.track_performance("cli.sample")
def cmd_sample(
    family: str = typer.Option(..., "--family", help="Closed-form family, e.g. thm3-q or q_exact"),
    a: Optional[float] = _A,
    c0: Optional[float] = typer.Option(None, "--c0"),
    c1: Optional[float] = typer.Option(None, "--c1"),
    c3: Optional[float] = typer.Option(None, "--c3"),
    c4: Optional[float] = typer.Option(None, "--c4"),
    c5: Optional[float] = typer.Option(None, "--c5"),
    points: Optional[str] = typer.Option(None, "--points", help="Comma-separated parameter values"),
    start: Optional[float] = typer.Option(None, "--start"),
    stop: Optional[float] = typer.Option(None, "--stop"),
    num: int = typer.Option(101, "--num", min=1),
    output: Optional[Path] = _OUTPUT,
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """📈 Evaluate a closed-form family on a grid; CSV columns param,value."""
    _configure_logging(verbose, quiet, environment)

    def action() -> int:
        kind = _parse_family(family)
        constants = {
            name: value
            for name, value in (("a", a), ("c0", c0), ("c1", c1), ("c3", c3), ("c4", c4), ("c5", c5))
            if value is not None
        }
        form = ClosedForm(family=kind, constants=constants)
        params = _parse_floats(points, "points")
        if params is None:
            if start is None or stop is None:
                raise ConfigError("give --points or both --start and --stop")
            params = np.linspace(start, stop, num).tolist()
        values = [evaluate(form, p) for p in params]
        write_csv(pd.DataFrame({"param": params, "value": values}), output)
        logger.info("Sampled closed form", family=kind.value, points=len(params))
        return 0

    _run("sample", verbose, action, family=family)


@app.command("verify")
@performance_tracker.track_performance("cli.verify")
def cmd_verify(
    ctx: typer.Context,
    profile: VerifyProfile = typer.Option(VerifyProfile.q, "--profile", help="identity, q or shoot"),
    metric: str = typer.Option("euclidean", "--metric", "-m", help="Target metric"),
    a: Optional[float] = _A,
    points: Optional[str] = typer.Option(
        None, "--points", help="Comma-separated complex points, e.g. 0.6+0.1j,0.7j"
    ),
    h: Optional[float] = typer.Option(None, "--h", help="Finite-difference step"),
    tol: float = typer.Option(1e-5, "--tol", help="Largest accepted |residual|"),
    output: Optional[Path] = _OUTPUT,
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """🔬 Evaluate the planar harmonic-map residual of u = f(|z|) z/|z|; CSV x,y,residual."""
    _configure_logging(verbose, quiet, environment)

    def action() -> int:
        settings = _settings(ctx)
        config = RunConfig(
            command="verify",
            metric=metric,
            a=a,
            needs_a=profile != VerifyProfile.identity,
            tolerances={"tol": tol},
        )
        target = config.conformal_metric()
        if profile == VerifyProfile.identity:
            if target.kind == MetricKind.EUCLIDEAN:
                support = (math.exp(-config.a), 1.0) if config.a else (0.0, math.inf)
            else:
                support = target.bounds
            radial: Any = lambda rho: rho
        elif profile == VerifyProfile.q:
            support = (math.exp(-config.a), 1.0)
            radial = lambda rho: q_exact(rho, config.a)
        else:
            ode = reduce_metric(target)
            problem = ShootingProblem.from_boundary(
                ode,
                math.exp(-config.a),
                0.0,
                1.0,
                1.0,
                tol=settings.root_tol,
                rtol=settings.ivp_rtol,
                atol=settings.ivp_atol,
                samples=settings.shoot_samples,
            )
            radial = shoot(problem)
            support = (float(radial.r[0]), float(radial.r[-1]))
        lo, hi = support[0], support[1] if math.isfinite(support[1]) else 1.0
        step = h if h is not None else min(settings.residual_step, (hi - lo) / 10.0)
        zs = _parse_points(points) or planar_sample(lo, hi)
        residuals = [abs(residual_2d(target, radial, z, step, support=support)) for z in zs]
        write_csv(
            pd.DataFrame({"x": [z.real for z in zs], "y": [z.imag for z in zs], "residual": residuals}),
            output,
        )
        worst = max(residuals)
        ok = worst <= tol
        if not quiet:
            colour = "green" if ok else "red"
            console.print(
                f"[{colour}]max |residual| = {worst:.3e}[/{colour}] at {len(zs)} points (tol {tol:g}, h {step:g})"
            )
        return 0 if ok else 2

    _run("verify", verbose, action, profile=profile.value, metric=metric)


@app.command("version")
def version(
    verbose: bool = _VERBOSE,
    quiet: bool = _QUIET,
    environment: Optional[str] = _ENVIRONMENT,
) -> None:
    """📋 Show version and system information."""
    _configure_logging(verbose, quiet, environment)
    typer.echo(f"rsharmonic {__version__}")

    if verbose:
        table = Table(title="System Information", box=box.SIMPLE)
        table.add_column("Component", style="cyan")
        table.add_column("Version", style="yellow")
        table.add_row("Python", sys.version.split()[0])
        table.add_row("NumPy", np.__version__)
        table.add_row("SciPy", scipy.__version__)
        table.add_row("pandas", pd.__version__)
        table.add_row("Platform", platform.platform())
        console.print(table)


def main() -> None:
    """Main entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
