"""Exception hierarchy for rsharmonic.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Any, Dict, Optional


class RadialHarmonicError(Exception):
    """Base class for every error raised by rsharmonic."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v!r}" for k, v in sorted(self.context.items()))
        return f"{self.message} ({details})"


class MetricDomainError(RadialHarmonicError, ValueError):
    """A radius lies outside the valid domain of a metric or closed form."""


class SingularityError(RadialHarmonicError, ArithmeticError):
    """A formula degenerates at the requested point (e.g. a cot pole)."""


class PoleError(SingularityError):
    """A closed form has a pole at the requested point."""


class StepSizeError(RadialHarmonicError, ValueError):
    """A finite-difference stencil does not fit inside the domain."""


class UnsupportedMetricError(RadialHarmonicError, ValueError):
    """An operation is not defined for the given metric kind."""


class ConstantRangeError(RadialHarmonicError, ValueError):
    """A family constant lies outside its admissible range."""


class DegenerateSwapError(RadialHarmonicError, ValueError):
    """The variable swap is undefined at a critical point of the profile."""


class ConfigError(RadialHarmonicError):
    """Invalid command-line or file configuration."""


class NumericalDiagnostic(RadialHarmonicError):
    """Raised when a numerical routine cannot deliver a trustworthy result.

    Carries the last state reached so callers can report it.
    """

    def __init__(self, message: str, last_state: Optional[Dict[str, float]] = None, **context: Any):
        super().__init__(message, **context)
        self.last_state = last_state or {}


class SingularityStopError(NumericalDiagnostic):
    """The solution left the metric's valid domain during integration."""


class StepUnderflowError(NumericalDiagnostic):
    """The adaptive step size fell below the floor."""


class MaxStepsExceededError(NumericalDiagnostic):
    """The integrator used up its step budget."""


class QuadratureError(NumericalDiagnostic):
    """Adaptive quadrature did not reach the requested tolerance."""


class InvalidBracketError(NumericalDiagnostic):
    """A root bracket does not enclose a sign change."""


class RootNotConvergedError(NumericalDiagnostic):
    """The bracketing root finder stopped without converging."""


__all__ = [
    "RadialHarmonicError",
    "MetricDomainError",
    "SingularityError",
    "PoleError",
    "StepSizeError",
    "UnsupportedMetricError",
    "ConstantRangeError",
    "DegenerateSwapError",
    "ConfigError",
    "NumericalDiagnostic",
    "SingularityStopError",
    "StepUnderflowError",
    "MaxStepsExceededError",
    "QuadratureError",
    "InvalidBracketError",
    "RootNotConvergedError",
]
