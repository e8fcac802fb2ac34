"""Pydantic models for metrics, sampled profiles, closed forms and certificates."""

import math
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)
from scipy.interpolate import BPoly, CubicHermiteSpline

from .exceptions import MetricDomainError


class MetricKind(str, Enum):
    """Supported rotationally symmetric target metrics."""

    EUCLIDEAN = "euclidean"
    POINCARE_DISC = "poincare-disc"
    PUNCTURED_DISC = "hyperbolic-punctured-disc"
    ANNULUS = "hyperbolic-annulus"

    @classmethod
    def parse(cls, value: Union[str, "MetricKind"]) -> "MetricKind":
        """Resolve a kind from its value or a short CLI alias."""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "euclid": cls.EUCLIDEAN,
            "poincare": cls.POINCARE_DISC,
            "disc": cls.POINCARE_DISC,
            "punctured": cls.PUNCTURED_DISC,
            "punctured-disc": cls.PUNCTURED_DISC,
            "annulus": cls.ANNULUS,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


class ConformalMetric(BaseModel):
    """Target metric sigma(|u|)|du| described by its kind and modulus."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: MetricKind = Field(..., description="Metric kind")
    a: Optional[float] = Field(
        None, description="Modulus of the annulus P(a); only for hyperbolic-annulus"
    )

    @model_validator(mode="after")
    def check_modulus(self) -> "ConformalMetric":
        """Require a > 0 exactly when the target is the hyperbolic annulus."""
        if self.kind == MetricKind.ANNULUS:
            if self.a is None or not math.isfinite(self.a) or self.a <= 0:
                raise ValueError("hyperbolic-annulus requires a finite a > 0")
        elif self.a is not None:
            raise ValueError(f"parameter a is not used by {self.kind.value}")
        return self

    @classmethod
    def euclidean(cls) -> "ConformalMetric":
        return cls(kind=MetricKind.EUCLIDEAN)

    @classmethod
    def poincare_disc(cls) -> "ConformalMetric":
        return cls(kind=MetricKind.POINCARE_DISC)

    @classmethod
    def punctured_disc(cls) -> "ConformalMetric":
        return cls(kind=MetricKind.PUNCTURED_DISC)

    @classmethod
    def annulus(cls, a: float) -> "ConformalMetric":
        return cls(kind=MetricKind.ANNULUS, a=a)

    @property
    def bounds(self) -> Tuple[float, float]:
        """Closure of the valid radial domain as (lower, upper)."""
        if self.kind == MetricKind.EUCLIDEAN:
            return 0.0, math.inf
        if self.kind == MetricKind.ANNULUS:
            return math.exp(-self.a), 1.0
        return 0.0, 1.0

    def contains(self, rho: float) -> bool:
        """Whether rho lies in the valid domain (0 is included only for the disc)."""
        if not math.isfinite(rho):
            return False
        lo, hi = self.bounds
        if self.kind == MetricKind.POINCARE_DISC:
            return lo <= rho < hi
        return lo < rho < hi

    def check_domain(self, rho: float) -> float:
        """Return rho as a float or raise MetricDomainError."""
        rho = float(rho)
        if not self.contains(rho):
            lo, hi = self.bounds
            raise MetricDomainError(
                f"radius outside the valid domain of {self.kind.value}",
                rho=rho,
                lower=lo,
                upper=hi,
            )
        return rho

    def sample_domain(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw n radii strictly inside the valid domain."""
        lo, hi = self.bounds
        if self.kind == MetricKind.EUCLIDEAN:
            lo, hi = 1e-3, 10.0
        width = hi - lo
        return lo + width * rng.uniform(1e-3, 1.0 - 1e-3, size=n)

    def label(self) -> str:
        if self.kind == MetricKind.ANNULUS:
            return f"{self.kind.value}(a={self.a:g})"
        return self.kind.value


ArrayLike = Union[np.ndarray, List[float]]


class ProfileSample(BaseModel):
    """Sampled radial profile f(r) with first and optional second derivative."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    r: np.ndarray
    f: np.ndarray
    fprime: np.ndarray
    fsecond: Optional[np.ndarray] = None
    inner_label: Optional[float] = Field(None, description="Target value at inner radius")
    outer_label: Optional[float] = Field(None, description="Target value at outer radius")
    claims_diffeomorphism: bool = False
    meta: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("r", "f", "fprime", "fsecond", mode="before")
    @classmethod
    def as_float_array(cls, v: Optional[ArrayLike]) -> Optional[np.ndarray]:
        if v is None:
            return None
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 1:
            raise ValueError("profile columns must be one-dimensional")
        return arr

    @model_validator(mode="after")
    def check_rows(self) -> "ProfileSample":
        """Require aligned columns, increasing radii and monotone f when claimed."""
        n = self.r.size
        columns = [self.f, self.fprime] + ([self.fsecond] if self.fsecond is not None else [])
        if any(c.size != n for c in columns):
            raise ValueError("profile columns have different lengths")
        if n < 2:
            raise ValueError("a profile needs at least two rows")
        if np.any(np.diff(self.r) <= 0):
            raise ValueError("r must be strictly increasing")
        if self.claims_diffeomorphism:
            signs = np.sign(self.fprime)
            if np.any(signs == 0) or np.any(signs != signs[0]):
                raise ValueError("f' changes sign on a profile claiming diffeomorphism")
            steps = np.diff(self.f) * signs[0]
            if np.any(steps <= 0):
                raise ValueError("f is not strictly monotone")
        return self

    def __len__(self) -> int:
        return int(self.r.size)

    @property
    def is_increasing(self) -> bool:
        return bool(np.all(self.fprime > 0) and np.all(np.diff(self.f) > 0))

    def interpolant(self) -> Callable[[Union[float, np.ndarray]], Union[float, np.ndarray]]:
        """Piecewise Hermite interpolant of f.

        Quintic when second derivatives are stored, cubic otherwise.
        """
        if self.fsecond is not None:
            data = np.column_stack([self.f, self.fprime, self.fsecond])
            return BPoly.from_derivatives(self.r, data)
        return CubicHermiteSpline(self.r, self.f, self.fprime)

    def to_frame(self) -> pd.DataFrame:
        data = {"r": self.r, "f": self.f, "fprime": self.fprime}
        if self.fsecond is not None:
            data["fsecond"] = self.fsecond
        return pd.DataFrame(data)


class ClosedFormFamily(str, Enum):
    """Analytic solution families and first integrals."""

    THM1_X = "thm1-x"
    THM1_LNR = "thm1-lnr"
    THM2_LNR_PRIME = "thm2-lnr-prime"
    THM2_R = "thm2-r"
    THM3_H = "thm3-H"
    THM3_LOWER_H = "thm3-h"
    THM3_Q = "thm3-q"
    PROP4_VINVSQ = "prop4-vinvsq"


REQUIRED_CONSTANTS: Dict[ClosedFormFamily, Tuple[str, ...]] = {
    ClosedFormFamily.THM1_X: ("a", "c0"),
    ClosedFormFamily.THM1_LNR: ("a", "c0"),
    ClosedFormFamily.THM2_LNR_PRIME: ("c1",),
    ClosedFormFamily.THM2_R: ("c1",),
    ClosedFormFamily.THM3_H: ("c3",),
    ClosedFormFamily.THM3_LOWER_H: ("c3", "c4"),
    ClosedFormFamily.THM3_Q: ("a",),
    ClosedFormFamily.PROP4_VINVSQ: ("c5",),
}


class ClosedForm(BaseModel):
    """A closed-form family together with the constants that pin one member."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: ClosedFormFamily
    constants: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_constants(self) -> "ClosedForm":
        required = REQUIRED_CONSTANTS[self.family]
        missing = [name for name in required if name not in self.constants]
        if missing:
            raise ValueError(f"{self.family.value} requires constants {missing}")
        extra = sorted(set(self.constants) - set(required))
        if extra:
            raise ValueError(f"{self.family.value} does not use constants {extra}")
        values = self.constants
        if any(not math.isfinite(v) for v in values.values()):
            raise ValueError("constants must be finite")
        if "a" in values and values["a"] <= 0:
            raise ValueError("a must be positive")
        if "c0" in values and values["c0"] <= -1:
            raise ValueError("c0 must exceed -1 so that x stays real")
        if "c1" in values and values["c1"] < 0:
            raise ValueError("c1 must be nonnegative")
        if self.family == ClosedFormFamily.THM2_R and values["c1"] == 0:
            raise ValueError("thm2-r needs c1 > 0; c1 = 0 means g = r")
        if "c5" in values and values["c5"] < 0:
            raise ValueError("c5 must be nonnegative")
        return self


class CertificateClaim(str, Enum):
    THM1_NONEXISTENCE = "thm1-nonexistence"
    THM2_NONEXISTENCE = "thm2-nonexistence"
    THM3_NONEXISTENCE = "thm3-nonexistence"
    THM3_EXISTENCE = "thm3-existence"
    PROP4_NONEXISTENCE = "prop4-nonexistence"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


Quantity = Union[bool, int, float, str]


class SweepPoint(BaseModel):
    """One member of a swept family and what was computed for it."""

    model_config = ConfigDict(extra="forbid")

    constants: Dict[str, float] = Field(default_factory=dict)
    quantities: Dict[str, Quantity] = Field(default_factory=dict)
    verdict: Verdict

    @field_validator("quantities")
    @classmethod
    def finite_quantities(cls, v: Dict[str, Quantity]) -> Dict[str, Quantity]:
        for key, value in v.items():
            if isinstance(value, float) and not math.isfinite(value):
                raise ValueError(f"quantity {key} is not finite")
        return v

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS


class Certificate(BaseModel):
    """Machine-checkable record of one existence or nonexistence argument.

    The overall verdict is PASS only when every sweep point passes.
    """

    model_config = ConfigDict(extra="forbid")

    claim: CertificateClaim
    params: Dict[str, Any] = Field(default_factory=dict)
    points: List[SweepPoint] = Field(default_factory=list)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    narrative: str

    @field_validator("narrative")
    @classmethod
    def single_line(cls, v: str) -> str:
        if not v.strip() or "\n" in v:
            raise ValueError("narrative must be one non-empty line")
        return v

    @computed_field  # type: ignore[prop-decorator]
    @property
    def verdict(self) -> Verdict:
        if self.points and all(p.passed for p in self.points):
            return Verdict.PASS
        return Verdict.FAIL

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def failing_points(self) -> List[SweepPoint]:
        return [p for p in self.points if not p.passed]

    def to_document(self) -> Dict[str, Any]:
        """JSON-ready dictionary with the documented key set."""
        return self.model_dump(mode="json")
