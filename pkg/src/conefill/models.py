"""Data models shared across conefill.

Value records for two-sided bounds, deformation states, envelope samples and
volume results are frozen dataclasses. Run configuration is a pydantic model
so that config files and command-line overrides are validated the same way.
"""

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic.fields import FieldInfo

# Smallest volume of an orientable cusped hyperbolic 3-manifold (imported
# result); starting point for the volume-after-filling estimates.
CUSPED_VOLUME_MIN = 2.02988


class Fields:
    """Proxy class for accessing Pydantic model field info via attributes.

    Enables syntax like `Fields(RunConfig).n_samples.default` instead of
    `RunConfig.model_fields["n_samples"].default`.
    """

    def __init__(self, model_class: type[BaseModel]) -> None:
        """Initialize the accessor with a Pydantic model class."""
        self._model_class = model_class

    def __getattr__(self, name: str) -> FieldInfo:
        """Provide access to field info via attribute access."""
        return self._model_class.model_fields[name]


@dataclass(frozen=True)
class Bracket:
    """Ordered pair of reals used for every two-sided bound."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        """Require lo <= hi (NaN endpoints fail this check)."""
        if not self.lo <= self.hi:
            raise ValueError(f"Bracket requires lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        """Distance between the endpoints."""
        return self.hi - self.lo

    def contains(self, value: float, slack: float = 0.0) -> bool:
        """Check whether value lies in the bracket, widened by slack."""
        return self.lo - slack <= value <= self.hi + slack


@dataclass(frozen=True)
class ConeState:
    """A point on a deformation path from the cusp (alpha = 0) to alpha = 2*pi."""

    alpha: float
    t: float
    z: float
    u: float
    rho: float
    ell: float


@dataclass(frozen=True)
class EnvelopeSample:
    """Bounds on the deformation at one cone angle."""

    alpha: float
    t: float
    z: Bracket
    rho_lo: float
    ell: Bracket
    v_drop: Bracket


@dataclass(frozen=True)
class EnvelopeCurve:
    """Sampled envelope of all admissible deformation paths.

    Samples are strictly increasing in t. When the lower z-envelope reaches
    z1 before alpha = 2*pi the curve is truncated and the last sample sits at
    the validity limit t_max.
    """

    L_hat: float
    multi_cusp: bool
    quad_tol: float
    root_tol: float
    t_max: float
    truncated: bool
    samples: tuple[EnvelopeSample, ...]

    def __post_init__(self) -> None:
        """Check that sample times increase strictly."""
        times = [s.t for s in self.samples]
        if any(b <= a for a, b in zip(times, times[1:], strict=False)):
            raise ValueError("Envelope samples must be strictly increasing in t")

    @property
    def alpha_max(self) -> float:
        """Largest cone angle covered by the bounds."""
        return math.sqrt(min(self.t_max, (2 * math.pi) ** 2))


@dataclass(frozen=True)
class VolumeChangeResult:
    """Two-sided bound on the volume lost when filling a cusp."""

    ell_hat: float
    z_hat: float
    delta_v: Bracket
    nz_asymptote: float

    def __post_init__(self) -> None:
        """Validate z_hat range."""
        if not 0.0 < self.z_hat <= 1.0:
            raise ValueError(f"z_hat must lie in (0, 1], got {self.z_hat}")


class DrillingCriterion(str, Enum):
    """Sufficient conditions for drilling a closed geodesic through cone angles."""

    LENGTH_AND_RADIUS = "length_and_radius"  # ell <= h_max/2pi and R >= rho1
    SHORT_GEODESIC = "short_geodesic"  # ell <= 0.111, imported radius >= 0.982
    SHORTEST_GEODESIC = "shortest_geodesic"  # shortest and ell <= 0.162


@dataclass(frozen=True)
class DrillingDecision:
    """Outcome of testing a geodesic against the drilling criteria."""

    ell: float
    criterion: DrillingCriterion | None
    applicable: tuple[DrillingCriterion, ...]
    radius_lower: float | None
    reason: str

    @property
    def drillable(self) -> bool:
        """Whether at least one criterion applies."""
        return self.criterion is not None


class RunConfig(BaseModel):
    """Configuration for a single command-line run.

    Values come from RunConfig defaults, then the config file, then flags.
    """

    model_config = ConfigDict(extra="forbid")

    quad_tol: float = Field(
        default=1e-10,
        description="Absolute tolerance for adaptive quadrature",
    )
    root_tol: float = Field(
        default=1e-12,
        description="Absolute tolerance for bracketed root finding",
    )
    output_format: Literal["table", "csv", "json"] | None = Field(
        default=None,
        description="Output format (None means the command's default)",
    )
    output_path: Path | None = Field(
        default=None,
        description="Write results to this file instead of stdout",
    )
    multi_cusp: bool = Field(
        default=False,
        description="Use the multi-cusp packing constant",
    )
    n_samples: int = Field(
        default=100,
        description="Number of cone-angle samples for envelope curves",
    )
    seed: int = Field(
        default=20240101,
        description="Seed for random cusp shapes in the invariant suite",
    )
    cusped_volume_min: float = Field(
        default=CUSPED_VOLUME_MIN,
        description="Smallest cusped hyperbolic volume used by volume estimates",
    )

    @field_validator("quad_tol", "root_tol")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        """Tolerances must be positive and finite."""
        if not (math.isfinite(v) and v > 0):
            raise ValueError("Tolerance must be a positive finite number")
        return v

    @field_validator("n_samples")
    @classmethod
    def validate_samples(cls, v: int) -> int:
        """Curves need at least two samples."""
        min_samples = 2
        if v < min_samples:
            raise ValueError(f"Sample count must be at least {min_samples}")
        return v

    @field_validator("cusped_volume_min")
    @classmethod
    def validate_volume(cls, v: float) -> float:
        """Volumes are positive."""
        if not v > 0:
            raise ValueError("Volume must be positive")
        return v
