"""Slopes and cusp shapes.

A slope is a primitive integer pair (p, q) up to sign; the curve it names
on a cusp torus with basis (v1, v2) is the lattice vector p*v1 + q*v2.
Shapes arrive as JSON, either as a basis or as a modulus tau with a scale.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Bases with |det| below this (relative to |v1||v2|) are treated as degenerate
DEGENERACY_RTOL = 1e-12


class SlopeError(ValueError):
    """Invalid slope or degenerate cusp basis."""

    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Primitive integer pair (p, q), sign-normalized to q > 0 or (p > 0, q = 0)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        """Validate primitivity and normalize the sign."""
        if self.p == 0 and self.q == 0:
            raise SlopeError("Slope (0, 0) is not a curve")
        if math.gcd(self.p, self.q) != 1:
            raise SlopeError(f"Slope ({self.p}, {self.q}) is not primitive")
        if self.q < 0 or (self.q == 0 and self.p < 0):
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)

    def __str__(self) -> str:
        """Format as (p, q)."""
        return f"({self.p}, {self.q})"


class CuspShape(BaseModel):
    """Flat cusp torus given by a lattice basis (v1, v2).

    Accepts {"v1": [x, y], "v2": [x, y]} or {"tau": [re, im], "scale": s};
    the latter means v1 = (s, 0) and v2 = s * tau.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    v1: tuple[float, float] = Field(description="First basis vector")
    v2: tuple[float, float] = Field(description="Second basis vector")

    @model_validator(mode="before")
    @classmethod
    def expand_modulus(cls, data: Any) -> Any:  # noqa: ANN401
        """Turn the {"tau", "scale"} form into a basis."""
        if not isinstance(data, dict) or "tau" not in data:
            return data
        if "v1" in data or "v2" in data:
            raise ValueError("Give either v1/v2 or tau/scale, not both")
        extra = set(data) - {"tau", "scale"}
        if extra:
            raise ValueError(f"Unexpected keys next to tau: {sorted(extra)}")
        tau = data["tau"]
        if not (isinstance(tau, list | tuple) and len(tau) == 2):  # noqa: PLR2004
            raise ValueError("tau must be a pair [re, im]")
        scale = float(data.get("scale", 1.0))
        if not scale > 0:
            raise ValueError("scale must be positive")
        re, im = float(tau[0]), float(tau[1])
        return {"v1": (scale, 0.0), "v2": (scale * re, scale * im)}

    @model_validator(mode="after")
    def check_independent(self) -> "CuspShape":
        """Require linearly independent, finite basis vectors."""
        values = (*self.v1, *self.v2)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("Basis vectors must be finite")
        norms = math.hypot(*self.v1) * math.hypot(*self.v2)
        if abs(self.det) <= DEGENERACY_RTOL * norms:
            raise ValueError("Basis vectors v1 and v2 are linearly dependent")
        return self

    @classmethod
    def from_tau(cls, re: float, im: float, scale: float = 1.0) -> "CuspShape":
        """Shape with modulus tau = re + i*im."""
        return cls.model_validate({"tau": [re, im], "scale": scale})

    @classmethod
    def from_json_file(cls, path: Path) -> "CuspShape":
        """Load a shape from a JSON file.

        Raises:
            FileNotFoundError: If the file does not exist
            pydantic.ValidationError: If the JSON is malformed or invalid
        """
        return cls.model_validate_json(path.read_text(encoding="utf-8"))

    @property
    def det(self) -> float:
        """Signed determinant det(v1, v2)."""
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]

    @property
    def area(self) -> float:
        """Area of the torus, |det(v1, v2)|."""
        return abs(self.det)

    @property
    def matrix(self) -> npt.NDArray[np.float64]:
        """Basis as rows of a 2x2 array."""
        return np.array([self.v1, self.v2], dtype=np.float64)

    def scaled(self, factor: float) -> "CuspShape":
        """Shape with both basis vectors multiplied by factor."""
        return CuspShape(
            v1=(factor * self.v1[0], factor * self.v1[1]),
            v2=(factor * self.v2[0], factor * self.v2[1]),
        )

    def vector(self, slope: Slope) -> tuple[float, float]:
        """Flat vector p*v1 + q*v2 of a slope."""
        return (
            slope.p * self.v1[0] + slope.q * self.v2[0],
            slope.p * self.v1[1] + slope.q * self.v2[1],
        )
