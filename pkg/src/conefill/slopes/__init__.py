"""Cusp torus slopes: normalized lengths, enumeration and counting."""

from .counting import (
    IntersectionReport,
    exceptional_count_bound,
    intersection_number,
    verify_length_intersection_inequality,
)
from .lattice import enumerate_short_slopes, normalized_length, random_shapes
from .models import CuspShape, Slope, SlopeError

__all__ = [
    "CuspShape",
    "IntersectionReport",
    "Slope",
    "SlopeError",
    "enumerate_short_slopes",
    "exceptional_count_bound",
    "intersection_number",
    "normalized_length",
    "random_shapes",
    "verify_length_intersection_inequality",
]
