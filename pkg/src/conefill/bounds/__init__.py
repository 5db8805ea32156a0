"""Numerical bounds for cone-manifold deformations.

This package holds the closed-form packing and boundary-term bounds, the
deformation envelopes built from them, and the volume-change estimates.
"""

from .errors import BoundsError, DomainError, HumpExceededError
from .numerics import DEFAULT_TOLERANCES, Tolerances
from .scalar import CONSTANTS, PackingConstants, get_constants, h, h_inverse

__all__ = [
    "CONSTANTS",
    "DEFAULT_TOLERANCES",
    "BoundsError",
    "DomainError",
    "HumpExceededError",
    "PackingConstants",
    "Tolerances",
    "get_constants",
    "h",
    "h_inverse",
]
