"""
Domain Geometry - convex bodies, eccentricity and the transition-layer lower bound gamma
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_function

from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

VOLUME_TOL = 1e-12
VITALI_BASE = 5.0


def ball_volume(dimension: int, radius: float) -> float:
    """Volume pi^(n/2) / Gamma(n/2 + 1) R^n of an n-ball."""
    return float(math.pi ** (dimension / 2.0) / gamma_function(dimension / 2.0 + 1.0) * radius ** dimension)


@dataclass(frozen=True)
class ConvexBody:
    """Bounded convex body described by inner radius r, outer radius R and volume"""
    inner_radius: float
    outer_radius: float
    volume: float
    dimension: int

    def __post_init__(self):
        if self.dimension < 1:
            raise PreconditionError(f"dimension must be positive, got {self.dimension}")
        if not 0.0 < self.inner_radius <= self.outer_radius:
            raise PreconditionError(
                f"radii must satisfy 0 < r <= R, got r={self.inner_radius}, R={self.outer_radius}"
            )
        low = ball_volume(self.dimension, self.inner_radius)
        high = ball_volume(self.dimension, self.outer_radius)
        if not low * (1 - VOLUME_TOL) <= self.volume <= high * (1 + VOLUME_TOL):
            raise PreconditionError(
                f"volume {self.volume:.6g} outside the ball bounds [{low:.6g}, {high:.6g}]"
            )

    @classmethod
    def ball(cls, dimension: int, radius: float = 1.0) -> "ConvexBody":
        return cls(radius, radius, ball_volume(dimension, radius), dimension)

    @classmethod
    def box(cls, sides: Sequence[float]) -> "ConvexBody":
        """Rectangular box with the given side lengths."""
        sides = np.asarray(sides, dtype=float)
        if sides.ndim != 1 or np.any(sides <= 0):
            raise PreconditionError("box sides must be positive")
        return cls(0.5 * float(sides.min()), 0.5 * float(np.linalg.norm(sides)), float(np.prod(sides)), len(sides))


def eccentricity(body: ConvexBody) -> float:
    """E(C) = sqrt(1 - r^2 / R^2), in [0, 1)."""
    ratio = body.inner_radius / body.outer_radius
    return float(math.sqrt(max(0.0, 1.0 - ratio * ratio)))


def gamma_lower_bound(gamma0: float, body: ConvexBody, vol_omega: float, n: Optional[int] = None) -> float:
    """
    Lower bound for the transition-layer constant gamma.

    gamma = min(gamma1 vol(C)/vol(Omega), gamma0 5^-n (1 - E^2)^(n/2)) with gamma1 = min(gamma0, 1/4).

    Args:
        gamma0: Assumed constant of the ball estimate
        body: Convex body C inside Omega
        vol_omega: Volume of Omega
        n: Dimension, defaults to the body's

    Raises:
        PreconditionError: If vol(C) exceeds vol(Omega) or gamma0 <= 0
    """
    if gamma0 <= 0:
        raise PreconditionError(f"gamma0 must be positive, got {gamma0}")
    n = body.dimension if n is None else int(n)
    if body.volume > vol_omega * (1 + VOLUME_TOL):
        raise PreconditionError(f"vol(C) = {body.volume:.6g} exceeds vol(Omega) = {vol_omega:.6g}")

    gamma1 = min(gamma0, 0.25)
    E = eccentricity(body)
    volume_branch = gamma1 * body.volume / vol_omega
    covering_branch = gamma0 * VITALI_BASE ** (-n) * (1.0 - E * E) ** (n / 2.0)
    return float(min(volume_branch, covering_branch))
