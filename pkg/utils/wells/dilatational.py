"""
Dilatational Energy - polyconvex isotropic density with minimizers on pure dilatations
W_0(A) = c1 (l1^a + l2^a + l3^a) + h(det A), W_tau = W_0 - tau H(det A)
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from utils.errors import PreconditionError
from utils.wells.densities import EnergyDensity
from utils.wells.variants import DilatationWell, UnionSet

logger = logging.getLogger(__name__)

Interval = Tuple[float, float]
IntervalInput = Union[float, Sequence[float]]

CONVEXITY_MARGIN = 2.0


def _as_intervals(values: Sequence[IntervalInput]) -> List[Interval]:
    intervals = []
    for value in values:
        if np.ndim(value) == 0:
            low = high = float(value)
        else:
            low, high = (float(v) for v in value)
        if not 0.0 < low <= high:
            raise PreconditionError(f"interval [{low}, {high}] must be a nonempty subset of (0, inf)")
        intervals.append((low, high))
    return sorted(intervals)


def _merge(intervals: List[Interval]) -> List[Interval]:
    merged: List[Interval] = []
    for low, high in sorted(intervals):
        if merged and low <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], high))
        else:
            merged.append((low, high))
    return merged


def _smootherstep(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


@dataclass
class DilatationalSpec:
    """
    Isotropic polyconvex density with zero set {k R : k in k1 u k2}.

    Args:
        k1, k2: Disjoint compact subsets of (0, inf) given as points or [low, high] pairs
        alpha: Exponent in (1, 3)
        c1: Coefficient; raised to the convexity minimum when too small
        well_curvature: Scale c_w of the zero-set barrier h_bar
    """
    k1: Sequence[IntervalInput]
    k2: Sequence[IntervalInput]
    alpha: float = 2.0
    c1: float = 1.0
    well_curvature: float = 1.0
    epsilon: float = 0.05
    intervals1: List[Interval] = field(init=False)
    intervals2: List[Interval] = field(init=False)

    def __post_init__(self):
        if not 1.0 < self.alpha < 3.0:
            raise PreconditionError(f"alpha must lie in (1, 3), got {self.alpha}")
        if self.well_curvature <= 0:
            raise PreconditionError("well_curvature must be positive")
        self.intervals1 = _as_intervals(self.k1)
        self.intervals2 = _as_intervals(self.k2)
        for low1, high1 in self.intervals1:
            for low2, high2 in self.intervals2:
                if low1 <= high2 and low2 <= high1:
                    raise PreconditionError("k1 and k2 must be disjoint")

        cubes = lambda intervals: [(low ** 3, high ** 3) for low, high in intervals]
        self.zero_set = _merge(cubes(self.intervals1) + cubes(self.intervals2))
        self.set1 = _merge(cubes(self.intervals1))
        self.set2 = _merge(cubes(self.intervals2))
        self.gaps = [(self.zero_set[i][1], self.zero_set[i + 1][0]) for i in range(len(self.zero_set) - 1)]
        self.a = self.zero_set[0][0]
        z_max = self.zero_set[-1][1]

        widest = max((right - left for left, right in self.gaps), default=0.0)
        self.gamma = 3.0 * self.well_curvature * widest / 8.0
        # h_tilde'' >= c1 alpha (3 - alpha)/3 t^(alpha/3 - 2) must dominate gamma below z_max
        needed = CONVEXITY_MARGIN * self.gamma * 3.0 / (self.alpha * (3.0 - self.alpha)) * z_max ** (2.0 - self.alpha / 3.0)
        if self.c1 < needed:
            logger.info("raising c1 from %.6g to %.6g for convexity of h", self.c1, needed)
            self.c1 = needed
        if self.c1 <= 0:
            raise PreconditionError("c1 must be positive")

        # W_0 > 0 for det A > b needs c_w m^3 > c1 alpha b^(alpha/3 - 1)
        margin = (CONVEXITY_MARGIN * self.c1 * self.alpha * z_max ** (self.alpha / 3.0 - 1.0) / self.well_curvature) ** (1.0 / 3.0)
        self.b = z_max + margin
        self.z_max = z_max

        half_gap = 0.5 * min(max(l2 - h1, l1 - h2) for l1, h1 in self.set1 for l2, h2 in self.set2)
        self.bump_width = min(self.epsilon, half_gap)

    # -- h_bar -----------------------------------------------------------------

    def h_bar(self, t: np.ndarray) -> np.ndarray:
        """Convex outside [a, z_max], zero exactly on {k^3}, +inf for t <= 0."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            below = t < self.a
            out = np.where(below, (self.a - t) ** 3 + (self.a / t - 1.0) ** 3, out)
            out = np.where(t > self.z_max, (t - self.z_max) ** 3, out)
            for left, right in self.gaps:
                inside = (t > left) & (t < right)
                out = np.where(inside, ((t - left) * (right - t) / (right - left)) ** 3, out)
            out = self.well_curvature * out
            out = np.where(t <= 0, math.inf, out)
        return out

    # -- h_tilde ---------------------------------------------------------------

    def h_tilde(self, t: np.ndarray) -> np.ndarray:
        """-3 c1 t^(alpha/3) up to b, a convex power blend on [b, b+1], constant afterwards."""
        t = np.asarray(t, dtype=float)
        q = self.alpha / 3.0
        b = self.b
        start = -3.0 * self.c1 * b ** q
        end = -3.0 * self.c1 * (b + 1.0) ** q
        slope = -self.c1 * self.alpha * b ** (q - 1.0)
        drop = end - start
        power = slope / drop - 1.0

        with np.errstate(invalid="ignore"):
            curve = -3.0 * self.c1 * np.abs(t) ** q
            u = np.clip(t - b, 0.0, 1.0)
            blend = start + slope * (1.0 - (1.0 - u) ** (power + 1.0)) / (power + 1.0)
        out = np.where(t <= b, curve, np.where(t <= b + 1.0, blend, end))
        return np.where(t <= 0, math.inf, out)

    def h(self, t: np.ndarray) -> np.ndarray:
        return self.h_bar(t) + self.h_tilde(t)

    @property
    def breakpoints(self) -> List[float]:
        points = [edge for interval in self.zero_set for edge in interval]
        return points + [self.b, self.b + 1.0]

    # -- bump ------------------------------------------------------------------

    def bump(self, t: np.ndarray) -> np.ndarray:
        """H = 1 on {k^3 : k in k2}, zero farther than the bump width, C^2 in between."""
        t = np.asarray(t, dtype=float)
        dist = np.full_like(t, np.inf)
        for low, high in self.set2:
            dist = np.minimum(dist, np.maximum(np.maximum(low - t, t - high), 0.0))
        return 1.0 - _smootherstep(dist / self.bump_width)

    def growth_constants(self) -> Tuple[float, float]:
        """(c0, c1_eff) with W_0(A) >= c0 + c1_eff |A|^alpha."""
        c0 = -3.0 * self.c1 * (self.b + 1.0) ** (self.alpha / 3.0)
        c1_eff = self.c1 * min(1.0, 3.0 ** (1.0 - self.alpha / 2.0))
        return c0, c1_eff

    def well_sets(self) -> Tuple[UnionSet, UnionSet]:
        make = lambda intervals: UnionSet([DilatationWell(low, high) for low, high in intervals])
        return make(self.intervals1), make(self.intervals2)


def dilatational_energy(A: np.ndarray, spec: DilatationalSpec, tau: float = 0.0) -> float:
    """
    W_tau(A) = c1 sum(l_i^alpha) + h(det A) - tau H(det A).

    Args:
        A: 3x3 deformation gradient
        spec: Dilatational density parameters
        tau: Family parameter (>= 0)

    Returns:
        Energy value, +inf when det A <= 0
    """
    if tau < 0:
        raise PreconditionError(f"tau must be nonnegative, got {tau}")
    A = np.asarray(A, dtype=float)
    det = float(np.linalg.det(A))
    if det <= 0:
        return math.inf
    stretches = np.linalg.svd(A, compute_uv=False)
    base = spec.c1 * float(np.sum(stretches ** spec.alpha)) + float(spec.h(det))
    return base - tau * float(spec.bump(det))


class DilatationalDensity(EnergyDensity):
    """Density W_tau of the dilatational construction"""

    kind = "dilatational"

    def __init__(self, spec: DilatationalSpec, tau: float, epsilon: float):
        self.spec = spec
        K1, K2 = spec.well_sets()
        c0, c1 = spec.growth_constants()
        super().__init__(K1, K2, epsilon, delta=tau, exponent=spec.alpha, c0=c0 - tau, c1=c1, tau=tau)

    def evaluate(self, A: np.ndarray) -> float:
        return dilatational_energy(A, self.spec, self.tau)
