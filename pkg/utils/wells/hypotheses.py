"""
Hypothesis Checker - sampled verification of the metastability hypotheses on an energy density
Seeded global sampling followed by local refinement with scipy.optimize
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from utils.errors import PreconditionError
from utils.wells.densities import EnergyDensity
from utils.wells.variants import MatrixSet

logger = logging.getLogger(__name__)

GROWTH_TOL = 1e-9
REFINE_STARTS = 4


@dataclass
class HypothesisReport:
    """Sampled constants of an energy density"""
    epsilon: float
    parent_minimum: float      # min W on N_{eps/2}(K1), expected 0
    delta_measured: float      # -min W on N_eps(K2)
    alpha_measured: float      # inf W outside both neighbourhoods, inside the box
    growth_ok: bool
    growth_violation: float
    samples: int
    box_half_width: float


def _finite_min(values: np.ndarray) -> float:
    finite = values[np.isfinite(values)]
    return float(finite.min()) if finite.size else math.inf


class HypothesisChecker:
    """
    Estimates the hypothesis constants of an EnergyDensity.

    All randomness comes from one seeded generator, so a report is a pure
    function of (density, epsilon, budget, seed, box).
    """

    def __init__(self, density: EnergyDensity, epsilon: float, sample_budget: int = 20000,
                 seed: int = 0, box_half_width: Optional[float] = None):
        if epsilon <= 0 or epsilon >= 0.5 * density.separation:
            raise PreconditionError(
                f"epsilon={epsilon} must lie in (0, {0.5 * density.separation:.6g}), half the well separation"
            )
        self.density = density
        self.epsilon = float(epsilon)
        self.budget = int(sample_budget)
        self.rng = np.random.default_rng(seed)

        anchors = np.concatenate([density.K1.anchor_points(), density.K2.anchor_points()])
        reach = float(np.abs(anchors).max())
        if box_half_width is None:
            box_half_width = 2.0 * reach + 2.0 * self.epsilon
        if box_half_width < reach + self.epsilon:
            raise PreconditionError(
                f"search box half-width {box_half_width} does not contain both wells (need {reach + self.epsilon:.6g})"
            )
        self.box = float(box_half_width)

    def _values(self, points: np.ndarray) -> np.ndarray:
        return np.array([self.density(A) for A in points])

    def _refine(self, start: np.ndarray, wells: MatrixSet, radius: float) -> float:
        x0, chart = self.density.local_chart(start)

        def objective(x: np.ndarray) -> float:
            A = chart(x)
            if wells.distance(A) > radius:
                return math.inf
            value = self.density(A)
            return value if np.isfinite(value) else math.inf

        result = minimize(objective, x0, method="Nelder-Mead",
                          options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        return float(min(result.fun, objective(x0)))

    def minimum_near(self, wells: MatrixSet, radius: float) -> float:
        """Sampled and refined min of W over N_radius(wells)."""
        count = max(self.budget // 4, 16)
        points = self.density.neighbourhood_samples(wells, radius, self.rng, count)
        inside = np.array([wells.distance(A) <= radius for A in points])
        points = points[inside]
        values = self._values(points)
        best = _finite_min(values)

        finite = np.flatnonzero(np.isfinite(values))
        for index in finite[np.argsort(values[finite])][:REFINE_STARTS]:
            best = min(best, self._refine(points[index], wells, radius))
        return best

    def floor_outside(self) -> float:
        """Sampled inf of W outside N_eps(K1) u N_eps(K2) inside the box."""
        K1, K2 = self.density.K1, self.density.K2
        count = max(self.budget // 2, 16)
        d = self.density.dimension

        candidates = [self.density.support_samples(self.rng, count, self.box)]
        # the infimum is usually attained on the boundary of a neighbourhood
        for wells in (K1, K2):
            centres = wells.sample(self.rng, count // 4)
            directions = self.rng.standard_normal((len(centres), d, d))
            directions /= np.linalg.norm(directions, axis=(1, 2), keepdims=True)
            candidates.append(centres + self.epsilon * (1.0 + 1e-9) * directions)
        points = np.concatenate(candidates)

        keep = [
            np.abs(A).max() <= self.box and K1.distance(A) > self.epsilon and K2.distance(A) > self.epsilon
            for A in points
        ]
        points = points[np.array(keep, dtype=bool)]
        return _finite_min(self._values(points))

    def growth_violation(self) -> float:
        """Largest sampled (c0 + c1|A|^p) - W(A), relative to 1 + |A|^p."""
        d = self.density.dimension
        count = max(self.budget // 4, 16)
        scales = 10.0 ** self.rng.uniform(-1.0, 2.0, size=count)
        points = self.rng.standard_normal((count, d, d)) * scales[:, None, None]
        points = np.concatenate([points, self.density.support_samples(self.rng, count, self.box)])

        worst = -math.inf
        for A in points:
            value = self.density(A)
            if not np.isfinite(value):
                continue
            norm_p = float(np.linalg.norm(A)) ** self.density.exponent
            bound = self.density.c0 + self.density.c1 * norm_p
            worst = max(worst, (bound - value) / (1.0 + norm_p))
        return worst

    def run(self) -> HypothesisReport:
        density = self.density
        parent_minimum = self.minimum_near(density.K1, 0.5 * self.epsilon)
        product_minimum = self.minimum_near(density.K2, self.epsilon)
        floor = self.floor_outside()
        violation = self.growth_violation()
        logger.debug("hypotheses: parent %.3e, product %.3e, floor %.3e", parent_minimum, product_minimum, floor)
        return HypothesisReport(
            epsilon=self.epsilon,
            parent_minimum=parent_minimum,
            delta_measured=-product_minimum,
            alpha_measured=floor,
            growth_ok=bool(violation <= GROWTH_TOL),
            growth_violation=float(violation),
            samples=self.budget,
            box_half_width=self.box,
        )


def check_hypotheses(W: EnergyDensity, epsilon: Optional[float] = None, sample_budget: int = 20000,
                     seed: int = 0, box_half_width: Optional[float] = None) -> HypothesisReport:
    """
    Sample the metastability hypotheses of an energy density.

    Args:
        W: Energy density with wells K1, K2
        epsilon: Neighbourhood radius, defaults to 0.2 dist(K1, K2)
        sample_budget: Approximate number of density evaluations
        seed: Seed of the sampling stream
        box_half_width: Half-width of the entrywise search box

    Returns:
        HypothesisReport with delta_measured, alpha_measured and growth_ok

    Raises:
        PreconditionError: If epsilon is too large or the box misses a well
    """
    if epsilon is None:
        epsilon = 0.2 * W.separation
    return HypothesisChecker(W, epsilon, sample_budget, seed, box_half_width).run()
