"""
Energy Densities - well-based stored-energy functions
Constrained-theory density on the martensite wells and the smoothed two-matrix double well
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Callable, Optional, Tuple

import numpy as np

from utils.errors import PreconditionError
from utils.linalg import as_matrix, max_trace_rotation, rotation_from_vector
from utils.wells.variants import MatrixSet, PointSet, WellFamily, set_distance

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-8

Chart = Tuple[np.ndarray, Callable[[np.ndarray], np.ndarray]]


class EnergyDensity(ABC):
    """
    Stored-energy density W with a parent well K1 and a product well K2.

    Carries the constants of the metastability hypotheses: neighbourhood
    radius epsilon, product-well depth delta, floor outside both
    neighbourhoods, growth exponent p and constants c0, c1 of
    W(A) >= c0 + c1 |A|^p, and the family parameter tau.
    """

    kind = "abstract"

    def __init__(
        self,
        K1: MatrixSet,
        K2: MatrixSet,
        epsilon: float,
        delta: float = 0.0,
        floor: Optional[float] = None,
        exponent: float = 2.0,
        c0: float = 0.0,
        c1: float = 1.0,
        tau: float = 0.0,
    ):
        if epsilon <= 0:
            raise PreconditionError(f"epsilon must be positive, got {epsilon}")
        if c1 <= 0:
            raise PreconditionError(f"growth constant c1 must be positive, got {c1}")
        if exponent <= 1:
            raise PreconditionError(f"growth exponent must exceed 1, got {exponent}")
        separation = set_distance(K1, K2)
        if separation <= 2.0 * epsilon:
            raise PreconditionError(
                f"wells are {separation:.6g} apart, need more than 2*epsilon = {2 * epsilon:.6g}"
            )
        self.K1 = K1
        self.K2 = K2
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self.floor = floor
        self.exponent = float(exponent)
        self.c0 = float(c0)
        self.c1 = float(c1)
        self.tau = float(tau)
        self.separation = separation

    @property
    def dimension(self) -> int:
        return self.K1.dimension

    @abstractmethod
    def evaluate(self, A: np.ndarray) -> float:
        """W(A), possibly +inf."""

    def __call__(self, A: np.ndarray) -> float:
        return self.evaluate(A)

    def neighbourhood_samples(self, wells: MatrixSet, radius: float,
                              rng: np.random.Generator, count: int) -> np.ndarray:
        """Exact well points followed by random points within ``radius`` of the wells."""
        d = self.dimension
        exact = wells.anchor_points()
        centres = wells.sample(rng, count)
        directions = rng.standard_normal((count, d, d))
        directions /= np.linalg.norm(directions, axis=(1, 2), keepdims=True)
        lengths = radius * rng.uniform(size=count) ** (1.0 / (d * d))
        return np.concatenate([exact, centres, centres + lengths[:, None, None] * directions])

    def support_samples(self, rng: np.random.Generator, count: int, half_width: float) -> np.ndarray:
        """Random matrices where W may be finite, inside the search box."""
        d = self.dimension
        return rng.uniform(-half_width, half_width, size=(count, d, d))

    def local_chart(self, A0: np.ndarray) -> Chart:
        """Coordinates for local refinement around A0."""
        shape = A0.shape
        return A0.ravel().copy(), lambda x: x.reshape(shape)


def _stress_tensor(load, tau: float) -> np.ndarray:
    if hasattr(load, "at"):
        load = load.at(tau)
    if hasattr(load, "tensor"):
        return np.asarray(load.tensor, dtype=float)
    return as_matrix(load, shape=(3, 3))


def constrained_energy(A: np.ndarray, tau: float, load, R1_tau: np.ndarray,
                       wellset: WellFamily, tol: float = MEMBERSHIP_TOL) -> float:
    """
    Constrained-theory dead-load energy.

    Args:
        A: Deformation gradient
        tau: Load family parameter (>= 0)
        load: A load family with ``at(tau)``, a load with ``tensor``, or a 3x3 stress
        R1_tau: Minimizing rotation on the parent well at tau
        wellset: Martensite wells in the machine frame, parent variant first

    Returns:
        -T_tau . (A - R1_tau U1) on the wells, +inf off them
    """
    if tau < 0:
        raise PreconditionError(f"tau must be nonnegative, got {tau}")
    A = np.asarray(A, dtype=float)
    if wellset.distance(A) > tol:
        return math.inf
    T = _stress_tensor(load, tau)
    parent = np.asarray(R1_tau, dtype=float) @ wellset[0].stretch
    return float(-np.sum(T * (A - parent)))


class ConstrainedDensity(EnergyDensity):
    """Constrained-theory density: finite only on the martensite wells"""

    kind = "constrained"

    def __init__(self, stress: np.ndarray, R1_tau: np.ndarray, product: np.ndarray,
                 wellset: WellFamily, epsilon: float, tau: float = 0.0, exponent: float = 2.0):
        self.stress = as_matrix(stress, shape=(3, 3))
        self.R1_tau = np.asarray(R1_tau, dtype=float)
        self.wellset = wellset
        parent = self.R1_tau @ wellset[0].stretch
        product = np.asarray(product, dtype=float)

        # on each well |A| is constant, which gives explicit growth constants
        norms_p = np.array([np.linalg.norm(U) ** exponent for U in wellset.stretches])
        lowest = min(-max_trace_rotation(U @ self.stress.T).value for U in wellset.stretches)
        c0 = lowest + float(np.sum(self.stress * parent)) - float(norms_p.max())
        delta = float(np.sum(self.stress * (product - parent)))

        super().__init__(PointSet(parent), PointSet(product), epsilon, delta=delta,
                         exponent=exponent, c0=c0, c1=1.0, tau=tau)

    def evaluate(self, A: np.ndarray) -> float:
        return constrained_energy(A, self.tau, self.stress, self.R1_tau, self.wellset)

    def neighbourhood_samples(self, wells: MatrixSet, radius: float,
                              rng: np.random.Generator, count: int) -> np.ndarray:
        centres = wells.anchor_points()
        picks = centres[rng.integers(len(centres), size=count)]
        scale = radius / max(float(np.linalg.norm(centres[0])), 1e-300)
        rotvecs = rng.standard_normal((count, 3))
        rotvecs *= (scale * rng.uniform(size=count) / np.linalg.norm(rotvecs, axis=1))[:, None]
        moved = np.array([rotation_from_vector(v) @ A for v, A in zip(rotvecs, picks)])
        return np.concatenate([centres, moved])

    def support_samples(self, rng: np.random.Generator, count: int, half_width: float) -> np.ndarray:
        return self.wellset.sample(rng, count)

    def local_chart(self, A0: np.ndarray) -> Chart:
        return np.zeros(3), lambda x: rotation_from_vector(x) @ A0


def smoothed_double_well(G: np.ndarray, A1: np.ndarray, A2: np.ndarray, delta: float,
                         smoothing: float = 1e-2, exponent: float = 2.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    Smoothed minimum of two well distances and its derivative.

    W = -s log(1 - (1 - e^{-u/s})(1 - e^{-v/s})) with u = |G - A1|^p and
    v = |G - A2|^p - delta. W(A1) = 0 and W(A2) = -delta up to e^{-|A1-A2|^p/s},
    and W >= 0 everywhere when delta = 0.

    Args:
        G: Matrices with shape (..., d, d)
        A1, A2: Well matrices
        delta: Depth of the second well
        smoothing: Width s
        exponent: Growth exponent p

    Returns:
        (W with shape (...), dW/dG with the shape of G)
    """
    G = np.asarray(G, dtype=float)
    s = float(smoothing)
    p = float(exponent)

    diff1 = G - A1
    diff2 = G - A2
    norm1 = np.sqrt(np.sum(diff1 * diff1, axis=(-2, -1)))
    norm2 = np.sqrt(np.sum(diff2 * diff2, axis=(-2, -1)))
    u = norm1 ** p
    v = norm2 ** p - delta

    low = np.minimum(u, v)
    high = np.maximum(u, v)
    denominator = 1.0 + np.exp(-(high - low) / s) - np.exp(-high / s)
    W = low - s * np.log(denominator)

    dW_du = np.exp(-(u - low) / s) * (-np.expm1(-v / s)) / denominator
    dW_dv = np.exp(-(v - low) / s) * (-np.expm1(-u / s)) / denominator

    if p == 2.0:
        scale1 = scale2 = 2.0
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            scale1 = np.where(norm1 > 0, p * norm1 ** (p - 2.0), 0.0)
            scale2 = np.where(norm2 > 0, p * norm2 ** (p - 2.0), 0.0)
    gradient = (dW_du * scale1)[..., None, None] * diff1 + (dW_dv * scale2)[..., None, None] * diff2
    return W, gradient


class DoubleWell2DDensity(EnergyDensity):
    """Smoothed double well with point wells A1 (parent) and A2 (product, depth delta)"""

    kind = "double_well_2d"

    def __init__(self, A1: np.ndarray, A2: np.ndarray, delta: float, epsilon: float,
                 smoothing: float = 1e-2, exponent: float = 2.0):
        self.A1 = as_matrix(A1)
        self.A2 = as_matrix(A2)
        self.smoothing = float(smoothing)
        biggest = max(np.linalg.norm(self.A1), np.linalg.norm(self.A2)) ** exponent
        c0 = -biggest - delta - self.smoothing * math.log(2.0)
        c1 = 2.0 ** (1.0 - exponent)
        super().__init__(PointSet(self.A1), PointSet(self.A2), epsilon, delta=delta,
                         exponent=exponent, c0=c0, c1=c1)

    def evaluate(self, A: np.ndarray) -> float:
        W, _ = smoothed_double_well(A, self.A1, self.A2, self.delta, self.smoothing, self.exponent)
        return float(W)
