"""
Energy Wells - matrix sets the stored energy is minimized on
Rotation wells SO(3)U, symmetry-generated variant families, dilatation and point wells
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence

import numpy as np
from scipy.spatial.transform import Rotation as ScipyRotation

from utils.errors import PreconditionError
from utils.linalg import as_matrix, max_trace_rotation, random_rotations, stretch

logger = logging.getLogger(__name__)

DISTINCT_TOL = 1e-8

# label -> (scipy group name, order)
POINT_GROUPS = {
    "cubic": ("O", 24),
    "tetragonal": ("D4", 8),
    "orthorhombic": ("D2", 4),
    "identity": (None, 1),
}


def point_group(label: str) -> np.ndarray:
    """
    Rotations of a crystallographic point group as a (k, 3, 3) integer-valued array.

    Args:
        label: One of 'cubic', 'tetragonal', 'orthorhombic', 'identity'

    Raises:
        PreconditionError: For an unknown label
    """
    if label not in POINT_GROUPS:
        raise PreconditionError(f"unknown symmetry group '{label}', expected one of {sorted(POINT_GROUPS)}")
    scipy_name, order = POINT_GROUPS[label]
    if scipy_name is None:
        return np.eye(3)[None, :, :]
    matrices = ScipyRotation.create_group(scipy_name, axis="Z").as_matrix()
    matrices = np.rint(matrices)
    assert matrices.shape[0] == order
    return matrices


def distance_to_well(A: np.ndarray, U: np.ndarray) -> float:
    """Exact Frobenius distance from A to the orbit SO(3)U."""
    A = np.asarray(A, dtype=float)
    U = np.asarray(U, dtype=float)
    # residual against the optimal rotation keeps full precision on the well
    Q = max_trace_rotation(U @ A.T).rotation
    return float(np.linalg.norm(A - Q @ U))


class MatrixSet(ABC):
    """A closed set of matrices with an exact distance function"""

    @property
    @abstractmethod
    def dimension(self) -> int:
        ...

    @abstractmethod
    def distance(self, A: np.ndarray) -> float:
        ...

    @abstractmethod
    def anchor_points(self) -> np.ndarray:
        """Points such that the distance between two sets is attained among them."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Random points of the set as a (count, d, d) array."""

    def contains(self, A: np.ndarray, tol: float = DISTINCT_TOL) -> bool:
        return self.distance(A) <= tol

    def separation(self, other: "MatrixSet") -> float:
        return min(other.distance(point) for point in self.anchor_points())


@dataclass(eq=False)
class Well(MatrixSet):
    """Rotation well SO(3)U for a stretch U"""
    stretch: np.ndarray

    def __post_init__(self):
        self.stretch = stretch(self.stretch)

    @property
    def dimension(self) -> int:
        return self.stretch.shape[0]

    def distance(self, A: np.ndarray) -> float:
        return distance_to_well(A, self.stretch)

    def anchor_points(self) -> np.ndarray:
        return self.stretch[None, :, :]

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return random_rotations(count, rng) @ self.stretch

    def point(self, R: np.ndarray) -> np.ndarray:
        return np.asarray(R, dtype=float) @ self.stretch


@dataclass(eq=False)
class WellFamily(MatrixSet):
    """Union of symmetry-related wells SO(3)U_1 u ... u SO(3)U_k"""
    variants: List[Well]
    group_name: str = "identity"

    def __len__(self) -> int:
        return len(self.variants)

    def __iter__(self) -> Iterator[Well]:
        return iter(self.variants)

    def __getitem__(self, index: int) -> Well:
        return self.variants[index]

    @property
    def stretches(self) -> np.ndarray:
        return np.array([well.stretch for well in self.variants])

    @property
    def dimension(self) -> int:
        return self.variants[0].dimension

    def distance(self, A: np.ndarray) -> float:
        return min(well.distance(A) for well in self.variants)

    def anchor_points(self) -> np.ndarray:
        return self.stretches

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        which = rng.integers(len(self.variants), size=count)
        return random_rotations(count, rng) @ self.stretches[which]

    def index_of(self, U: np.ndarray, tol: float = DISTINCT_TOL) -> int:
        """Index of the variant equal to U, or -1."""
        for index, well in enumerate(self.variants):
            if np.linalg.norm(well.stretch - U) <= tol:
                return index
        return -1

    def transformed(self, Q: np.ndarray) -> "WellFamily":
        """The family expressed in another frame: U -> Q U Q^T."""
        return WellFamily([Well(Q @ w.stretch @ Q.T) for w in self.variants], self.group_name)


@dataclass(eq=False)
class DilatationWell(MatrixSet):
    """Pure dilatations {k R : k in [low, high], R in SO(3)}"""
    low: float
    high: float
    dim: int = 3

    def __post_init__(self):
        if not 0.0 < self.low <= self.high:
            raise PreconditionError(f"dilatation interval [{self.low}, {self.high}] must lie in (0, inf)")

    @property
    def dimension(self) -> int:
        return self.dim

    def distance(self, A: np.ndarray) -> float:
        A = np.asarray(A, dtype=float)
        Q, overlap = max_trace_rotation(A.T)
        k = float(np.clip(overlap / self.dim, self.low, self.high))
        return float(np.linalg.norm(A - k * Q))

    def anchor_points(self) -> np.ndarray:
        return np.array([self.low * np.eye(self.dim), self.high * np.eye(self.dim)])

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        k = rng.uniform(self.low, self.high, size=count)
        return k[:, None, None] * random_rotations(count, rng)


@dataclass(eq=False)
class PointSet(MatrixSet):
    """A finite set of matrices"""
    matrices: np.ndarray

    def __post_init__(self):
        matrices = np.asarray(self.matrices, dtype=float)
        if matrices.ndim == 2:
            matrices = matrices[None, :, :]
        self.matrices = np.array([as_matrix(m) for m in matrices])

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]

    def distance(self, A: np.ndarray) -> float:
        diff = self.matrices - np.asarray(A, dtype=float)[None, :, :]
        return float(np.sqrt(np.sum(diff * diff, axis=(1, 2))).min())

    def anchor_points(self) -> np.ndarray:
        return self.matrices

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self.matrices[rng.integers(len(self.matrices), size=count)]


@dataclass(eq=False)
class UnionSet(MatrixSet):
    """Union of several matrix sets"""
    parts: Sequence[MatrixSet] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.parts[0].dimension

    def distance(self, A: np.ndarray) -> float:
        return min(part.distance(A) for part in self.parts)

    def anchor_points(self) -> np.ndarray:
        return np.concatenate([part.anchor_points() for part in self.parts])

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        which = rng.integers(len(self.parts), size=count)
        out = np.empty((count, self.dimension, self.dimension))
        for index, part in enumerate(self.parts):
            chosen = np.flatnonzero(which == index)
            if chosen.size:
                out[chosen] = part.sample(rng, chosen.size)
        return out


def variants(U1: np.ndarray, group: str) -> WellFamily:
    """
    Generate the variant family {Q U1 Q^T : Q in G}.

    Args:
        U1: Positive definite stretch of the reference variant
        group: Point group label

    Returns:
        WellFamily with pairwise distinct variants, U1 first

    Raises:
        PreconditionError: If U1 is not a positive definite stretch
    """
    U1 = stretch(U1)
    found: List[np.ndarray] = []
    for Q in point_group(group):
        candidate = Q @ U1 @ Q.T
        candidate = 0.5 * (candidate + candidate.T)
        if all(np.linalg.norm(candidate - known) > DISTINCT_TOL for known in found):
            found.append(candidate)

    logger.debug("%d variants under the %s group", len(found), group)
    return WellFamily([Well(U) for U in found], group_name=group)


def cualni_stretch(alpha: float = 1.0619, beta: float = 0.9178, gamma: float = 1.0230) -> np.ndarray:
    """Reference orthorhombic stretch of CuAlNi in the cubic austenite basis."""
    p = 0.5 * (alpha + gamma)
    q = 0.5 * (alpha - gamma)
    return np.array([[p, q, 0.0], [q, p, 0.0], [0.0, 0.0, beta]])


def orthorhombic_variant_table(alpha: float, beta: float, gamma: float) -> List[np.ndarray]:
    """The six orthorhombic variants written out entrywise."""
    p = 0.5 * (alpha + gamma)
    q = 0.5 * (alpha - gamma)
    return [
        np.array([[p, q, 0.0], [q, p, 0.0], [0.0, 0.0, beta]]),
        np.array([[p, -q, 0.0], [-q, p, 0.0], [0.0, 0.0, beta]]),
        np.array([[p, 0.0, q], [0.0, beta, 0.0], [q, 0.0, p]]),
        np.array([[p, 0.0, -q], [0.0, beta, 0.0], [-q, 0.0, p]]),
        np.array([[beta, 0.0, 0.0], [0.0, p, q], [0.0, q, p]]),
        np.array([[beta, 0.0, 0.0], [0.0, p, -q], [0.0, -q, p]]),
    ]


def set_distance(first: MatrixSet, second: MatrixSet) -> float:
    """Distance between two well sets, attained among anchor points."""
    return min(first.separation(second), second.separation(first))

