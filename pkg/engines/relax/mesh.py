"""
Crossed Mesh - structured triangulation of the unit square with nodal deformations
Every cell is split into four triangles around its centre node
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

AREA_TOL = 1e-14


@dataclass
class MeshDeformation:
    """Nodes, nodal images y(x) and counterclockwise triangles of a conforming mesh"""
    nodes: np.ndarray
    values: np.ndarray
    triangles: np.ndarray
    size: int = 0
    areas: np.ndarray = field(init=False, repr=False)
    inverse_edges: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.triangles = np.asarray(self.triangles, dtype=int)
        if self.values.shape != self.nodes.shape:
            raise PreconditionError(f"values {self.values.shape} do not match nodes {self.nodes.shape}")

        edges = self._edges(self.nodes)
        determinants = np.linalg.det(edges)
        if np.any(determinants <= AREA_TOL):
            raise PreconditionError(f"{int(np.sum(determinants <= AREA_TOL))} degenerate or inverted triangles")
        self.areas = 0.5 * determinants
        self.inverse_edges = np.linalg.inv(edges)

    def _edges(self, points: np.ndarray) -> np.ndarray:
        """Per-triangle 2x2 matrices with columns p1 - p0 and p2 - p0."""
        p = points[self.triangles]
        return np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]], axis=-1)

    @property
    def volume(self) -> float:
        return float(self.areas.sum())

    @property
    def spacing(self) -> float:
        return 1.0 / self.size if self.size else float(np.sqrt(2.0 * self.areas.max()))

    def gradients(self, values: Optional[np.ndarray] = None) -> np.ndarray:
        """Element gradients G = Y X^-1, shape (triangles, 2, 2)."""
        values = self.values if values is None else values
        return self._edges(values) @ self.inverse_edges

    def with_values(self, values: np.ndarray) -> "MeshDeformation":
        return replace(self, values=np.array(values, dtype=float))

    def affine(self, A: np.ndarray, b: Optional[np.ndarray] = None) -> "MeshDeformation":
        """The homogeneous state y(x) = A x + b."""
        b = np.zeros(2) if b is None else np.asarray(b, dtype=float)
        return self.with_values(self.nodes @ np.asarray(A, dtype=float).T + b)


def crossed_mesh(size: int) -> MeshDeformation:
    """
    Crossed triangulation of [0, 1]^2 with ``size`` cells per side.

    Grid vertices come first, row by row, then one centre node per cell.
    Values start at the identity y(x) = x.
    """
    if size < 1:
        raise PreconditionError(f"mesh size must be positive, got {size}")
    ticks = np.linspace(0.0, 1.0, size + 1)
    X, Y = np.meshgrid(ticks, ticks, indexing="xy")
    grid = np.stack([X.ravel(), Y.ravel()], axis=1)
    centres_1d = (np.arange(size) + 0.5) / size
    CX, CY = np.meshgrid(centres_1d, centres_1d, indexing="xy")
    centres = np.stack([CX.ravel(), CY.ravel()], axis=1)
    nodes = np.concatenate([grid, centres])

    i, j = np.meshgrid(np.arange(size), np.arange(size), indexing="xy")
    i, j = i.ravel(), j.ravel()
    v00 = j * (size + 1) + i
    v10 = v00 + 1
    v01 = v00 + (size + 1)
    v11 = v01 + 1
    c = len(grid) + j * size + i
    triangles = np.concatenate([
        np.stack([v00, v10, c], axis=1),
        np.stack([v10, v11, c], axis=1),
        np.stack([v11, v01, c], axis=1),
        np.stack([v01, v00, c], axis=1),
    ])
    logger.debug("crossed mesh: %d nodes, %d triangles", len(nodes), len(triangles))
    return MeshDeformation(nodes=nodes, values=nodes.copy(), triangles=triangles, size=size)
