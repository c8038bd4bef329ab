"""
Relaxation Energy - I(y) = sum over triangles of area x W(element gradient)
Smoothed two-point double well and its assembled nodal gradient
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from engines.relax.mesh import MeshDeformation
from utils.errors import PreconditionError
from utils.linalg import as_matrix
from utils.wells import DoubleWell2DDensity, smoothed_double_well

logger = logging.getLogger(__name__)


@dataclass
class DoubleWell2D:
    """Wells A1 (depth 0) and A2 (depth delta) smoothed with width s"""
    A1: np.ndarray
    A2: np.ndarray
    delta: float = 0.0
    smoothing: float = 1e-2
    exponent: float = 2.0

    def __post_init__(self):
        self.A1 = as_matrix(self.A1, shape=(2, 2))
        self.A2 = as_matrix(self.A2, shape=(2, 2))
        if np.linalg.norm(self.A1 - self.A2) <= 1e-12:
            raise PreconditionError("the two wells must be distinct")
        if self.delta < 0:
            raise PreconditionError(f"delta must be nonnegative, got {self.delta}")
        if self.smoothing <= 0 or self.exponent <= 1:
            raise PreconditionError("smoothing must be positive and the exponent must exceed 1")

    def __call__(self, G: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return smoothed_double_well(G, self.A1, self.A2, self.delta, self.smoothing, self.exponent)

    def density(self, epsilon: float) -> DoubleWell2DDensity:
        """The same energy as an EnergyDensity for the hypothesis checker."""
        return DoubleWell2DDensity(self.A1, self.A2, self.delta, epsilon, self.smoothing, self.exponent)


def total_energy(mesh: MeshDeformation, W: DoubleWell2D) -> float:
    """Sum over triangles of area x W(element gradient)."""
    values, _ = W(mesh.gradients())
    return float(np.dot(mesh.areas, values))


def energy_and_gradient(mesh: MeshDeformation, W: DoubleWell2D,
                        values: Optional[np.ndarray] = None) -> Tuple[float, np.ndarray]:
    """
    Energy and its derivative with respect to the nodal values.

    Returns:
        (I, dI/dy) with dI/dy of shape (nodes, 2)
    """
    values = mesh.values if values is None else values
    G = mesh.gradients(values)
    density, dW = W(G)
    energy = float(np.dot(mesh.areas, density))

    # dI/dY_e = area dW/dG X^-T, columns belong to vertices 1 and 2
    local = mesh.areas[:, None, None] * dW @ np.swapaxes(mesh.inverse_edges, -1, -2)
    gradient = np.zeros_like(values)
    tri = mesh.triangles
    np.add.at(gradient, tri[:, 1], local[:, :, 0])
    np.add.at(gradient, tri[:, 2], local[:, :, 1])
    np.add.at(gradient, tri[:, 0], -local[:, :, 0] - local[:, :, 1])
    return energy, gradient
