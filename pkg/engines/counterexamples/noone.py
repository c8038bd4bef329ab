"""
Zero-Gradient Layer - incompatible point wells joined through a region where Dy = 0
The layer carries no gradient energy, yet its measure dwarfs the smaller phase as delta -> 0
"""

from dataclasses import dataclass

import numpy as np

from utils.errors import PreconditionError

A1 = np.array([[0.0, 0.0], [0.0, 1.0]])   # e2 (x) e2
A2 = np.array([[1.0, 1.0], [1.0, 1.0]])   # (e1 + e2) (x) (e1 + e2)


@dataclass
class ZeroGradientLayer:
    """Three-piece deformation y_delta on the unit square"""
    delta: float
    layer_gradient_energy: float
    layer_measure: float
    min_phase_volume: float

    def region(self, x: np.ndarray) -> np.ndarray:
        """0 on the A1 phase, 1 in the layer, 2 in the A2 corner."""
        x = np.atleast_2d(x)
        out = np.ones(len(x), dtype=int)
        out[x[:, 1] <= 1.0 - self.delta] = 0
        out[x[:, 0] + x[:, 1] >= 2.0 - self.delta] = 2
        return out

    def deformation(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        region = self.region(x)
        y = np.tile([0.0, 1.0 - self.delta], (len(x), 1))
        y[region == 0] = x[region == 0] @ A1.T
        y[region == 2] = x[region == 2] @ A2.T + np.array([self.delta - 2.0, -1.0])
        return y

    def gradient(self, x: np.ndarray) -> np.ndarray:
        region = self.region(x)
        return np.array([A1, np.zeros((2, 2)), A2])[region]

    def layer_energy(self) -> float:
        """Integral of 1 + |Dy|^p over the layer; Dy = 0 there, so this is its measure."""
        return self.layer_measure + self.layer_gradient_energy

    def interface_jump(self, samples: int = 1000, seed: int = 0) -> float:
        """Largest jump of y across either interface at random points."""
        rng = np.random.default_rng(seed)
        d = self.delta
        # lower interface x2 = 1 - delta, x1 in [0, 1)
        x1 = rng.uniform(0.0, 1.0 - 1e-9, samples)
        lower = np.stack([x1, np.full(samples, 1.0 - d)], axis=1)
        below = A1 @ lower.T
        above = np.tile([[0.0], [1.0 - d]], samples)
        jump_lower = np.abs(below - above).max()
        # corner interface x1 + x2 = 2 - delta, x1 in [1 - delta, 1]
        t = rng.uniform(1.0 - d, 1.0, samples)
        corner = np.stack([t, 2.0 - d - t], axis=1)
        inside = (corner @ A2.T + np.array([d - 2.0, -1.0])).T
        jump_corner = np.abs(inside - np.tile([[0.0], [1.0 - d]], samples)).max()
        return float(max(jump_lower, jump_corner))


def zero_gradient_layer(delta: float) -> ZeroGradientLayer:
    """
    Layer quantities of y_delta for the wells A1 = e2 (x) e2, A2 = (e1 + e2) (x) (e1 + e2).

    y = A1 x below x2 = 1 - delta, y = (0, 1 - delta) in the layer and
    y = A2 x + (delta - 2, -1) in the corner x1 + x2 >= 2 - delta.

    Raises:
        PreconditionError: If delta is outside (0, 1)
    """
    if not 0.0 < delta < 1.0:
        raise PreconditionError(f"delta must lie in (0, 1), got {delta}")
    return ZeroGradientLayer(
        delta=float(delta),
        layer_gradient_energy=0.0,
        layer_measure=delta * (1.0 - delta) + 0.5 * delta * delta,
        min_phase_volume=min(0.5 * delta * delta, 1.0 - delta),
    )
