"""
Rooms and Passages - a chain of square rooms joined by thin corridors
A nucleus filling one room costs only the corridor energy, which vanishes with the corridor thickness
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from engines.compatibility import rank_one_test
from utils.errors import PreconditionError, RegimeError
from utils.linalg import as_matrix

logger = logging.getLogger(__name__)

GAUSS_POINTS = 64


@dataclass(frozen=True)
class RoomsPassages:
    """
    Rooms Q_j of half-side h_j centred on the x1-axis, joined by corridors C_j
    of length l_j and half-thickness d_j (C_j runs from room j to room j+1).

    Index j is 1-based to match the usual room numbering.
    """
    h: Tuple[float, ...]
    l: Tuple[float, ...]
    d: Tuple[float, ...]

    def __post_init__(self):
        h, l, d = (np.asarray(v, dtype=float) for v in (self.h, self.l, self.d))
        if not (len(h) == len(l) == len(d)) or len(h) < 3:
            raise PreconditionError("h, l and d must have the same length J >= 3")
        if np.any(h <= 0) or np.any(l <= 0) or np.any(d <= 0):
            raise PreconditionError("room, corridor and thickness sizes must be positive")
        if np.any(np.diff(h) >= 0):
            raise PreconditionError("room half-sides must be strictly decreasing")
        if np.any(d[:-1] >= h[1:]):
            raise PreconditionError("corridor half-thickness d_j must stay below h_(j+1)")

    @classmethod
    def dyadic(cls, J: int, thickness_fraction: float = 0.5) -> "RoomsPassages":
        """h_j = l_j = 2^-j and d_j = fraction * 2^-(j+1)."""
        if not 0 < thickness_fraction < 1:
            raise PreconditionError("thickness fraction must lie in (0, 1)")
        j = np.arange(1, J + 1, dtype=float)
        return cls(tuple(2.0 ** -j), tuple(2.0 ** -j), tuple(thickness_fraction * 2.0 ** -(j + 1)))

    @property
    def J(self) -> int:
        return len(self.h)

    def with_thickness(self, scale: float) -> "RoomsPassages":
        """Same rooms and corridor lengths with every d_j scaled."""
        return replace(self, d=tuple(scale * np.asarray(self.d)))

    def centres(self) -> np.ndarray:
        """x1-coordinates c_j with c_1 = h_1 and c_(j+1) = c_j + h_j + l_j + h_(j+1)."""
        c = [self.h[0]]
        for j in range(self.J - 1):
            c.append(c[-1] + self.h[j] + self.l[j] + self.h[j + 1])
        return np.array(c)

    def corridor(self, j: int) -> Tuple[float, float, float]:
        """(start, end, half-thickness) of C_j."""
        c = self.centres()
        return c[j - 1] + self.h[j - 1], c[j] - self.h[j], self.d[j - 1]

    def total_length(self) -> float:
        return float(2.0 * np.sum(self.h) + np.sum(self.l[:-1]))


@dataclass
class RoomsRatio:
    layer_energy: float
    nucleus_volume: float
    ratio: float
    j: int


def _corridor_energy(A_from: np.ndarray, A_to: np.ndarray, start: float, end: float, half: float, p: float) -> float:
    """Integral of 1 + |Dy|^p over a corridor where y blends A_from x into A_to x linearly in x1."""
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    x1 = 0.5 * (end - start) * nodes + 0.5 * (end + start)
    x2 = half * nodes
    w = np.outer(weights, weights) * 0.5 * (end - start) * half

    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    length = end - start
    phi = (X1 - start) / length
    jump = A_to - A_from
    # Dy = A_from + phi (A_to - A_from) + (A_to - A_from) x (x) e1 / length
    Dy = A_from + phi[..., None, None] * jump
    moved = np.einsum("ik,...k->...i", jump, np.stack([X1, X2], axis=-1)) / length
    Dy[..., :, 0] += moved
    norms = np.sqrt(np.sum(Dy * Dy, axis=(-2, -1)))
    return float(np.sum(w * (1.0 + norms ** p)))


def rooms_ratio(geom: RoomsPassages, A1: np.ndarray, A2: np.ndarray, p: float, j: int) -> RoomsRatio:
    """
    Layer-to-nucleus energy ratio of the deformation that is A2 x on room j and A1 x elsewhere.

    Args:
        geom: Rooms-and-passages geometry
        A1, A2: 2x2 matrices with rank(A2 - A1) = 2
        p: Growth exponent
        j: Room index with 2 <= j <= J - 1

    Raises:
        PreconditionError: If j is out of range or A2 - A1 has rank <= 1
    """
    A1 = as_matrix(A1, shape=(2, 2))
    A2 = as_matrix(A2, shape=(2, 2))
    if rank_one_test(A1, A2).connected:
        raise PreconditionError("rooms counterexample needs rank(A2 - A1) = 2")
    if not 2 <= j <= geom.J - 1:
        raise PreconditionError(f"room index must satisfy 2 <= j <= {geom.J - 1}, got {j}")
    if p <= 1:
        raise PreconditionError(f"p must exceed 1, got {p}")

    incoming = _corridor_energy(A1, A2, *geom.corridor(j - 1), p)
    outgoing = _corridor_energy(A2, A1, *geom.corridor(j), p)
    layer = incoming + outgoing
    nucleus = 4.0 * geom.h[j - 1] ** 2
    return RoomsRatio(layer_energy=layer, nucleus_volume=nucleus, ratio=layer / nucleus, j=j)


def rooms_sweep(geom: RoomsPassages, A1: np.ndarray, A2: np.ndarray, p: float, j: int,
                scales: Sequence[float]) -> List[Tuple[float, float]]:
    """Rows (d_j, ratio) as every corridor thickness is scaled."""
    rows = []
    for scale in scales:
        scaled = geom.with_thickness(float(scale))
        rows.append((float(scaled.d[j - 1]), rooms_ratio(scaled, A1, A2, p, j).ratio))
    return rows


def thickness_for_ratio(geom: RoomsPassages, A1: np.ndarray, A2: np.ndarray, p: float, j: int,
                        target: float) -> float:
    """
    Thickness scale below which the ratio drops under ``target``.

    Returns:
        A scale theta in (0, 1] with rooms_ratio(geom.with_thickness(theta)) < target

    Raises:
        RegimeError: If no positive thickness reaches the target
    """
    if target <= 0:
        raise PreconditionError("target ratio must be positive")
    ratio = lambda scale: rooms_ratio(geom.with_thickness(scale), A1, A2, p, j).ratio - target
    if ratio(1.0) < 0:
        return 1.0
    floor = 1e-12
    if ratio(floor) >= 0:
        raise RegimeError(f"ratio stays above {target:g} for every corridor thickness")
    root = brentq(ratio, floor, 1.0, xtol=1e-15, rtol=1e-12)
    scale = root * (1.0 - 1e-6)
    logger.debug("corridor scale %.6g brings the ratio below %g", scale, target)
    return scale
