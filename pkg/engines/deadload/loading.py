"""
Biaxial Dead Loading - machine-frame loads, specimen orientation and per-well minimizers
T = sigma1 e1 (x) e1 + sigma2 e2 (x) e2 acting on the martensite wells
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation as ScipyRotation

from utils.errors import PreconditionError
from utils.linalg import as_matrix, dyad, max_trace_rotation, rotation, stretch

logger = logging.getLogger(__name__)

BASIS_TOL = 1e-12

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])


def _unit_pair(e1: Sequence[float], e2: Sequence[float]):
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    if e1.shape != (3,) or e2.shape != (3,):
        raise PreconditionError("machine basis vectors must be 3-vectors")
    if abs(np.linalg.norm(e1) - 1.0) > BASIS_TOL or abs(np.linalg.norm(e2) - 1.0) > BASIS_TOL:
        raise PreconditionError("machine basis vectors must have unit length")
    if abs(float(e1 @ e2)) > BASIS_TOL:
        raise PreconditionError("machine basis vectors must be orthogonal")
    return e1, e2


@dataclass
class BiaxialLoad:
    """Dead load with tractions sigma1, sigma2 along the machine axes e1, e2"""
    sigma1: float
    sigma2: float
    e1: np.ndarray = field(default_factory=lambda: E1.copy())
    e2: np.ndarray = field(default_factory=lambda: E2.copy())

    def __post_init__(self):
        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise PreconditionError(f"tractions must be positive, got ({self.sigma1}, {self.sigma2})")
        self.sigma1 = float(self.sigma1)
        self.sigma2 = float(self.sigma2)
        self.e1, self.e2 = _unit_pair(self.e1, self.e2)

    @property
    def tensor(self) -> np.ndarray:
        return self.sigma1 * dyad(self.e1, self.e1) + self.sigma2 * dyad(self.e2, self.e2)

    def scaled(self, factor: float) -> "BiaxialLoad":
        return BiaxialLoad(factor * self.sigma1, factor * self.sigma2, self.e1, self.e2)


@dataclass
class LoadFamily:
    """
    One-parameter loading T_tau = sigma1 e1 (x) e1 + (c2 tau + f0) e2 (x) e2.

    f0 is the equal-energy value f(sigma1), so tau = 0 sits on the curve.
    """
    sigma1: float
    f0: float
    c2: float
    e1: np.ndarray = field(default_factory=lambda: E1.copy())
    e2: np.ndarray = field(default_factory=lambda: E2.copy())

    def __post_init__(self):
        if self.c2 <= 0:
            raise PreconditionError(f"c2 must be positive, got {self.c2}")
        self.e1, self.e2 = _unit_pair(self.e1, self.e2)

    def at(self, tau: float) -> BiaxialLoad:
        if tau < 0:
            raise PreconditionError(f"tau must be nonnegative, got {tau}")
        return BiaxialLoad(self.sigma1, self.c2 * tau + self.f0, self.e1, self.e2)


@dataclass
class Orientation:
    """Rotation Q taking material-basis components to machine-basis components"""
    matrix: np.ndarray = field(default_factory=lambda: np.eye(3))
    label: str = "matrix"

    def __post_init__(self):
        self.matrix = rotation(self.matrix)

    @classmethod
    def aligned(cls) -> "Orientation":
        return cls(np.eye(3), label="aligned")

    @classmethod
    def from_euler(cls, sequence: str, angles: Sequence[float], degrees: bool = True) -> "Orientation":
        """Orientation from intrinsic/extrinsic Euler angles in scipy's convention."""
        try:
            matrix = ScipyRotation.from_euler(sequence, angles, degrees=degrees).as_matrix()
        except ValueError as e:
            raise PreconditionError(f"invalid Euler angles {sequence!r} {list(angles)}: {e}") from e
        # scipy rounds through quaternions; re-orthonormalize to the 1e-12 rotation contract
        u, _, vt = np.linalg.svd(matrix)
        return cls(u @ vt, label=f"euler:{sequence}")

    def to_machine(self, U: np.ndarray) -> np.ndarray:
        """Machine-frame stretch U' = Q U Q^T."""
        Q = self.matrix
        U_machine = Q @ stretch(U) @ Q.T
        return 0.5 * (U_machine + U_machine.T)

    def rotated(self, P: np.ndarray) -> "Orientation":
        """The same specimen seen from a machine frame rotated by P."""
        return Orientation(rotation(P) @ self.matrix, label=self.label)


LoadLike = Union[BiaxialLoad, np.ndarray]


def load_tensor(load: LoadLike) -> np.ndarray:
    if isinstance(load, BiaxialLoad):
        return load.tensor
    return as_matrix(load, shape=(3, 3))


@dataclass
class WellMinimum:
    """Minimizer R* of -T . R U' on one well and the minimum value"""
    rotation: np.ndarray
    value: float
    unique: bool = True
    stretch: Optional[np.ndarray] = None

    @property
    def point(self) -> np.ndarray:
        return self.rotation @ self.stretch

    def __iter__(self):
        yield self.rotation
        yield self.value


def well_minimizer(T: LoadLike, U: np.ndarray, orient: Optional[Orientation] = None) -> WellMinimum:
    """
    Minimize the dead-load energy -T . R U' over R in SO(3).

    Args:
        T: Biaxial load or a 3x3 machine-frame stress
        U: Material-frame stretch of the well
        orient: Specimen orientation, aligned when omitted

    Returns:
        WellMinimum with value = -max tr(R U' T^T); ``unique`` mirrors the trace maximizer
    """
    orient = orient or Orientation.aligned()
    tensor = load_tensor(T)
    U_machine = orient.to_machine(U)
    best = max_trace_rotation(U_machine @ tensor.T)
    if not best.unique:
        logger.debug("well minimizer is not unique for this load")
    return WellMinimum(rotation=best.rotation, value=-best.value, unique=best.unique, stretch=U_machine)
