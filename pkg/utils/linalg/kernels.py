"""
Matrix Kernels - small dense linear algebra shared by every analysis
Symmetric eigensystems, det-corrected SVD and trace maximization over SO(3)
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial.transform import Rotation as ScipyRotation

from utils.errors import NumericalFailure, PreconditionError

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, list, tuple]

ROTATION_TOL = 1e-12
STRETCH_SYMMETRY_TOL = 1e-12
EIGEN_SYMMETRY_TOL = 1e-10
EIGEN_RESIDUAL_TOL = 1e-10
UNIQUENESS_TOL = 1e-10


def as_matrix(entries: ArrayLike, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """
    Convert entries to a float square matrix with finite entries.

    Args:
        entries: Nested sequence or array
        shape: Required shape, defaults to any square shape

    Returns:
        A fresh float64 array

    Raises:
        PreconditionError: On wrong shape or non-finite entries
    """
    matrix = np.array(entries, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {matrix.shape}")
    if shape is not None and matrix.shape != tuple(shape):
        raise PreconditionError(f"expected shape {shape}, got {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise PreconditionError("matrix has non-finite entries")
    return matrix


def rotation(entries: ArrayLike) -> np.ndarray:
    """Validated proper rotation: R^T R = 1 and det R = 1 within 1e-12."""
    matrix = as_matrix(entries)
    dim = matrix.shape[0]
    if np.linalg.norm(matrix.T @ matrix - np.eye(dim)) > ROTATION_TOL * dim:
        raise PreconditionError("matrix is not orthogonal")
    if abs(np.linalg.det(matrix) - 1.0) > ROTATION_TOL * dim:
        raise PreconditionError("orthogonal matrix has determinant -1")
    return matrix


def stretch(entries: ArrayLike) -> np.ndarray:
    """Validated stretch: symmetric within 1e-12 with positive eigenvalues."""
    matrix = as_matrix(entries)
    scale = max(1.0, float(np.linalg.norm(matrix)))
    if np.linalg.norm(matrix - matrix.T) > STRETCH_SYMMETRY_TOL * scale:
        raise PreconditionError("stretch matrix is not symmetric")
    matrix = 0.5 * (matrix + matrix.T)
    if np.linalg.eigvalsh(matrix)[0] <= 0.0:
        raise PreconditionError("stretch matrix is not positive definite")
    return matrix


def dyad(a: ArrayLike, n: ArrayLike) -> np.ndarray:
    return np.outer(np.asarray(a, dtype=float), np.asarray(n, dtype=float))


@dataclass
class EigenSystem:
    """Ascending eigenvalues with an orthonormal, right-handed eigenvector frame (columns)"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def middle(self) -> float:
        return float(self.eigenvalues[len(self.eigenvalues) // 2])

    def vector(self, index: int) -> np.ndarray:
        return self.eigenvectors[:, index]


def sym_eigen(matrix: ArrayLike) -> EigenSystem:
    """
    Eigen-decompose a symmetric matrix.

    Args:
        matrix: Symmetric matrix (within 1e-10 relative)

    Returns:
        EigenSystem with ascending eigenvalues and a frame of determinant +1

    Raises:
        PreconditionError: If the input is not symmetric
        NumericalFailure: If the residual contract is not met
    """
    S = as_matrix(matrix)
    scale = float(np.linalg.norm(S))
    if np.linalg.norm(S - S.T) > EIGEN_SYMMETRY_TOL * max(scale, 1.0):
        raise PreconditionError("sym_eigen requires a symmetric matrix")
    S = 0.5 * (S + S.T)

    values, vectors = np.linalg.eigh(S)
    if np.linalg.det(vectors) < 0:
        vectors[:, -1] *= -1.0

    residual = np.linalg.norm(S @ vectors - vectors * values, axis=0).max()
    if residual > EIGEN_RESIDUAL_TOL * max(scale, np.finfo(float).tiny):
        raise NumericalFailure(f"eigen residual {residual:.3e} exceeds contract")
    return EigenSystem(eigenvalues=values, eigenvectors=vectors)


def signed_svd(matrix: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Singular value factorization M = W diag(s) V^T with W, V proper rotations.

    The last entry of s carries the sign of det M, so s[0] >= s[1] >= |s[-1]|.
    """
    M = as_matrix(matrix)
    W, s, Vt = np.linalg.svd(M)
    sign_w = np.sign(np.linalg.det(W))
    sign_v = np.sign(np.linalg.det(Vt))
    W[:, -1] *= sign_w
    Vt[-1, :] *= sign_v
    s = s.copy()
    s[-1] *= sign_w * sign_v
    return W, s, Vt.T


@dataclass
class TraceMaximum:
    """Maximizer of tr(R M) over proper rotations"""
    rotation: np.ndarray
    value: float
    unique: bool = True

    def __iter__(self):
        # unpacks as (R*, value) like the plain pair
        yield self.rotation
        yield self.value


def max_trace_rotation(matrix: ArrayLike) -> TraceMaximum:
    """
    Maximize tr(R M) over R in SO(n).

    Args:
        matrix: Any square matrix, singular allowed

    Returns:
        TraceMaximum with value sigma_1 + ... + sign(det M) sigma_n; ``unique``
        is False when the two smallest signed singular values cancel
    """
    W, s, V = signed_svd(matrix)
    R = V @ W.T
    value = float(np.sum(s))

    scale = float(s[0]) if s[0] > 0 else 0.0
    unique = scale > 0 and (s[-2] + s[-1]) > UNIQUENESS_TOL * scale
    if not unique:
        logger.debug("trace maximizer is not unique (signed singular values %s)", s)
    return TraceMaximum(rotation=R, value=value, unique=bool(unique))


def nearest_rotation(matrix: ArrayLike) -> np.ndarray:
    """Closest proper rotation in the Frobenius norm."""
    return max_trace_rotation(as_matrix(matrix).T).rotation


def random_rotations(count: int, seed: Union[int, np.random.Generator, None] = None) -> np.ndarray:
    """Uniform (Haar) random rotations as a (count, 3, 3) array."""
    rotations = ScipyRotation.random(count, random_state=seed)
    return rotations.as_matrix().reshape(count, 3, 3)


def axis_rotation(axis: str, degrees: float) -> np.ndarray:
    """Rotation by ``degrees`` about a coordinate axis ('x', 'y' or 'z')."""
    return ScipyRotation.from_euler(axis, degrees, degrees=True).as_matrix()


def rotation_from_vector(rotvec: ArrayLike) -> np.ndarray:
    return ScipyRotation.from_rotvec(np.asarray(rotvec, dtype=float)).as_matrix()
