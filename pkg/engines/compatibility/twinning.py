"""
Twinning Solver - rank-one compatibility between matrices and rotation wells
Two-matrix rank test, middle eigenvalue criterion and the two-solution twinning equation
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from utils.errors import DegenerateWellsError, NumericalFailure, PreconditionError
from utils.linalg import as_matrix, dyad, nearest_rotation, stretch, sym_eigen

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10
MIDDLE_EIGENVALUE_TOL = 1e-8
TWIN_RESIDUAL_TOL = 1e-10


@dataclass
class RankOneResult:
    """Outcome of the two-matrix rank test on B - A"""
    connected: bool
    rank: int
    a: Optional[np.ndarray] = None
    n: Optional[np.ndarray] = None
    degenerate: bool = False
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(0))


def rank_one_test(A: np.ndarray, B: np.ndarray) -> RankOneResult:
    """
    Decide whether B - A = a (x) n.

    Args:
        A, B: Matrices of the same square shape (2x2 or 3x3)

    Returns:
        RankOneResult with (a, n), |n| = 1, when the second singular value of
        B - A is at most 1e-10 times the first, otherwise the numerical rank
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise PreconditionError(f"shapes differ: {A.shape} vs {B.shape}")

    W, s, Vt = np.linalg.svd(B - A)
    dim = A.shape[0]
    if s[0] == 0.0:
        e1 = np.zeros(dim)
        e1[0] = 1.0
        return RankOneResult(True, 0, a=np.zeros(dim), n=e1, degenerate=True, singular_values=s)

    if s[1] <= RANK_TOL * s[0]:
        a = s[0] * W[:, 0]
        n = Vt[0]
        # fix the sign so reports do not depend on LAPACK conventions
        pivot = np.argmax(np.abs(n))
        if n[pivot] < 0:
            a, n = -a, -n
        return RankOneResult(True, 1, a=a, n=n, singular_values=s)

    rank = int(np.count_nonzero(s > RANK_TOL * s[0]))
    return RankOneResult(False, rank, singular_values=s)


@dataclass
class MiddleEigenvalueReport:
    """Middle eigenvalue criterion for rank-one connection to the identity well"""
    eigenvalues: np.ndarray
    lambda2: float
    gap: float
    compatible: bool
    classification: str
    two_well_incompatibility: str


def middle_eigenvalue_gap(U: np.ndarray, tol: float = MIDDLE_EIGENVALUE_TOL) -> MiddleEigenvalueReport:
    """
    Compare the middle eigenvalue of a stretch with 1.

    Args:
        U: Positive definite stretch
        tol: Absolute tolerance on |lambda2 - 1|

    Returns:
        MiddleEigenvalueReport; 'compatible' means SO(3) and SO(3)U are rank-one connected
    """
    eigen = sym_eigen(stretch(U))
    values = eigen.eigenvalues
    lambda2 = eigen.middle
    gap = lambda2 - 1.0

    if np.all(np.abs(values - 1.0) <= tol):
        classification, compatible = "degenerate", True
    elif abs(gap) <= tol:
        classification, compatible = "compatible", True
    else:
        classification, compatible = "no_rank_one_connection", False
    # no sufficient two-well incompatibility test is evaluated beyond the eigenvalue criterion
    verdict = "rank_one_connected" if compatible else "criterion not evaluated"
    return MiddleEigenvalueReport(values, float(lambda2), float(gap), compatible, classification, verdict)


@dataclass
class TwinSolution:
    """R, a, n with R G = F + a (x) n and |n| = 1"""
    R: np.ndarray
    a: np.ndarray
    n: np.ndarray
    residual: float = 0.0

    @property
    def shear(self) -> np.ndarray:
        return dyad(self.a, self.n)


def rank_one_connections(F: np.ndarray, G: np.ndarray, tol: float = MIDDLE_EIGENVALUE_TOL,
                         residual_tol: float = TWIN_RESIDUAL_TOL) -> List[TwinSolution]:
    """
    Solve R G = F + a (x) n for R in SO(3).

    Only G^T G enters, so G may be any invertible matrix. With
    C = F^{-T} G^T G F^{-1} and eigenvalues l1 <= l2 <= l3, solutions exist
    iff l2 = 1; the two sign branches give the two solutions.

    Raises:
        PreconditionError: If F or G is singular
        DegenerateWellsError: If C = 1, i.e. the wells coincide at F
        NumericalFailure: If a solution misses the residual contract
    """
    F = as_matrix(F, shape=(3, 3))
    G = as_matrix(G, shape=(3, 3))
    if abs(np.linalg.det(F)) <= 1e-14 or abs(np.linalg.det(G)) <= 1e-14:
        raise PreconditionError("rank-one connections need invertible F and G")

    F_inv = np.linalg.inv(F)
    C = F_inv.T @ G.T @ G @ F_inv
    eigen = sym_eigen(0.5 * (C + C.T))
    l1, l2, l3 = eigen.eigenvalues
    e1, e3 = eigen.vector(0), eigen.vector(2)

    if np.all(np.abs(eigen.eigenvalues - 1.0) <= tol):
        raise DegenerateWellsError("C = 1: the wells coincide at F")
    if abs(l2 - 1.0) > tol:
        return []

    l1 = min(l1, 1.0)
    l3 = max(l3, 1.0)
    spread = l3 - l1
    signs = (1.0, -1.0) if (1.0 - l1) > tol and (l3 - 1.0) > tol else (1.0,)

    solutions = []
    scale = float(np.linalg.norm(F))
    for kappa in signs:
        a = np.sqrt(l3 * (1.0 - l1) / spread) * e1 + kappa * np.sqrt(l1 * (l3 - 1.0) / spread) * e3
        factor = (np.sqrt(l3) - np.sqrt(l1)) / np.sqrt(spread)
        n = factor * (-np.sqrt(1.0 - l1) * (F.T @ e1) + kappa * np.sqrt(l3 - 1.0) * (F.T @ e3))

        length = np.linalg.norm(n)
        n = n / length
        a = a * length

        R = nearest_rotation((F + dyad(a, n)) @ np.linalg.inv(G))
        a = (R @ G - F) @ n
        residual = float(np.linalg.norm(R @ G - F - dyad(a, n)))
        if residual > residual_tol * scale:
            raise NumericalFailure(f"twin residual {residual:.3e} exceeds {residual_tol:g}*|F|")
        solutions.append(TwinSolution(R=R, a=a, n=n, residual=residual))

    logger.debug("%d rank-one connections (l1=%.6g, l2=%.6g, l3=%.6g)", len(solutions), l1, l2, l3)
    return solutions


def twin_solutions(F: np.ndarray, U: np.ndarray, tol: float = MIDDLE_EIGENVALUE_TOL) -> List[TwinSolution]:
    """
    All (R, a, n) with R U = F + a (x) n.

    Args:
        F: Invertible 3x3 matrix
        U: Positive definite stretch of the target well

    Returns:
        Two solutions when the middle eigenvalue of F^{-T} U^2 F^{-1} is 1 with
        l1 < 1 < l3, one when l1 or l3 also equals 1, otherwise none
    """
    return rank_one_connections(F, stretch(U), tol=tol)
