"""
Habit Plane Solver - crystallographic theory of martensite
Finds volume fractions at which a twinned laminate meets the austenite well along a plane
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from engines.compatibility.twinning import (
    MIDDLE_EIGENVALUE_TOL,
    TwinSolution,
    rank_one_connections,
    twin_solutions,
)
from utils.errors import DegenerateWellsError, NumericalFailure, PreconditionError
from utils.linalg import dyad, stretch
from utils.wells import WellFamily

logger = logging.getLogger(__name__)

LAMBDA_GRID_POINTS = 512
LAMBDA_XTOL = 1e-12
TANGENT_RTOL = 1e-10
ROOT_MERGE_TOL = 1e-9
HABIT_RESIDUAL_TOL = 1e-9
EIGENVALUE_MATCH_TOL = 1e-8


@dataclass
class TwinPair:
    """Two variants U_i, U_j and a twin R U_j = U_i + a (x) n between their wells"""
    U_i: np.ndarray
    U_j: np.ndarray
    twin: TwinSolution
    i: Optional[int] = None
    j: Optional[int] = None

    def residual(self) -> float:
        t = self.twin
        return float(np.linalg.norm(t.R @ self.U_j - self.U_i - dyad(t.a, t.n)))


@dataclass
class HabitSolution:
    """R (U_i + lam a (x) n) = 1 + b (x) m with 0 < lam < 1 and |m| = 1"""
    lam: float
    R: np.ndarray
    b: np.ndarray
    m: np.ndarray
    twin: TwinSolution
    residual: float = 0.0


def twin_pairs(family: WellFamily) -> List[TwinPair]:
    """All ordered variant pairs of a family with their twin solutions."""
    pairs = []
    for i, j in permutations(range(len(family)), 2):
        U_i, U_j = family[i].stretch, family[j].stretch
        try:
            solutions = twin_solutions(U_i, U_j)
        except DegenerateWellsError:
            continue
        pairs.extend(TwinPair(U_i, U_j, solution, i=i, j=j) for solution in solutions)
    logger.debug("%d twin systems in a family of %d variants", len(pairs), len(family))
    return pairs


def _validate(U1: np.ndarray, pair: TwinPair) -> None:
    reference = np.linalg.eigvalsh(U1)
    for label, U in (("U_i", pair.U_i), ("U_j", pair.U_j)):
        if np.abs(np.linalg.eigvalsh(U) - reference).max() > EIGENVALUE_MATCH_TOL * max(1.0, reference.max()):
            raise PreconditionError(f"{label} is not a variant of U1 (eigenvalues differ)")
    residual = pair.residual()
    if residual > HABIT_RESIDUAL_TOL * max(1.0, float(np.linalg.norm(pair.U_i))):
        raise PreconditionError(f"twin pair residual {residual:.3e} is too large")


def volume_fraction_roots(g: Callable[[float], float], points: int = LAMBDA_GRID_POINTS) -> List[float]:
    """
    Roots of g in (0, 1) from a uniform scan.

    Sign changes are refined with brentq. A grid minimum of |g| with no sign
    change on either side may be a tangential root that touches zero without
    crossing; it is polished with a bounded scalar minimization and kept when
    |g| drops to TANGENT_RTOL relative to the scan.
    """
    grid = np.linspace(0.0, 1.0, points + 2)[1:-1]
    values = np.array([g(lam) for lam in grid])
    if np.all(np.abs(values) <= 1e-14):
        return []
    scale = max(1.0, float(np.abs(values).max()))
    roots = [float(lam) for lam, value in zip(grid, values) if value == 0.0]
    for k in np.flatnonzero(values[:-1] * values[1:] < 0):
        roots.append(brentq(g, grid[k], grid[k + 1], xtol=LAMBDA_XTOL))

    size = np.abs(values)
    for k in range(1, len(grid) - 1):
        if values[k] == 0.0 or not (size[k] <= size[k - 1] and size[k] <= size[k + 1]):
            continue
        if values[k - 1] * values[k] <= 0 or values[k] * values[k + 1] <= 0:
            continue
        sign = np.sign(values[k])
        result = minimize_scalar(lambda lam: sign * g(lam), bounds=(grid[k - 1], grid[k + 1]), method="bounded",
                                 options={"xatol": LAMBDA_XTOL})
        if abs(g(result.x)) <= TANGENT_RTOL * scale:
            logger.debug("tangential root of g at lambda=%.12g", result.x)
            roots.append(float(result.x))

    unique: List[float] = []
    for lam in sorted(roots):
        if not unique or lam - unique[-1] > ROOT_MERGE_TOL:
            unique.append(lam)
    return unique


def habit_solutions(U1: np.ndarray, twin_pair: TwinPair) -> List[HabitSolution]:
    """
    Habit planes of the laminate U_i, U_j with the austenite well SO(3).

    Scans g(lam) = det(F(lam)^T F(lam) - 1), F(lam) = U_i + lam a (x) n, on a
    512-point grid of (0, 1), refines sign changes and tangential touches
    with volume_fraction_roots and keeps roots whose middle eigenvalue equals 1.
    Each root yields up to two habit solutions from the rank-one connections
    of F(lam) to the identity well.

    Args:
        U1: Reference stretch of the martensite
        twin_pair: Validated twin system between two variants of U1

    Returns:
        List of HabitSolution, empty when no admissible volume fraction exists

    Raises:
        PreconditionError: If the pair does not belong to U1 or its twin residual is off
    """
    U1 = stretch(U1)
    _validate(U1, twin_pair)
    U_i = twin_pair.U_i
    shear = dyad(twin_pair.twin.a, twin_pair.twin.n)
    if np.linalg.norm(shear) <= 1e-12:
        logger.debug("degenerate twin with a (x) n = 0, no interior volume fraction")
        return []

    def laminate(lam: float) -> np.ndarray:
        return U_i + lam * shear

    def g(lam: float) -> float:
        F = laminate(lam)
        return float(np.linalg.det(F.T @ F - np.eye(3)))

    solutions = []
    roots = volume_fraction_roots(g)
    for lam in roots:
        F = laminate(lam)
        middle = np.linalg.eigvalsh(F.T @ F)[1]
        if abs(middle - 1.0) > MIDDLE_EIGENVALUE_TOL:
            continue
        try:
            connections = rank_one_connections(np.eye(3), F)
        except DegenerateWellsError:
            continue
        for connection in connections:
            residual = float(np.linalg.norm(connection.R @ F - np.eye(3) - dyad(connection.a, connection.n)))
            if residual > HABIT_RESIDUAL_TOL:
                raise NumericalFailure(f"habit residual {residual:.3e} at lambda={lam:.12g}")
            solutions.append(HabitSolution(lam=lam, R=connection.R, b=connection.a, m=connection.n,
                                           twin=twin_pair.twin, residual=residual))

    logger.debug("%d habit solutions from %d candidate volume fractions", len(solutions), len(roots))
    return solutions
