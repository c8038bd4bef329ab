"""
Equal-Energy Curve - loads at which two martensite variants exchange stability
Bracketing plus brentq on the difference of the per-well minimum energies
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from engines.deadload.loading import E1, E2, BiaxialLoad, LoadLike, Orientation, well_minimizer
from utils.errors import NonMonotoneCurveError, PreconditionError, WellsNeverExchangeError

logger = logging.getLogger(__name__)

MAX_BRACKET_STEPS = 40
EXTREME_EXPONENT = 20
ROOT_RTOL = 1e-10
DEGENERATE_TOL = 1e-12

LoadPath = Callable[[float], Tuple[float, float]]


def well_energy_gap(T: LoadLike, U1: np.ndarray, U2: np.ndarray, orient: Optional[Orientation] = None) -> float:
    """E1 - E2: negative when well 1 is preferred under T."""
    return well_minimizer(T, U1, orient).value - well_minimizer(T, U2, orient).value


@dataclass
class CurvePoint:
    sigma1: float
    sigma2: float
    rank_gap: float
    R1: np.ndarray
    R2: np.ndarray


@dataclass
class EqualEnergyCurve:
    """Tabulated curve sigma2 = f(sigma1) with the rank gap of R2 U2' - R1 U1'"""
    sigma1: np.ndarray
    f: np.ndarray
    rank_gap: np.ndarray
    swapped: bool = False

    def rows(self) -> Iterator[Tuple[float, float, float]]:
        for row in zip(self.sigma1, self.f, self.rank_gap):
            yield tuple(float(v) for v in row)

    def __len__(self) -> int:
        return len(self.sigma1)


class _GapFunction:
    """g(sigma1, sigma2) = E1 - E2 for fixed wells, orientation and machine basis"""

    def __init__(self, U1, U2, orient, e1, e2):
        self.U1, self.U2 = U1, U2
        self.orient = orient
        self.e1, self.e2 = e1, e2

    def load(self, sigma1: float, sigma2: float) -> BiaxialLoad:
        return BiaxialLoad(sigma1, sigma2, self.e1, self.e2)

    def __call__(self, sigma1: float, sigma2: float) -> float:
        return well_energy_gap(self.load(sigma1, sigma2), self.U1, self.U2, self.orient)

    def swapped(self) -> "_GapFunction":
        return _GapFunction(self.U2, self.U1, self.orient, self.e1, self.e2)


def _bracket_root(g: Callable[[float], float], start: float) -> float:
    lo = hi = start
    g_lo = g_hi = g(start)
    for _ in range(MAX_BRACKET_STEPS):
        if g_lo < 0:
            break
        lo *= 0.5
        g_lo = g(lo)
    for _ in range(MAX_BRACKET_STEPS):
        if g_hi > 0:
            break
        hi *= 2.0
        g_hi = g(hi)
    if not (g_lo < 0 < g_hi):
        raise WellsNeverExchangeError(f"no sign change of the energy difference near {start:.6g}")
    return brentq(g, lo, hi, xtol=1e-300, rtol=ROOT_RTOL)


def _order_wells(gap: _GapFunction, sigma1: float) -> Tuple[_GapFunction, bool]:
    small = gap(sigma1, sigma1 * 2.0 ** -EXTREME_EXPONENT)
    large = gap(sigma1, sigma1 * 2.0 ** EXTREME_EXPONENT)
    scale = sigma1 * 2.0 ** EXTREME_EXPONENT
    if abs(small) <= DEGENERATE_TOL * sigma1 and abs(large) <= DEGENERATE_TOL * scale:
        raise WellsNeverExchangeError("the two wells have equal energy for every biaxial load in this frame")
    if small < 0 < large:
        return gap, False
    if large < 0 < small:
        logger.info("⚠️ well 2 is preferred at small sigma2; swapping the wells")
        return gap.swapped(), True
    raise WellsNeverExchangeError("the same well is preferred at small and large sigma2")


def equal_energy_curve(U1: np.ndarray, U2: np.ndarray, orient: Optional[Orientation],
                       sigma1_grid: Sequence[float], e1: np.ndarray = E1, e2: np.ndarray = E2,
                       workers: Optional[int] = None) -> EqualEnergyCurve:
    """
    Tabulate the equal-energy curve sigma2 = f(sigma1).

    Args:
        U1, U2: Material-frame stretches of the two variants
        orient: Specimen orientation (aligned when None)
        sigma1_grid: Strictly increasing positive sigma1 values
        e1, e2: Machine basis
        workers: Thread count for tabulation, serial when None or 1

    Returns:
        EqualEnergyCurve; ``swapped`` is True when the wells were reordered so
        that well 1 is preferred for small sigma2

    Raises:
        PreconditionError: If the grid is not positive and strictly increasing
        WellsNeverExchangeError: If the energy difference never changes sign
        NonMonotoneCurveError: If the tabulated f is not strictly increasing
    """
    grid = np.asarray(sigma1_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0):
        raise PreconditionError("sigma1 grid must be a nonempty list of positive values")
    if np.any(np.diff(grid) <= 0):
        raise PreconditionError("sigma1 grid must be strictly increasing")

    orient = orient or Orientation.aligned()
    gap, swapped = _order_wells(_GapFunction(U1, U2, orient, e1, e2), float(grid[0]))

    def solve(sigma1: float) -> CurvePoint:
        sigma2 = _bracket_root(lambda s2: gap(sigma1, s2), sigma1)
        load = gap.load(sigma1, sigma2)
        first = well_minimizer(load, gap.U1, orient)
        second = well_minimizer(load, gap.U2, orient)
        difference = second.point - first.point
        rank_gap = float(np.linalg.svd(difference, compute_uv=False)[1])
        return CurvePoint(sigma1, sigma2, rank_gap, first.rotation, second.rotation)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(solve, grid))
    else:
        points = [solve(float(s)) for s in grid]

    f = np.array([p.sigma2 for p in points])
    if np.any(np.diff(f) <= 0):
        raise NonMonotoneCurveError("tabulated equal-energy curve is not strictly increasing")

    logger.debug("equal-energy curve: %d points, f in [%.6g, %.6g]", len(f), f.min(), f.max())
    return EqualEnergyCurve(sigma1=grid.copy(), f=f, rank_gap=np.array([p.rank_gap for p in points]), swapped=swapped)


def equal_energy_crossing(U1: np.ndarray, U2: np.ndarray, orient: Optional[Orientation], path: LoadPath,
                          t_bracket: Tuple[float, float], e1: np.ndarray = E1, e2: np.ndarray = E2) -> float:
    """
    Parameter at which a load path sigma(t) = (sigma1(t), sigma2(t)) crosses the curve.

    Args:
        path: Callable t -> (sigma1, sigma2) with positive tractions on the bracket
        t_bracket: (t_lo, t_hi) with opposite signs of E1 - E2 at the ends

    Raises:
        WellsNeverExchangeError: If the energy difference has the same sign at both ends
    """
    gap = _GapFunction(U1, U2, orient or Orientation.aligned(), e1, e2)
    g = lambda t: gap(*path(t))
    t_lo, t_hi = (float(t) for t in t_bracket)
    g_lo, g_hi = g(t_lo), g(t_hi)
    if g_lo == 0.0:
        return t_lo
    if g_hi == 0.0:
        return t_hi
    if g_lo * g_hi > 0:
        raise WellsNeverExchangeError(f"load path does not cross the equal-energy curve on [{t_lo}, {t_hi}]")
    return brentq(g, t_lo, t_hi, xtol=1e-14, rtol=ROOT_RTOL)
