"""
Hysteresis Bound - loss of metastability of the parent variant under a dead-load family
tau+ with its Schmid residual, and the laminate test function that beats the parent past tau+
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection

from engines.compatibility import TwinSolution, twin_solutions
from engines.deadload.curve import equal_energy_curve
from engines.deadload.loading import E1, E2, BiaxialLoad, LoadFamily, Orientation, well_minimizer
from utils.errors import (
    NoMetastabilityLossError,
    PreconditionError,
    RegimeError,
    TwinPartnerMissingError,
)
from utils.wells import ConstrainedDensity, Well, WellFamily, constrained_energy

logger = logging.getLogger(__name__)

TAU_MAX = 1.0
TAU_GRID_POINTS = 256
TAU_XTOL = 1e-10
C2_CHECK_SAMPLES = 33
C2_MAX_HALVINGS = 60
EPSILON_FRACTION = 0.2


@dataclass
class PartnerEnergy:
    twin: TwinSolution
    point: np.ndarray
    energy: float


@dataclass
class HysteresisBound:
    """Smallest tau with a rank-one partner of the parent at lower energy"""
    tau_plus: float
    B: np.ndarray
    R: np.ndarray
    a: np.ndarray
    n: np.ndarray
    schmid_residual: float
    parent: np.ndarray
    partner_energies: List[float]
    partner_gap: float
    sigma1: float
    f0: float
    c2: float
    epsilon: float
    tau_max: float
    swapped: bool = False


@dataclass
class LaminateCounterexample:
    """Energy and L1 accounting of the single-slab laminate y_xi"""
    tau1: float
    xi: float
    energy_gap: float
    l1_distance: float
    l1_constant: float
    slab_volume: float
    partner_energy: float
    B: np.ndarray
    a: np.ndarray
    n: np.ndarray


class DeadLoadProblem:
    """
    Parent variant U1 and product variant U2 under T_tau = sigma1 e1(x)e1 + (c2 tau + f(sigma1)) e2(x)e2.

    At tau = 0 the load sits on the equal-energy curve. The parent state is
    R1^tau U1' with R1^tau minimizing the dead-load energy on the parent well.
    """

    def __init__(self, U1: np.ndarray, U2: np.ndarray, orient: Optional[Orientation], sigma1: float,
                 c2: Optional[float] = None, epsilon: Optional[float] = None, tau_max: float = TAU_MAX,
                 e1: np.ndarray = E1, e2: np.ndarray = E2):
        if sigma1 <= 0:
            raise PreconditionError(f"sigma1 must be positive, got {sigma1}")
        if tau_max <= 0:
            raise PreconditionError(f"tau_max must be positive, got {tau_max}")
        self.orient = orient or Orientation.aligned()
        self.sigma1 = float(sigma1)
        self.tau_max = float(tau_max)
        self.e1 = np.asarray(e1, dtype=float)
        self.e2 = np.asarray(e2, dtype=float)

        curve = equal_energy_curve(U1, U2, self.orient, [self.sigma1], e1=self.e1, e2=self.e2)
        self.swapped = curve.swapped
        if self.swapped:
            U1, U2 = U2, U1
        self.U1, self.U2 = U1, U2
        self.f0 = float(curve.f[0])
        self.wellset = WellFamily([Well(self.orient.to_machine(U1)), Well(self.orient.to_machine(U2))])

        start = BiaxialLoad(self.sigma1, self.f0, self.e1, self.e2)
        self.K1 = well_minimizer(start, U1, self.orient).point
        self.K2 = well_minimizer(start, U2, self.orient).point
        if epsilon is None:
            epsilon = EPSILON_FRACTION * float(np.linalg.norm(self.K1 - self.K2))
        if epsilon <= 0:
            raise PreconditionError(f"epsilon must be positive, got {epsilon}")
        self.epsilon = float(epsilon)
        self.c2 = self._choose_c2() if c2 is None else self._check_c2(float(c2))
        self.family = LoadFamily(self.sigma1, self.f0, self.c2, self.e1, self.e2)

    # -- setup -----------------------------------------------------------------

    def _drift(self, c2: float) -> float:
        family = LoadFamily(self.sigma1, self.f0, c2, self.e1, self.e2)
        taus = np.linspace(0.0, self.tau_max, C2_CHECK_SAMPLES)
        return max(np.linalg.norm(well_minimizer(family.at(t), self.U1, self.orient).point - self.K1) for t in taus)

    def _check_c2(self, c2: float) -> float:
        if c2 <= 0:
            raise PreconditionError(f"c2 must be positive, got {c2}")
        drift = self._drift(c2)
        if drift > self.epsilon:
            raise PreconditionError(f"c2={c2:g} moves the parent {drift:.3e} away, beyond epsilon={self.epsilon:.3e}")
        return c2

    def _choose_c2(self) -> float:
        c2 = 2.0 ** math.floor(math.log2(0.1 * self.f0))
        for _ in range(C2_MAX_HALVINGS):
            if self._drift(c2) <= self.epsilon:
                logger.debug("c2 = %g keeps the parent within epsilon = %.3e", c2, self.epsilon)
                return c2
            c2 *= 0.5
        raise PreconditionError("no c2 keeps the parent state within epsilon of K1")

    # -- energies --------------------------------------------------------------

    def load(self, tau: float) -> BiaxialLoad:
        return self.family.at(tau)

    def parent_rotation(self, tau: float) -> np.ndarray:
        return well_minimizer(self.load(tau), self.U1, self.orient).rotation

    def parent(self, tau: float) -> np.ndarray:
        return self.parent_rotation(tau) @ self.wellset[0].stretch

    def partners(self, tau: float) -> List[TwinSolution]:
        """The two rank-one partners R U2' = R1^tau U1' + a (x) n on the product well."""
        solutions = twin_solutions(self.parent(tau), self.wellset[1].stretch)
        if not solutions:
            raise TwinPartnerMissingError(tau)
        return solutions

    def partner_energies(self, tau: float) -> List[PartnerEnergy]:
        R1 = self.parent_rotation(tau)
        out = []
        for twin in self.partners(tau):
            point = twin.R @ self.wellset[1].stretch
            energy = constrained_energy(point, tau, self.family, R1, self.wellset)
            out.append(PartnerEnergy(twin, point, energy))
        return sorted(out, key=lambda p: p.energy)

    def phi(self, tau: float) -> float:
        """min over partners of W_tau(B) - W_tau(R1^tau U1)."""
        return self.partner_energies(tau)[0].energy

    def density(self, tau: float, epsilon: Optional[float] = None) -> ConstrainedDensity:
        """Constrained density at tau with the preferred partner as product well."""
        best = self.partner_energies(tau)[0]
        separation = float(np.linalg.norm(best.point - self.parent(tau)))
        epsilon = EPSILON_FRACTION * separation if epsilon is None else epsilon
        return ConstrainedDensity(self.load(tau).tensor, self.parent_rotation(tau), best.point,
                                  self.wellset, epsilon, tau=tau)

    # -- analyses --------------------------------------------------------------

    def hysteresis_bound(self) -> HysteresisBound:
        phi0 = self.phi(0.0)
        if phi0 <= 0:
            raise RegimeError(f"parent is not metastable at tau=0 (phi={phi0:.3e})")

        grid = np.linspace(0.0, self.tau_max, TAU_GRID_POINTS + 1)
        previous, tau_plus = 0.0, None
        for tau in grid[1:]:
            if self.phi(float(tau)) <= 0:
                tau_plus = brentq(self.phi, previous, float(tau), xtol=TAU_XTOL)
                break
            previous = float(tau)
        if tau_plus is None:
            raise NoMetastabilityLossError(f"phi stays positive on (0, {self.tau_max:g}]")

        ranked = self.partner_energies(tau_plus)
        best = ranked[0]
        T = self.load(tau_plus).tensor
        schmid = abs(float(best.twin.a @ T @ best.twin.n))
        gap = ranked[1].energy - best.energy if len(ranked) > 1 else math.inf
        logger.info("✅ tau+ = %.10g (Schmid residual %.2e)", tau_plus, schmid)
        return HysteresisBound(
            tau_plus=float(tau_plus), B=best.point, R=best.twin.R, a=best.twin.a, n=best.twin.n,
            schmid_residual=schmid, parent=self.parent(tau_plus),
            partner_energies=[p.energy for p in ranked], partner_gap=float(gap),
            sigma1=self.sigma1, f0=self.f0, c2=self.c2, epsilon=self.epsilon,
            tau_max=self.tau_max, swapped=self.swapped,
        )

    def laminate_counterexample(self, tau1: float, xi: float, x0: Sequence[float],
                                box: Tuple[Sequence[float], Sequence[float]]) -> LaminateCounterexample:
        """
        Slab laminate y_xi = R1U1' x + a min(max((x - x0).n, 0), xi) on an axis-aligned box.

        Args:
            tau1: Load parameter
            xi: Slab thickness
            x0: Point on the lower slab plane
            box: (lower corner, upper corner) of the domain

        Raises:
            PreconditionError: If the slab leaves the box
        """
        if xi <= 0:
            raise PreconditionError(f"slab thickness must be positive, got {xi}")
        lower, upper = (np.asarray(c, dtype=float) for c in box)
        x0 = np.asarray(x0, dtype=float)
        if lower.shape != (3,) or upper.shape != (3,) or np.any(upper <= lower):
            raise PreconditionError("box must be given by two 3-vectors with lower < upper")

        best = self.partner_energies(tau1)[0]
        a, n = best.twin.a, best.twin.n
        middle = x0 + 0.5 * xi * n
        if np.any(middle <= lower) or np.any(middle >= upper):
            raise PreconditionError("slab midpoint lies outside the box")

        offset = float(n @ x0)
        domain_volume = float(np.prod(upper - lower))
        slab_volume, slab_centroid = clipped_box(lower, upper, [(-n, offset), (n, -offset - xi)])
        above_volume, _ = clipped_box(lower, upper, [(-n, offset + xi)])
        below_volume, _ = clipped_box(lower, upper, [(n, -offset)])
        if slab_volume <= 0 or above_volume <= 0 or below_volume <= 0:
            raise PreconditionError("a slab plane misses the box")

        slab_moment = slab_volume * float(n @ slab_centroid - offset)
        l1 = float(np.linalg.norm(a)) * (slab_moment + xi * above_volume)
        energy_gap = slab_volume * best.energy
        return LaminateCounterexample(
            tau1=float(tau1), xi=float(xi), energy_gap=float(energy_gap), l1_distance=l1,
            l1_constant=domain_volume, slab_volume=slab_volume, partner_energy=best.energy,
            B=best.point, a=a, n=n,
        )


def clipped_box(lower: np.ndarray, upper: np.ndarray,
                halfspaces: List[Tuple[np.ndarray, float]]) -> Tuple[float, np.ndarray]:
    """
    Volume and centroid of a box cut by halfspaces {x : w . x + c <= 0}.

    Returns (0, nan) when the intersection has no interior.
    """
    dim = len(lower)
    rows = [np.concatenate([np.eye(dim)[i], [-upper[i]]]) for i in range(dim)]
    rows += [np.concatenate([-np.eye(dim)[i], [lower[i]]]) for i in range(dim)]
    rows += [np.concatenate([np.asarray(w, dtype=float), [float(c)]]) for w, c in halfspaces]
    H = np.array(rows)
    A, b = H[:, :-1], H[:, -1]

    # Chebyshev centre: maximize r subject to A x + r |A_i| <= -b
    norms = np.linalg.norm(A, axis=1)
    result = linprog(np.r_[np.zeros(dim), -1.0], A_ub=np.c_[A, norms], b_ub=-b,
                     bounds=[(None, None)] * dim + [(0, None)], method="highs")
    if not result.success or result.x[-1] <= 1e-12:
        return 0.0, np.full(dim, np.nan)

    vertices = HalfspaceIntersection(H, result.x[:-1]).intersections
    hull = ConvexHull(vertices)
    origin = vertices.mean(axis=0)
    volume, moment = 0.0, np.zeros(dim)
    for simplex in hull.simplices:
        corners = vertices[simplex]
        piece = abs(np.linalg.det(corners - origin)) / math.factorial(dim)
        volume += piece
        moment += piece * (origin + corners.sum(axis=0)) / (dim + 1)
    return float(volume), moment / volume


def hysteresis_bound(U1: np.ndarray, U2: np.ndarray, orient: Optional[Orientation], sigma1: float,
                     c2: Optional[float] = None, epsilon: Optional[float] = None,
                     tau_max: float = TAU_MAX) -> HysteresisBound:
    """
    Metastability-loss parameter tau+ of the parent variant.

    Args:
        U1, U2: Parent and product stretches (reordered if U2 is preferred below the curve)
        orient: Specimen orientation
        sigma1: Fixed traction along e1
        c2: Load rate along e2, chosen automatically when None
        epsilon: Neighbourhood radius for the c2 check, 0.2 |K1 - K2| when None
        tau_max: End of the searched parameter range

    Raises:
        TwinPartnerMissingError: If the parent loses its rank-one partners at some tau
        NoMetastabilityLossError: If phi stays positive on (0, tau_max]
    """
    return DeadLoadProblem(U1, U2, orient, sigma1, c2=c2, epsilon=epsilon, tau_max=tau_max).hysteresis_bound()


def laminate_counterexample(problem: DeadLoadProblem, tau1: float, xi: float, x0: Sequence[float],
                            box: Tuple[Sequence[float], Sequence[float]]) -> LaminateCounterexample:
    return problem.laminate_counterexample(tau1, xi, x0, box)
