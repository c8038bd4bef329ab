"""
Radial Transition Layer - upper bound for the layer constant from a radial interpolation
Closed-form energy rho(k) with its minimizer k*, plus quadrature and boundary-value oracles
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, solve_bvp

from utils.errors import NumericalFailure, PreconditionError

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-12
BVP_NODES = 2048
BVP_TOL = 1e-8


@dataclass(frozen=True)
class LayerProfile:
    """Radial interpolation r = lam R inside R = eps, r = mu R outside R = k eps"""
    lam: float
    mu: float
    n: int
    k: float = 2.0
    epsilon: float = 0.1

    def __post_init__(self):
        if self.lam <= 0 or self.mu <= 0:
            raise PreconditionError(f"dilatation factors must be positive, got ({self.lam}, {self.mu})")
        if int(self.n) != self.n or self.n < 2:
            raise PreconditionError(f"dimension must be an integer >= 2, got {self.n}")
        if self.k <= 1:
            raise PreconditionError(f"layer width ratio k must exceed 1, got {self.k}")
        if self.epsilon <= 0:
            raise PreconditionError(f"inner radius must be positive, got {self.epsilon}")

    @property
    def degenerate(self) -> bool:
        return self.lam == self.mu

    def coefficients(self, k: float) -> Tuple[float, float]:
        """(A, B) of r(s) = A s + B s^(1-n) on [1, k]."""
        tau = k ** self.n
        return (self.mu * tau - self.lam) / (tau - 1.0), (self.lam - self.mu) * tau / (tau - 1.0)

    def profile(self, R: np.ndarray, k: Optional[float] = None) -> np.ndarray:
        """r(R) on [0, k eps], piecewise: lam R, A R + B eps^n R^(1-n), mu R."""
        k = self.k if k is None else k
        A, B = self.coefficients(k)
        R = np.asarray(R, dtype=float)
        eps = self.epsilon
        with np.errstate(divide="ignore", invalid="ignore"):
            middle = A * R + B * eps ** self.n * R ** (1 - self.n)
        return np.where(R <= eps, self.lam * R, np.where(R <= k * eps, middle, self.mu * R))


def rho(profile: LayerProfile, k: float) -> float:
    """(k^n - 1)/n + (k^n mu - lam)^2/(k^n - 1) + (n-1)(lam - mu)^2 k^n/(k^n - 1)."""
    if k <= 1:
        raise PreconditionError(f"k must exceed 1, got {k}")
    n, lam, mu = profile.n, profile.lam, profile.mu
    tau = k ** n
    return (tau - 1.0) / n + (tau * mu - lam) ** 2 / (tau - 1.0) + (n - 1) * (lam - mu) ** 2 * tau / (tau - 1.0)


def rho_quadrature(profile: LayerProfile, k: float) -> float:
    """rho(k) by adaptive quadrature of s^(n-1) (1 + (n-1)(r/s)^2 + r'^2) on [1, k]."""
    n = profile.n
    A, B = profile.coefficients(k)

    def integrand(s: float) -> float:
        r = A * s + B * s ** (1 - n)
        dr = A + (1 - n) * B * s ** (-n)
        return s ** (n - 1) * (1.0 + (n - 1) * (r / s) ** 2 + dr * dr)

    value, error = quad(integrand, 1.0, k, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    logger.debug("quadrature of rho(%.6g): %.15g (error estimate %.1e)", k, value, error)
    return float(value)


def sign(x: float) -> float:
    return float(np.sign(x))


def optimal_width(profile: LayerProfile) -> float:
    """k* with k*^n = 1 + n |lam - mu| / sqrt(1 + n mu^2)."""
    n, lam, mu = profile.n, profile.lam, profile.mu
    tau = 1.0 + n * abs(lam - mu) / math.sqrt(1.0 + n * mu * mu)
    return tau ** (1.0 / n)


def rho_min(profile: LayerProfile) -> float:
    """Exact minimum of rho over k > 1."""
    n, lam, mu = profile.n, profile.lam, profile.mu
    d = lam - mu
    return (n - 1) * d * d + 2.0 * abs(d) * (math.sqrt(1.0 + n * mu * mu) - mu * sign(d))


def gamma_upper(profile: LayerProfile) -> float:
    """Symmetric upper bound (n-1)(lam-mu)^2 + 2 h(lam, mu) |lam - mu| for the layer constant."""
    n, lam, mu = profile.n, profile.lam, profile.mu
    d = lam - mu
    h = min(math.sqrt(1.0 + n * mu * mu) - mu * sign(d), math.sqrt(1.0 + n * lam * lam) - lam * sign(-d))
    return (n - 1) * d * d + 2.0 * h * abs(d)


@dataclass
class RadialLayer:
    """Closed-form radial layer quantities"""
    profile: LayerProfile
    rho_k: float
    k_star: float
    rho_min: float
    gamma_upper: float
    degenerate: bool

    def rho(self, k: float) -> float:
        return rho(self.profile, k)

    def profile_fn(self, R: np.ndarray) -> np.ndarray:
        return self.profile.profile(R)


def radial_layer(profile: LayerProfile) -> RadialLayer:
    """
    Evaluate the radial transition layer.

    Returns:
        RadialLayer with rho(k) at the profile's k, k*, rho_min and gamma_upper;
        for lam = mu everything vanishes and ``degenerate`` is set

    Raises:
        NumericalFailure: If rho(k*) disagrees with rho_min beyond 1e-10
    """
    if profile.degenerate:
        logger.info("⚠️ equal dilatation factors: the layer costs nothing")
        return RadialLayer(profile, rho(profile, profile.k), 1.0, 0.0, 0.0, True)

    k_star = optimal_width(profile)
    minimum = rho_min(profile)
    at_k_star = rho(profile, k_star)
    if abs(at_k_star - minimum) > 1e-10 * max(1.0, abs(minimum)):
        raise NumericalFailure(f"rho(k*) = {at_k_star:.15g} differs from rho_min = {minimum:.15g}")
    return RadialLayer(profile, rho(profile, profile.k), k_star, minimum, gamma_upper(profile), False)


def bvp_profile(profile: LayerProfile, nodes: int = BVP_NODES, tol: float = BVP_TOL) -> Callable[[np.ndarray], np.ndarray]:
    """
    Solve the radial Euler-Lagrange equation r'' + (n-1) r'/R - (n-1) r/R^2 = 0 on [eps, k eps].

    Returns:
        The collocation solution as a callable R -> r(R)

    Raises:
        NumericalFailure: If solve_bvp does not converge
    """
    n, eps, k = profile.n, profile.epsilon, profile.k
    left, right = eps * profile.lam, k * eps * profile.mu

    def system(R, y):
        return np.vstack([y[1], -(n - 1) * y[1] / R + (n - 1) * y[0] / R ** 2])

    def boundary(ya, yb):
        return np.array([ya[0] - left, yb[0] - right])

    mesh = np.linspace(eps, k * eps, nodes)
    guess = np.vstack([np.linspace(left, right, nodes), np.full(nodes, (right - left) / (mesh[-1] - mesh[0]))])
    solution = solve_bvp(system, boundary, mesh, guess, tol=tol, max_nodes=max(100000, 4 * nodes))
    if not solution.success:
        raise NumericalFailure(f"boundary-value solve failed: {solution.message}")
    return lambda R: solution.sol(np.asarray(R, dtype=float))[0]


def radial_sweep(profile: LayerProfile, k_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """Rows (k, rho(k)) for a sweep over layer widths."""
    return [(float(k), rho(profile, float(k))) for k in k_grid]
