"""
Metastability Threshold - growth constant K, critical well depth delta0 and the L1 radius sigma
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from utils.errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass
class ThresholdReport:
    K: float
    delta0: float
    branch: str
    sigma: Optional[float] = None
    beta: Optional[float] = None
    Delta_body: Optional[float] = None


def growth_constant(c0: float, c1: float, alpha: float) -> Tuple[float, str]:
    """
    K with W(A) >= K (1 + |A|^p) given W >= c0 + c1 |A|^p and W >= alpha.

    Returns:
        (K, branch label)
    """
    if c0 >= c1:
        return c1, "c0>=c1"
    if alpha <= c0:
        return c0, "alpha<=c0<c1"
    # alpha > c0: interpolate between the growth bound and the floor
    return alpha * c1 / (alpha + c1 - c0), "alpha>c0"


def body_constant(Delta_ball: float, kappa: float, E: float, n: int) -> float:
    """Delta for a body of volume fraction kappa and eccentricity E from the ball constant."""
    return 2.0 ** (-n) * kappa * (1.0 - E * E) ** (n / 2.0) * Delta_ball


def metastability_threshold(c0: float, c1: float, alpha: float, p: float, gamma: float, Delta: float,
                            kappa: Optional[float] = None, E: Optional[float] = None,
                            vol_omega: Optional[float] = None, n: Optional[int] = None) -> ThresholdReport:
    """
    Threshold delta0 = (K/2) min(gamma, Delta min(1, gamma)).

    Args:
        c0, c1: Growth constants of W >= c0 + c1 |A|^p
        alpha: Floor of W outside the well neighbourhoods
        p: Growth exponent (only validated)
        gamma: Transition-layer constant
        Delta: Assumed constant of the metastability estimate
        kappa, E, vol_omega, n: When all given, also the L1 radius
            sigma = beta Delta vol_omega^((n+1)/n), beta = kappa^(1/n) (1 - E^2)^(1/2) / 2

    Raises:
        PreconditionError: On c1, alpha, gamma or Delta <= 0, or p <= 1
    """
    for name, value in (("c1", c1), ("alpha", alpha), ("gamma", gamma), ("Delta", Delta)):
        if value <= 0:
            raise PreconditionError(f"{name} must be positive, got {value}")
    if p <= 1:
        raise PreconditionError(f"p must exceed 1, got {p}")

    K, branch = growth_constant(c0, c1, alpha)
    assert K > 0, "growth constant branches exhausted"
    delta0 = 0.5 * K * min(gamma, Delta * min(1.0, gamma))
    report = ThresholdReport(K=float(K), delta0=float(delta0), branch=branch)

    if None not in (kappa, E, vol_omega, n):
        if not 0 < kappa <= 1 or not 0 <= E < 1 or vol_omega <= 0:
            raise PreconditionError("kappa must lie in (0, 1], E in [0, 1) and vol_omega be positive")
        beta = 0.5 * kappa ** (1.0 / n) * math.sqrt(1.0 - E * E)
        report.beta = beta
        report.sigma = beta * Delta * vol_omega ** ((n + 1.0) / n)
        report.Delta_body = body_constant(Delta, kappa, E, n)
    logger.debug("threshold: K=%.6g (%s), delta0=%.6g", K, branch, delta0)
    return report
