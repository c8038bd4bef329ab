"""
L1 Splitting Sequence - y_j interpolating Ax and Bx across the strip 0 < x1 < 1/j in [-1, 1]^n
Gradients stay bounded in L1 while the strip shrinks
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from utils.errors import PreconditionError
from utils.linalg import as_matrix

logger = logging.getLogger(__name__)

GAUSS_POINTS = 24
COMPLEX_STEP = 1e-30
QUAD_RTOL = 1e-10
MAX_QUAD_POINTS = 500_000
KINK_TOL = 1e-12


@dataclass
class L1Sequence:
    """Member j of the splitting sequence for the matrices A, B"""
    A: np.ndarray
    B: np.ndarray
    j: int
    l1_norm: float
    strip_measure: float
    bound: float
    gradient_residual: float
    quadrature_error: float = 0.0

    @property
    def dimension(self) -> int:
        return self.A.shape[0]


def deformation(A: np.ndarray, B: np.ndarray, j: int, x: np.ndarray) -> np.ndarray:
    """y_j(x) = Ax for x1 <= 0, Ax + j x1 (B - A) x in the strip, Bx for x1 >= 1/j."""
    x = np.atleast_2d(x)
    x1 = np.real(x[:, 0])
    weight = np.where(x1 <= 0, 0.0, np.where(x1 >= 1.0 / j, 1.0, j * x[:, 0]))
    return x @ A.T + weight[:, None] * (x @ (B - A).T)


def strip_gradient(A: np.ndarray, B: np.ndarray, j: int, x: np.ndarray) -> np.ndarray:
    """j x1 B + (1 - j x1) A + j (B - A) x (x) e1 at points of the strip."""
    x = np.atleast_2d(x)
    s = j * x[:, 0]
    G = s[:, None, None] * B + (1.0 - s)[:, None, None] * A
    G[:, :, 0] += j * (x @ (B - A).T)
    return G


def complex_step_gradient(A: np.ndarray, B: np.ndarray, j: int, x: np.ndarray) -> np.ndarray:
    """Dy_j by complex-step differentiation, exact to rounding for the polynomial strip branch."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n = x.shape[1]
    G = np.empty((len(x), n, n))
    for k in range(n):
        shifted = x.astype(complex)
        shifted[:, k] += 1j * COMPLEX_STEP
        G[:, :, k] = np.imag(deformation(A, B, j, shifted)) / COMPLEX_STEP
    return G


def strip_kink(A: np.ndarray, B: np.ndarray, j: int) -> Optional[np.ndarray]:
    """The point of the strip where the affine gradient Dy_j vanishes, if there is one."""
    n = A.shape[0]
    D = B - A
    columns = []
    for k in range(n):
        dG = j * np.outer(D[:, k], np.eye(n)[0])
        if k == 0:
            dG = dG + j * D
        columns.append(dG.ravel())
    M = np.stack(columns, axis=1)
    x, *_ = np.linalg.lstsq(M, -A.ravel(), rcond=None)
    if np.linalg.norm(M @ x + A.ravel()) > KINK_TOL * (np.linalg.norm(A) + np.linalg.norm(B)):
        return None
    if not (0.0 < x[0] < 1.0 / j and np.all(np.abs(x[1:]) < 1.0)):
        return None
    return x


def _panel_rule(low: float, high: float, panels: int, cut: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    edges = np.linspace(low, high, panels + 1)
    if cut is not None:
        edges = np.union1d(edges, [cut])
    half = 0.5 * np.diff(edges)
    centre = 0.5 * (edges[:-1] + edges[1:])
    return (centre[:, None] + half[:, None] * nodes).ravel(), (half[:, None] * weights).ravel()


def _strip_rule(A: np.ndarray, B: np.ndarray, j: int, panels: int, kink: Optional[np.ndarray]) -> float:
    n = A.shape[0]
    cut = (lambda k: None) if kink is None else (lambda k: float(kink[k]))
    rules = [_panel_rule(0.0, 1.0 / j, panels, cut(0))]
    rules += [_panel_rule(-1.0, 1.0, panels, cut(k)) for k in range(1, n)]
    axes = np.meshgrid(*[points for points, _ in rules], indexing="ij")
    weights = np.meshgrid(*[w for _, w in rules], indexing="ij")
    points = np.stack([axis.ravel() for axis in axes], axis=1)
    w = np.prod(np.stack([weight.ravel() for weight in weights], axis=1), axis=1)
    G = strip_gradient(A, B, j, points)
    return float(np.sum(w * np.sqrt(np.sum(G * G, axis=(1, 2)))))


def _strip_l1(A: np.ndarray, B: np.ndarray, j: int) -> Tuple[float, float]:
    """
    L1 norm of Dy_j over the strip by composite Gauss-Legendre panels.

    |Dy_j| has a kink where the affine strip gradient vanishes; panel edges
    pass through that point and panels are doubled until two rules agree to
    QUAD_RTOL or the point budget is spent.

    Returns:
        (value, difference between the last two rules)
    """
    n = A.shape[0]
    kink = strip_kink(A, B, j)
    if kink is not None:
        logger.debug("Dy_%d vanishes at %s, splitting panels there", j, np.array2string(kink, precision=6))
    panels = 1
    value = _strip_rule(A, B, j, panels, kink)
    change = math.inf
    while (GAUSS_POINTS * (2 * panels + 1)) ** n <= MAX_QUAD_POINTS:
        panels *= 2
        refined = _strip_rule(A, B, j, panels, kink)
        change = abs(refined - value)
        value = refined
        if change <= QUAD_RTOL * max(1.0, abs(value)):
            return value, change
    logger.warning("⚠️ strip L1 quadrature for j=%d stopped at %d panels (last change %.3e)", j, panels, change)
    return value, change


def l1_sequence(A: np.ndarray, B: np.ndarray, j: int, samples: int = 1000, seed: int = 0) -> L1Sequence:
    """
    L1 accounting of y_j on [-1, 1]^n.

    Args:
        A, B: Square matrices of the same size n
        j: Sequence index (>= 1)
        samples: Random strip points for the gradient check
        seed: Seed of the sampling

    Returns:
        L1Sequence with the quadrature L1 norm of Dy_j, the strip measure 2^(n-1)/j,
        the uniform bound 2^(n-1)(|A| + |B| + max(|A|, |B|) + sqrt(n)|B - A|) and the
        largest deviation of the displayed gradient from complex-step derivatives,
        plus the last change of the adaptive strip quadrature
    """
    if j < 1:
        raise PreconditionError(f"j must be at least 1, got {j}")
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise PreconditionError("A and B must have the same shape")
    n = A.shape[0]
    norm_A, norm_B = float(np.linalg.norm(A)), float(np.linalg.norm(B))

    face = 2.0 ** (n - 1)
    outside = face * (norm_A + norm_B * (1.0 - 1.0 / j))
    strip, quadrature_error = _strip_l1(A, B, j)
    l1 = outside + strip
    bound = face * (norm_A + norm_B + max(norm_A, norm_B) + math.sqrt(n) * float(np.linalg.norm(B - A)))

    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(samples, n))
    # keep samples strictly inside the strip so the branch does not switch under the step
    x[:, 0] = rng.uniform(0.01, 0.99, size=samples) / j
    residual = float(np.abs(strip_gradient(A, B, j, x) - complex_step_gradient(A, B, j, x)).max())

    logger.debug("l1 sequence j=%d: |Dy|_1 = %.10g (bound %.6g)", j, l1, bound)
    return L1Sequence(A=A, B=B, j=j, l1_norm=l1, strip_measure=face / j, bound=bound, gradient_residual=residual,
                      quadrature_error=quadrature_error)
