"""
Nucleation Trials - plant a small product nucleus in the parent state and relax it
Counts trials whose relaxed energy drops below the parent energy
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from engines.compatibility import rank_one_test
from engines.relax.config import RelaxConfig
from engines.relax.descent import StepRule, descend
from engines.relax.energy import DoubleWell2D, total_energy
from engines.relax.mesh import MeshDeformation, crossed_mesh
from utils.errors import PreconditionError
from utils.linalg import dyad

logger = logging.getLogger(__name__)

# incompatible pair: rank(A2 - A1) = 2
INCOMPATIBLE_A1 = dyad([0.0, 1.0], [0.0, 1.0])
INCOMPATIBLE_A2 = dyad([1.0, 1.0], [1.0, 1.0])
# rank-one pair with normal e1
RANK_ONE_A1 = INCOMPATIBLE_A1
RANK_ONE_A2 = INCOMPATIBLE_A1 + dyad([1.0, 0.0], [1.0, 0.0])


@dataclass
class TrialResult:
    trial: int
    energy_gap: float
    lowered: bool
    stalled: bool
    diverged: bool
    steps: int
    energies: List[float] = field(default_factory=list)


@dataclass
class NucleationReport:
    """Outcome of a batch of seeded nucleation trials"""
    trials: int
    lowered_count: int
    min_energy_gap: float
    diverged_count: int
    stalled_count: int
    connected: bool
    rank: int
    tol: float
    config: RelaxConfig
    results: List[TrialResult] = field(default_factory=list)


def align_normal(A1: np.ndarray, A2: np.ndarray) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    """
    Rotate the reference frame so a rank-one normal becomes e1.

    Returns:
        (A1 Q, A2 Q, a) with A2 Q - A1 Q = a (x) e1, or the inputs and None when rank(A2 - A1) = 2
    """
    test = rank_one_test(A1, A2)
    if not test.connected or test.degenerate:
        return A1, A2, None
    n = test.n
    Q = np.array([[n[0], -n[1]], [n[1], n[0]]])
    return A1 @ Q, A2 @ Q, test.a


def nucleus_state(mesh: MeshDeformation, A1: np.ndarray, A2: np.ndarray,
                  centre: np.ndarray, radius: float) -> MeshDeformation:
    """A1 x outside, A2 (x - c) + A1 c inside the disc, linear blend over one element ring."""
    x = mesh.nodes
    h = mesh.spacing
    distance = np.linalg.norm(x - centre, axis=1)
    weight = np.clip((radius + h - distance) / h, 0.0, 1.0)
    values = x @ A1.T + weight[:, None] * ((x - centre) @ (A2 - A1).T)
    return mesh.with_values(values)


def strip_state(mesh: MeshDeformation, A1: np.ndarray, a: np.ndarray, x_lo: float, x_hi: float) -> MeshDeformation:
    """
    Laminate strip y = A1 x + a clip(x1 - x_lo, 0, x_hi - x_lo).

    With x_lo, x_hi on grid lines every element gradient is exactly A1 or A1 + a (x) e1.
    """
    if not 0.0 <= x_lo < x_hi <= 1.0:
        raise PreconditionError(f"strip [{x_lo}, {x_hi}] must lie inside [0, 1]")
    x = mesh.nodes
    s = np.clip(x[:, 0] - x_lo, 0.0, x_hi - x_lo)
    return mesh.with_values(x @ A1.T + s[:, None] * np.asarray(a, dtype=float))


def _step_rule(config: RelaxConfig) -> StepRule:
    return StepRule(initial_step=config.initial_step, armijo=config.armijo, shrink=config.shrink,
                    max_backtracks=config.max_backtracks, gtol=config.gtol)


def run_trial(W: DoubleWell2D, config: RelaxConfig, trial: int, a: Optional[np.ndarray] = None) -> TrialResult:
    """One seeded trial; the stream depends only on (seed, trial)."""
    rng = np.random.default_rng([config.seed, trial])
    mesh = crossed_mesh(config.mesh_size)
    m = config.mesh_size

    if config.initializer == "strip":
        if a is None:
            raise PreconditionError("the strip initializer needs rank-one connected wells")
        width = max(1, int(round(2.0 * config.nucleus_radius * m)))
        start = int(rng.integers(0, m - width + 1))
        state = strip_state(mesh, W.A1, a, start / m, (start + width) / m)
    else:
        h = 1.0 / m
        margin = config.nucleus_radius + h
        centre = rng.uniform(margin, 1.0 - margin, size=2)
        radius = config.nucleus_radius * rng.uniform(0.5, 1.0)
        state = nucleus_state(mesh, W.A1, W.A2, centre, radius)
        if config.noise > 0:
            state = state.with_values(state.values + config.noise * h * rng.standard_normal(state.values.shape))

    result = descend(state, W, config.descent_budget, _step_rule(config))
    # the parent state y = A1 x has energy W(A1) vol = 0
    gap = result.energy if not result.diverged else float("nan")
    lowered = bool(np.isfinite(gap) and gap < -config.tolerance(mesh.volume))
    return TrialResult(trial=trial, energy_gap=gap, lowered=lowered, stalled=result.stalled,
                       diverged=result.diverged, steps=result.steps, energies=result.energies)


def _run_trial_args(args) -> TrialResult:
    return run_trial(*args)


def nucleation_trial(W: DoubleWell2D, nucleus_radius: Optional[float] = None, mesh_size: Optional[int] = None,
                     trials: Optional[int] = None, seed: Optional[int] = None, descent_budget: Optional[int] = None,
                     config: Optional[RelaxConfig] = None) -> NucleationReport:
    """
    Seeded nucleation experiment.

    Explicit arguments override the matching RelaxConfig fields. With
    ``workers > 1`` trials run in a process pool; results equal the serial run.

    Returns:
        NucleationReport with the count of trials ending below -tol and the smallest gap
    """
    overrides = {key: value for key, value in dict(
        nucleus_radius=nucleus_radius, mesh_size=mesh_size, trials=trials, seed=seed,
        descent_budget=descent_budget).items() if value is not None}
    config = RelaxConfig.merged({**(config.to_dict() if config else {}), **overrides})

    A1, A2, a = align_normal(W.A1, W.A2)
    rank = rank_one_test(W.A1, W.A2).rank
    if a is not None:
        W = DoubleWell2D(A1, A2, W.delta, W.smoothing, W.exponent)

    jobs = [(W, config, trial, a) for trial in range(config.trials)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_trial_args, jobs))
    else:
        results = [run_trial(*job) for job in jobs]

    finite = [r.energy_gap for r in results if np.isfinite(r.energy_gap)]
    report = NucleationReport(
        trials=config.trials,
        lowered_count=sum(r.lowered for r in results),
        min_energy_gap=min(finite) if finite else float("nan"),
        diverged_count=sum(r.diverged for r in results),
        stalled_count=sum(r.stalled for r in results),
        connected=a is not None,
        rank=rank,
        tol=config.tolerance(crossed_mesh(config.mesh_size).volume),
        config=config,
        results=results,
    )
    logger.info("%s %d of %d trials lowered the energy (min gap %.3e)",
                "⚠️" if report.lowered_count else "✅", report.lowered_count, report.trials, report.min_energy_gap)
    return report


def parent_energy(W: DoubleWell2D, mesh_size: int) -> float:
    """Energy of the homogeneous parent state on the crossed mesh."""
    mesh = crossed_mesh(mesh_size)
    return total_energy(mesh.affine(W.A1), W)
