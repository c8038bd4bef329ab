"""
Steepest Descent - monotone energy relaxation with Armijo backtracking
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from engines.relax.energy import DoubleWell2D, energy_and_gradient
from engines.relax.mesh import MeshDeformation

logger = logging.getLogger(__name__)


@dataclass
class StepRule:
    initial_step: float = 0.5
    armijo: float = 1e-4
    shrink: float = 0.5
    grow: float = 2.0
    max_backtracks: int = 40
    gtol: float = 1e-12


@dataclass
class DescentResult:
    mesh: MeshDeformation
    energies: List[float] = field(default_factory=list)
    steps: int = 0
    stalled: bool = False
    diverged: bool = False
    converged: bool = False

    @property
    def energy(self) -> float:
        return self.energies[-1]


def descend(mesh: MeshDeformation, W: DoubleWell2D, steps: int,
            step_rule: Optional[StepRule] = None) -> DescentResult:
    """
    Steepest descent on the nodal values with Armijo backtracking.

    The energy sequence is nonincreasing. A line search that fails after
    ``max_backtracks`` halvings stops with ``stalled`` set; a non-finite
    energy stops with ``diverged`` set. Both return the last accepted state.
    """
    rule = step_rule or StepRule()
    values = mesh.values.copy()
    energy, gradient = energy_and_gradient(mesh, W, values)
    result = DescentResult(mesh=mesh, energies=[energy])
    if not np.isfinite(energy):
        result.diverged = True
        return result

    step = rule.initial_step
    for iteration in range(steps):
        slope = float(np.sum(gradient * gradient))
        if np.sqrt(slope) <= rule.gtol:
            result.converged = True
            break

        accepted = False
        for _ in range(rule.max_backtracks):
            trial = values - step * gradient
            trial_energy, trial_gradient = energy_and_gradient(mesh, W, trial)
            if not np.isfinite(trial_energy):
                result.diverged = True
                logger.warning("⚠️ energy became non-finite at step %d", iteration)
                break
            if trial_energy <= energy - rule.armijo * step * slope:
                accepted = True
                break
            step *= rule.shrink
        if result.diverged:
            break
        if not accepted:
            result.stalled = True
            break

        values, energy, gradient = trial, trial_energy, trial_gradient
        result.energies.append(energy)
        result.steps = iteration + 1
        step *= rule.grow

    result.mesh = mesh.with_values(values)
    return result
