# Relaxation experiment package
from engines.relax.config import RelaxConfig
from engines.relax.descent import DescentResult, StepRule, descend
from engines.relax.energy import DoubleWell2D, energy_and_gradient, total_energy
from engines.relax.mesh import MeshDeformation, crossed_mesh
from engines.relax.nucleation import (
    INCOMPATIBLE_A1,
    INCOMPATIBLE_A2,
    RANK_ONE_A1,
    RANK_ONE_A2,
    NucleationReport,
    TrialResult,
    align_normal,
    nucleation_trial,
    nucleus_state,
    parent_energy,
    run_trial,
    strip_state,
)

__all__ = [
    "DescentResult",
    "DoubleWell2D",
    "INCOMPATIBLE_A1",
    "INCOMPATIBLE_A2",
    "MeshDeformation",
    "NucleationReport",
    "RANK_ONE_A1",
    "RANK_ONE_A2",
    "RelaxConfig",
    "StepRule",
    "TrialResult",
    "align_normal",
    "crossed_mesh",
    "descend",
    "energy_and_gradient",
    "nucleation_trial",
    "nucleus_state",
    "parent_energy",
    "run_trial",
    "strip_state",
    "total_energy",
]
