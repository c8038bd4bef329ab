# Biaxial dead-load package
from engines.deadload.curve import (
    EqualEnergyCurve,
    equal_energy_crossing,
    equal_energy_curve,
    well_energy_gap,
)
from engines.deadload.hysteresis import (
    DeadLoadProblem,
    HysteresisBound,
    LaminateCounterexample,
    clipped_box,
    hysteresis_bound,
    laminate_counterexample,
)
from engines.deadload.loading import (
    BiaxialLoad,
    LoadFamily,
    Orientation,
    WellMinimum,
    load_tensor,
    well_minimizer,
)

__all__ = [
    "BiaxialLoad",
    "DeadLoadProblem",
    "EqualEnergyCurve",
    "HysteresisBound",
    "LaminateCounterexample",
    "LoadFamily",
    "Orientation",
    "WellMinimum",
    "clipped_box",
    "equal_energy_crossing",
    "equal_energy_curve",
    "hysteresis_bound",
    "laminate_counterexample",
    "load_tensor",
    "well_energy_gap",
    "well_minimizer",
]
