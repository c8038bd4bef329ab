# Energy wells package
from utils.wells.densities import (
    ConstrainedDensity,
    DoubleWell2DDensity,
    EnergyDensity,
    constrained_energy,
    smoothed_double_well,
)
from utils.wells.dilatational import DilatationalDensity, DilatationalSpec, dilatational_energy
from utils.wells.hypotheses import HypothesisReport, check_hypotheses
from utils.wells.variants import (
    DilatationWell,
    MatrixSet,
    PointSet,
    UnionSet,
    Well,
    WellFamily,
    cualni_stretch,
    distance_to_well,
    orthorhombic_variant_table,
    point_group,
    set_distance,
    variants,
)

__all__ = [
    "ConstrainedDensity",
    "DilatationWell",
    "DilatationalDensity",
    "DilatationalSpec",
    "DoubleWell2DDensity",
    "EnergyDensity",
    "HypothesisReport",
    "MatrixSet",
    "PointSet",
    "UnionSet",
    "Well",
    "WellFamily",
    "check_hypotheses",
    "constrained_energy",
    "cualni_stretch",
    "dilatational_energy",
    "distance_to_well",
    "orthorhombic_variant_table",
    "point_group",
    "set_distance",
    "smoothed_double_well",
    "variants",
]
