# Rank-one compatibility package
from engines.compatibility.habit import HabitSolution, TwinPair, habit_solutions, twin_pairs, volume_fraction_roots
from engines.compatibility.twinning import (
    MiddleEigenvalueReport,
    RankOneResult,
    TwinSolution,
    middle_eigenvalue_gap,
    rank_one_connections,
    rank_one_test,
    twin_solutions,
)

__all__ = [
    "HabitSolution",
    "MiddleEigenvalueReport",
    "RankOneResult",
    "TwinPair",
    "TwinSolution",
    "habit_solutions",
    "middle_eigenvalue_gap",
    "rank_one_connections",
    "rank_one_test",
    "twin_pairs",
    "twin_solutions",
    "volume_fraction_roots",
]
