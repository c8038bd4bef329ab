# Linear algebra kernels package
from utils.linalg.kernels import (
    EigenSystem,
    TraceMaximum,
    as_matrix,
    axis_rotation,
    dyad,
    max_trace_rotation,
    nearest_rotation,
    random_rotations,
    rotation,
    rotation_from_vector,
    signed_svd,
    stretch,
    sym_eigen,
)

__all__ = [
    "EigenSystem",
    "TraceMaximum",
    "as_matrix",
    "axis_rotation",
    "dyad",
    "max_trace_rotation",
    "nearest_rotation",
    "random_rotations",
    "rotation",
    "rotation_from_vector",
    "signed_svd",
    "stretch",
    "sym_eigen",
]
