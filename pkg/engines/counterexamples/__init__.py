# Counterexample constructions package
from engines.counterexamples.l1_sequence import (
    L1Sequence,
    complex_step_gradient,
    deformation,
    l1_sequence,
    strip_gradient,
    strip_kink,
)
from engines.counterexamples.noone import ZeroGradientLayer, zero_gradient_layer
from engines.counterexamples.rooms import RoomsPassages, RoomsRatio, rooms_ratio, rooms_sweep, thickness_for_ratio

__all__ = [
    "L1Sequence",
    "RoomsPassages",
    "RoomsRatio",
    "ZeroGradientLayer",
    "complex_step_gradient",
    "deformation",
    "l1_sequence",
    "rooms_ratio",
    "rooms_sweep",
    "strip_gradient",
    "strip_kink",
    "thickness_for_ratio",
    "zero_gradient_layer",
]
