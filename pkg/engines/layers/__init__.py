# Transition layer package
from engines.layers.geometry import ConvexBody, ball_volume, eccentricity, gamma_lower_bound
from engines.layers.radial import (
    LayerProfile,
    RadialLayer,
    bvp_profile,
    gamma_upper,
    optimal_width,
    radial_layer,
    radial_sweep,
    rho,
    rho_min,
    rho_quadrature,
)
from engines.layers.threshold import ThresholdReport, body_constant, growth_constant, metastability_threshold

__all__ = [
    "ConvexBody",
    "LayerProfile",
    "RadialLayer",
    "ThresholdReport",
    "ball_volume",
    "body_constant",
    "bvp_profile",
    "eccentricity",
    "gamma_lower_bound",
    "gamma_upper",
    "growth_constant",
    "metastability_threshold",
    "optimal_width",
    "radial_layer",
    "radial_sweep",
    "rho",
    "rho_min",
    "rho_quadrature",
]
