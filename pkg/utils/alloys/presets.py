"""
Alloy Presets - named alloy documents resolvable from a spec's ``preset`` field
"""

from typing import Dict, List

from omegaconf import DictConfig, OmegaConf

from utils.errors import AlloySpecError

# Orthorhombic CuAlNi: six variants under the cubic group, biaxial dead load in
# the (e1, e2) plane. The generic specimen orientation Rx(5 deg) Rz(-20 deg)
# keeps the two loaded variants from being mirror images of each other.
CUALNI = {
    "name": "CuAlNi",
    "lattice": {"alpha": 1.0619, "beta": 0.9178, "gamma": 1.0230},
    "group": "cubic",
    "orientation": {"kind": "euler", "sequence": "XZ", "angles": [5.0, -20.0], "degrees": True},
    "load": {"sigma1": 1.0, "sigma1_grid": [0.5, 2.0, 16], "tau_max": 1.0},
}

# Terephthalic acid Form I -> Form II: single transformation stretch, identity well as parent.
TEREPHTHALIC = {
    "name": "terephthalic acid",
    "U1": [
        [0.970, 0.038, -0.121],
        [0.038, 0.835, -0.017],
        [-0.121, -0.017, 1.298],
    ],
    "group": "identity",
}

PRESETS: Dict[str, dict] = {
    "cualni": CUALNI,
    "terephthalic": TEREPHTHALIC,
}


def available_presets() -> List[str]:
    return sorted(PRESETS)


def preset_document(name: str) -> DictConfig:
    """
    OmegaConf document of a named preset.

    Raises:
        AlloySpecError: If no preset has that name
    """
    key = name.strip().lower()
    if key not in PRESETS:
        raise AlloySpecError(f"unknown preset '{name}', expected one of {available_presets()}", field_path="preset")
    return OmegaConf.create(PRESETS[key])
