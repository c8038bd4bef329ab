"""
Relax Configuration - defaults of the nucleation experiment, overridable from a YAML document
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from utils.errors import AlloySpecError, PreconditionError


@dataclass
class RelaxConfig:
    # Mesh
    mesh_size: int = 64

    # Energy density
    smoothing: float = 1e-2
    exponent: float = 2.0
    delta: float = 0.01

    # Nucleation experiment
    nucleus_radius: float = 1.0 / 16.0
    trials: int = 1000
    seed: int = 0
    noise: float = 1e-3
    initializer: str = "nucleus"
    workers: int = 1

    # Descent
    descent_budget: int = 200
    initial_step: float = 0.5
    armijo: float = 1e-4
    shrink: float = 0.5
    max_backtracks: int = 40
    gtol: float = 1e-12

    # Verdict tolerance, multiplied by the domain volume
    tol_factor: float = 1e-9

    def __post_init__(self):
        if self.mesh_size < 2:
            raise PreconditionError(f"mesh_size must be at least 2, got {self.mesh_size}")
        if not 0 < self.nucleus_radius < 0.25:
            raise PreconditionError(f"nucleus_radius must lie in (0, 1/4), got {self.nucleus_radius}")
        if self.initializer not in ("nucleus", "strip"):
            raise PreconditionError(f"unknown initializer '{self.initializer}'")
        if self.delta < 0:
            raise PreconditionError(f"delta must be nonnegative, got {self.delta}")

    def tolerance(self, volume: float) -> float:
        """Energy below -tolerance counts as a lower state on a domain of this volume."""
        return self.tol_factor * volume

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def merged(cls, overrides: Optional[Dict[str, Any]] = None) -> "RelaxConfig":
        """Defaults merged with user overrides, type-checked by OmegaConf."""
        base = OmegaConf.structured(cls)
        try:
            merged = OmegaConf.merge(base, OmegaConf.create(overrides or {}))
            return OmegaConf.to_object(merged)
        except OmegaConfBaseException as e:
            raise AlloySpecError(str(e).splitlines()[0], field_path=getattr(e, "full_key", None)) from e
