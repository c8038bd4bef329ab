"""
Alloy Spec Parser - YAML alloy documents validated against a structured OmegaConf schema
Resolves presets, lattice parameters and specimen orientation into an AlloySpec
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException

from engines.deadload.loading import Orientation
from utils.alloys.presets import preset_document
from utils.errors import AlloySpecError, MartensiteError, PreconditionError
from utils.linalg import as_matrix, stretch
from utils.wells import WellFamily, cualni_stretch, orthorhombic_variant_table, variants

logger = logging.getLogger(__name__)

SPEC_VERSION = 1
STRETCH_FIELDS = ("U1", "lattice")


@dataclass
class LatticeSchema:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0


@dataclass
class OrientationSchema:
    kind: str = "aligned"
    sequence: str = "XZ"
    angles: List[float] = field(default_factory=list)
    degrees: bool = True
    matrix: Optional[List[Any]] = None


@dataclass
class LoadSchema:
    # dimensionless multiples of stress_scale
    sigma1: float = 1.0
    sigma1_grid: List[float] = field(default_factory=lambda: [0.5, 2.0, 16.0])
    c2: Optional[float] = None
    tau_max: float = 1.0
    stress_scale: float = 1.0


@dataclass
class AlloySchema:
    version: int = SPEC_VERSION
    name: str = "unnamed"
    preset: Optional[str] = None
    U1: Optional[List[Any]] = None
    U2: Optional[List[Any]] = None
    lattice: Optional[LatticeSchema] = None
    group: str = "identity"
    orientation: OrientationSchema = field(default_factory=OrientationSchema)
    load: Optional[LoadSchema] = None


@dataclass
class AlloySpec:
    """Validated alloy: parent stretch, symmetry group, orientation and optional load"""
    name: str
    U1: np.ndarray
    group: str
    orientation: Orientation
    U2: Optional[np.ndarray] = None
    lattice: Optional[Tuple[float, float, float]] = None
    load: Optional[LoadSchema] = None
    preset: Optional[str] = None
    version: int = SPEC_VERSION

    def family(self) -> WellFamily:
        return variants(self.U1, self.group)

    def product(self) -> np.ndarray:
        """
        Product variant U2: explicit entries, else the second orthorhombic
        variant for lattice documents, else the second variant of the family.

        Raises:
            PreconditionError: If the family has a single variant and no U2 was given
        """
        if self.U2 is not None:
            return self.U2
        family = self.family()
        if len(family) < 2:
            raise PreconditionError(f"'{self.name}' has a single variant; give U2 explicitly")
        return family[1].stretch

    def sigma1_grid(self) -> np.ndarray:
        lo, hi, count = self.require_load().sigma1_grid
        return np.linspace(float(lo), float(hi), int(count))

    def require_load(self) -> LoadSchema:
        if self.load is None:
            raise AlloySpecError("this analysis needs a load section", field_path="load")
        return self.load

    def with_orientation(self, orientation: Orientation) -> "AlloySpec":
        return AlloySpec(self.name, self.U1, self.group, orientation, self.U2, self.lattice,
                         self.load, self.preset, self.version)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "preset": self.preset,
            "group": self.group,
            "U1": self.U1.tolist(),
            "orientation": self.orientation.label,
        }


def _matrix_field(entries: Any, path: str) -> np.ndarray:
    try:
        return stretch(as_matrix(entries, shape=(3, 3)))
    except PreconditionError as e:
        raise AlloySpecError(str(e), field_path=path) from e


def _orientation(schema: OrientationSchema) -> Orientation:
    kind = schema.kind.lower()
    try:
        if kind == "aligned":
            return Orientation.aligned()
        if kind == "euler":
            if not schema.angles:
                raise AlloySpecError("euler orientation needs angles", field_path="orientation.angles")
            return Orientation.from_euler(schema.sequence, list(schema.angles), schema.degrees)
        if kind == "matrix":
            if schema.matrix is None:
                raise AlloySpecError("matrix orientation needs matrix entries", field_path="orientation.matrix")
            return Orientation(as_matrix(schema.matrix, shape=(3, 3)), label="matrix")
    except PreconditionError as e:
        raise AlloySpecError(str(e), field_path="orientation") from e
    raise AlloySpecError(f"unknown orientation kind '{schema.kind}', expected aligned, euler or matrix",
                         field_path="orientation.kind")


def _load_document(text: str) -> DictConfig:
    try:
        document = OmegaConf.create(text)
    except Exception as e:
        raise AlloySpecError(f"malformed document: {e}") from e
    if not isinstance(document, DictConfig):
        raise AlloySpecError("alloy document must be a mapping")
    return document


def _with_preset(document: DictConfig) -> DictConfig:
    name = document.get("preset")
    if name is None:
        return document
    base = OmegaConf.to_container(preset_document(str(name)))
    # the document's own stretch replaces the preset's
    if any(key in document for key in STRETCH_FIELDS):
        for key in STRETCH_FIELDS:
            base.pop(key, None)
    return OmegaConf.merge(OmegaConf.create(base), document)


def parse_alloy_spec(text: str) -> AlloySpec:
    """
    Parse and validate an alloy document.

    Args:
        text: YAML document with ``version``, ``name`` and exactly one of ``U1`` or ``lattice``

    Returns:
        Validated AlloySpec

    Raises:
        AlloySpecError: On malformed or conflicting fields, with the field path
    """
    document = _load_document(text)
    if "U1" in document and "lattice" in document:
        raise AlloySpecError("U1 and lattice are mutually exclusive", field_path="U1")
    document = _with_preset(document)

    try:
        merged = OmegaConf.merge(OmegaConf.structured(AlloySchema), document)
        schema: AlloySchema = OmegaConf.to_object(merged)
    except OmegaConfBaseException as e:
        raise AlloySpecError(str(e).splitlines()[0], field_path=getattr(e, "full_key", None)) from e

    if schema.version != SPEC_VERSION:
        raise AlloySpecError(f"unsupported version {schema.version}, expected {SPEC_VERSION}", field_path="version")
    if (schema.U1 is None) == (schema.lattice is None):
        raise AlloySpecError("exactly one of U1 or lattice is required", field_path="U1")

    lattice = None
    U2 = _matrix_field(schema.U2, "U2") if schema.U2 is not None else None
    if schema.lattice is not None:
        lattice = (schema.lattice.alpha, schema.lattice.beta, schema.lattice.gamma)
        if min(lattice) <= 0:
            raise AlloySpecError("lattice parameters must be positive", field_path="lattice")
        U1 = cualni_stretch(*lattice)
        if U2 is None:
            U2 = orthorhombic_variant_table(*lattice)[1]
    else:
        U1 = _matrix_field(schema.U1, "U1")

    try:
        variants(U1, schema.group)
    except MartensiteError as e:
        raise AlloySpecError(str(e), field_path="group") from e

    if schema.load is not None:
        grid = schema.load.sigma1_grid
        if len(grid) != 3 or grid[0] <= 0 or grid[1] < grid[0] or int(grid[2]) < 1:
            raise AlloySpecError("sigma1_grid must be [lo, hi, count] with 0 < lo <= hi",
                                 field_path="load.sigma1_grid")
        if schema.load.sigma1 <= 0 or schema.load.stress_scale <= 0:
            raise AlloySpecError("sigma1 and stress_scale must be positive", field_path="load")

    spec = AlloySpec(
        name=schema.name, U1=U1, group=schema.group, orientation=_orientation(schema.orientation),
        U2=U2, lattice=lattice, load=schema.load, preset=schema.preset, version=schema.version,
    )
    logger.debug("parsed alloy '%s' (%s group, %s orientation)", spec.name, spec.group, spec.orientation.label)
    return spec


def load_alloy_spec(path: str) -> AlloySpec:
    file_path = Path(path)
    if not file_path.is_file():
        raise AlloySpecError(f"alloy spec file not found: {path}")
    return parse_alloy_spec(file_path.read_text(encoding="utf-8"))


def resolve_alloy(preset: Optional[str] = None, spec_path: Optional[str] = None) -> AlloySpec:
    """Alloy from a spec file, a preset name, or a spec file with its preset overridden."""
    if spec_path:
        if not preset:
            return load_alloy_spec(spec_path)
        file_path = Path(spec_path)
        if not file_path.is_file():
            raise AlloySpecError(f"alloy spec file not found: {spec_path}")
        document = _load_document(file_path.read_text(encoding="utf-8"))
        document.preset = preset
        return parse_alloy_spec(OmegaConf.to_yaml(document))
    if preset:
        return parse_alloy_spec(f"preset: {preset}\n")
    raise AlloySpecError("give --preset or --spec")
