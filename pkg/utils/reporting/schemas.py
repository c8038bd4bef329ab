"""
Report Schemas - versioned pydantic models for every JSON artifact
"""

import math
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "1.0"

Matrix = List[List[float]]
Vector = List[float]


def matrix(values) -> Matrix:
    return np.asarray(values, dtype=float).tolist()


def vector(values) -> Vector:
    return np.asarray(values, dtype=float).ravel().tolist()


def finite(value: float) -> Optional[float]:
    """JSON has no inf/nan; non-finite values are reported as null."""
    value = float(value)
    return value if math.isfinite(value) else None


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: str = SCHEMA_VERSION


class AlloyInfo(BaseModel):
    name: str
    preset: Optional[str] = None
    group: str
    U1: Matrix
    orientation: str


class VariantsReport(Report):
    alloy: AlloyInfo
    count: int
    variants: List[Matrix]


class Lambda2Report(Report):
    alloy: AlloyInfo
    eigenvalues: Vector
    lambda2: float
    gap: float
    compatible: bool
    classification: str
    two_well_incompatibility: str


class TwinEntry(BaseModel):
    R: Matrix
    a: Vector
    n: Vector
    residual: float


class TwinReport(Report):
    alloy: AlloyInfo
    tau: float
    F: Matrix
    U: Matrix
    solutions: List[TwinEntry]


class HabitEntry(BaseModel):
    lam: float
    b: Vector
    m: Vector
    residual: float


class HabitPairEntry(BaseModel):
    i: int
    j: int
    a: Vector
    n: Vector
    solutions: List[HabitEntry]


class HabitReport(Report):
    alloy: AlloyInfo
    pairs: List[HabitPairEntry]
    habit_count: int


class LaminateEntry(BaseModel):
    tau1: float
    xi: float
    energy_gap: float
    l1_distance: float
    l1_constant: float
    slab_volume: float


class HysteresisReport(Report):
    alloy: AlloyInfo
    tau_plus: float
    schmid_residual: float
    B: Matrix
    a: Vector
    n: Vector
    partner_energies: Vector
    partner_gap: Optional[float] = None
    sigma1: float
    f0: float
    c2: float
    epsilon: float
    tau_max: float
    swapped: bool
    laminates: List[LaminateEntry] = Field(default_factory=list)


class RadialReport(Report):
    lam: float
    mu: float
    n: int
    k_star: float
    rho_min: float
    gamma_upper: float
    degenerate: bool


class GammaReport(Report):
    gamma0: float
    dimension: int
    inner_radius: float
    outer_radius: float
    body_volume: float
    vol_omega: float
    eccentricity: float
    gamma: float


class ThresholdReportModel(Report):
    c0: float
    c1: float
    alpha: float
    p: float
    gamma: float
    Delta: float
    K: float
    branch: str
    delta0: float
    sigma: Optional[float] = None
    beta: Optional[float] = None
    Delta_body: Optional[float] = None


class RoomsReport(Report):
    J: int
    j: int
    p: float
    h: float
    l: float
    d: float
    layer_energy: float
    nucleus_volume: float
    ratio: float
    target: Optional[float] = None
    target_scale: Optional[float] = None


class NooneReport(Report):
    delta: float
    layer_gradient_energy: float
    layer_measure: float
    min_phase_volume: float
    interface_jump: float


class L1Entry(BaseModel):
    j: int
    l1_norm: float
    strip_measure: float
    bound: float
    gradient_residual: float


class L1SequenceReport(Report):
    A: Matrix
    B: Matrix
    constant: float
    sequence: List[L1Entry]


class RelaxRegime(BaseModel):
    mesh_size: int
    nucleus_radius: float
    initializer: str
    smoothing: float
    exponent: float
    descent_budget: int
    seed: int
    tol: float


class RelaxReport(Report):
    wells: Dict[str, Matrix]
    delta: float
    trials: int
    lowered_count: int
    min_energy_gap: Optional[float] = None
    diverged_count: int
    stalled_count: int
    connected: bool
    rank: int
    regime: RelaxRegime


class CurveEntry(BaseModel):
    sigma1: float
    f: float
    rank_gap: float


class FullReport(Report):
    alloy: AlloyInfo
    variants: VariantsReport
    lambda2: Lambda2Report
    habit: Optional[HabitReport] = None
    curve: Optional[List[CurveEntry]] = None
    hysteresis: Optional[HysteresisReport] = None
    skipped: Dict[str, str] = Field(default_factory=dict)


REPORT_MODELS = {
    "variants": VariantsReport,
    "lambda2": Lambda2Report,
    "twin": TwinReport,
    "habit": HabitReport,
    "hysteresis": HysteresisReport,
    "radial": RadialReport,
    "gamma": GammaReport,
    "threshold": ThresholdReportModel,
    "rooms": RoomsReport,
    "noone": NooneReport,
    "l1seq": L1SequenceReport,
    "relax": RelaxReport,
    "report": FullReport,
}
