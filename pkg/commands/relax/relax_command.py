"""
Relax Command - seeded nucleation trials on the crossed finite-element mesh
"""

import argparse
import logging
from pathlib import Path
from typing import Any, Dict

from omegaconf import OmegaConf

from commands.base.base_command import BaseCommand, parse_matrix
from engines.relax import (
    INCOMPATIBLE_A1,
    INCOMPATIBLE_A2,
    RANK_ONE_A1,
    RANK_ONE_A2,
    DoubleWell2D,
    NucleationReport,
    RelaxConfig,
    nucleation_trial,
)
from utils.errors import AlloySpecError
from utils.reporting import write_csv
from utils.reporting.schemas import RelaxRegime, RelaxReport, finite, matrix

logger = logging.getLogger(__name__)

WELL_PAIRS = {
    "incompatible": (INCOMPATIBLE_A1, INCOMPATIBLE_A2),
    "rank-one": (RANK_ONE_A1, RANK_ONE_A2),
}

# CLI flag -> RelaxConfig field
CONFIG_FLAGS = {
    "mesh_size": "mesh_size",
    "trials": "trials",
    "seed": "seed",
    "nucleus_radius": "nucleus_radius",
    "descent_budget": "descent_budget",
    "initializer": "initializer",
    "workers": "workers",
    "delta": "delta",
}


def relax_config(args: argparse.Namespace) -> RelaxConfig:
    """Defaults, then the --config document, then explicit flags."""
    overrides: Dict[str, Any] = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise AlloySpecError(f"relax config not found: {args.config}")
        overrides.update(OmegaConf.to_container(OmegaConf.load(path)))
    for flag, key in CONFIG_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            overrides[key] = value
    return RelaxConfig.merged(overrides)


def relax_report(W: DoubleWell2D, result: NucleationReport) -> RelaxReport:
    config = result.config
    return RelaxReport(
        wells={"A1": matrix(W.A1), "A2": matrix(W.A2)}, delta=W.delta, trials=result.trials,
        lowered_count=result.lowered_count, min_energy_gap=finite(result.min_energy_gap),
        diverged_count=result.diverged_count, stalled_count=result.stalled_count,
        connected=result.connected, rank=result.rank,
        regime=RelaxRegime(
            mesh_size=config.mesh_size, nucleus_radius=config.nucleus_radius, initializer=config.initializer,
            smoothing=config.smoothing, exponent=config.exponent, descent_budget=config.descent_budget,
            seed=config.seed, tol=result.tol,
        ),
    )


class RelaxCommand(BaseCommand):
    NAME = "relax"
    HELP = "nucleation trials probing metastability of a two-well energy"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--wells", choices=sorted(WELL_PAIRS), default="incompatible")
        parser.add_argument("--A1", default=None, help="override the first well 'a,b;c,d'")
        parser.add_argument("--A2", default=None, help="override the second well")
        parser.add_argument("--config", default=None, help="YAML document with RelaxConfig overrides")
        parser.add_argument("--delta", type=float, default=None)
        parser.add_argument("--mesh-size", type=int, default=None)
        parser.add_argument("--trials", type=int, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--nucleus-radius", type=float, default=None)
        parser.add_argument("--descent-budget", type=int, default=None)
        parser.add_argument("--initializer", choices=["nucleus", "strip"], default=None)
        parser.add_argument("--workers", type=int, default=None, help="process pool size for trials")
        parser.add_argument("--traces", default=None, help="CSV file for per-trial energy traces")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        config = relax_config(args)
        A1, A2 = WELL_PAIRS[args.wells]
        if args.A1:
            A1 = parse_matrix(args.A1)
        if args.A2:
            A2 = parse_matrix(args.A2)
        W = DoubleWell2D(A1, A2, delta=config.delta, smoothing=config.smoothing, exponent=config.exponent)

        result = nucleation_trial(W, config=config)
        if result.diverged_count:
            logger.warning("⚠️ %d trials diverged and were aborted", result.diverged_count)
        if args.traces:
            rows = ((r.trial, step, energy) for r in result.results for step, energy in enumerate(r.energies))
            write_csv(("trial", "step", "energy"), rows, args.traces)
        self.emit_json(relax_report(W, result), args)
        return 0
