"""
Dead-Load Commands - equal-energy curve and hysteresis bound under biaxial loads
"""

import argparse
import logging
from typing import List, Optional, Sequence

import numpy as np

from commands.base.base_command import BaseCommand, parse_range
from engines.deadload import DeadLoadProblem, EqualEnergyCurve, equal_energy_curve
from utils.alloys import AlloySpec
from utils.errors import MartensiteError
from utils.reporting.schemas import HysteresisReport, LaminateEntry, finite, matrix, vector

logger = logging.getLogger(__name__)

# laminate slabs bracket tau+ from below and above
LAMINATE_FACTORS = (0.99, 1.01)
LAMINATE_XI = 0.1
UNIT_BOX = ((-0.5, -0.5, -0.5), (0.5, 0.5, 0.5))


def curve_for(spec: AlloySpec, grid: Optional[Sequence[float]] = None, workers: Optional[int] = None) -> EqualEnergyCurve:
    sigma1 = spec.sigma1_grid() if grid is None else np.asarray(grid, dtype=float)
    return equal_energy_curve(spec.U1, spec.product(), spec.orientation, sigma1, workers=workers)


def hysteresis_report(spec: AlloySpec, sigma1: Optional[float] = None, c2: Optional[float] = None,
                      tau_max: Optional[float] = None, laminates: bool = True) -> HysteresisReport:
    load = spec.require_load()
    problem = DeadLoadProblem(
        spec.U1, spec.product(), spec.orientation, load.sigma1 if sigma1 is None else sigma1,
        c2=load.c2 if c2 is None else c2, tau_max=load.tau_max if tau_max is None else tau_max,
    )
    bound = problem.hysteresis_bound()

    entries: List[LaminateEntry] = []
    if laminates:
        for factor in LAMINATE_FACTORS:
            tau1 = factor * bound.tau_plus
            try:
                slab = problem.laminate_counterexample(tau1, LAMINATE_XI, np.zeros(3), UNIT_BOX)
            except MartensiteError as e:
                logger.warning("⚠️ laminate slab at tau1=%.6g skipped: %s", tau1, e)
                continue
            entries.append(LaminateEntry(
                tau1=slab.tau1, xi=slab.xi, energy_gap=slab.energy_gap, l1_distance=slab.l1_distance,
                l1_constant=slab.l1_constant, slab_volume=slab.slab_volume,
            ))

    return HysteresisReport(
        alloy=BaseCommand.alloy_info(spec), tau_plus=bound.tau_plus, schmid_residual=bound.schmid_residual,
        B=matrix(bound.B), a=vector(bound.a), n=vector(bound.n), partner_energies=vector(bound.partner_energies),
        partner_gap=finite(bound.partner_gap), sigma1=bound.sigma1, f0=bound.f0, c2=bound.c2,
        epsilon=bound.epsilon, tau_max=bound.tau_max, swapped=bound.swapped, laminates=entries,
    )


class CurveCommand(BaseCommand):
    NAME = "curve"
    HELP = "equal-energy curve sigma2 = f(sigma1) as CSV"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        parser.add_argument("--sigma1", default=None, help="grid lo:hi:count, defaults to the alloy document's load grid")
        parser.add_argument("--workers", type=int, default=1, help="threads for tabulation")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        spec = self.alloy(args)
        grid = parse_range(args.sigma1) if args.sigma1 else None
        curve = curve_for(spec, grid, args.workers)
        if curve.swapped:
            logger.warning("⚠️ wells were swapped so that variant 1 is preferred for small sigma2")
        logger.info("✅ %d curve points, min rank gap %.3e", len(curve), float(curve.rank_gap.min()))
        self.emit_csv(("sigma1", "f", "rank_gap"), curve.rows(), args)
        return 0


class HysteresisCommand(BaseCommand):
    NAME = "hysteresis"
    HELP = "metastability-loss parameter tau+ with laminate slabs around it"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        parser.add_argument("--sigma1", type=float, default=None, help="fixed traction, defaults to the alloy document's")
        parser.add_argument("--c2", type=float, default=None, help="load rate along e2, chosen when omitted")
        parser.add_argument("--tau-max", type=float, default=None, help="end of the searched tau range")
        parser.add_argument("--no-laminates", action="store_true", help="skip the laminate slabs")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        spec = self.alloy(args)
        report = hysteresis_report(spec, args.sigma1, args.c2, args.tau_max, laminates=not args.no_laminates)
        self.emit_json(report, args)
        return 0
