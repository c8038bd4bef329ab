"""
Alloy Commands - variants, middle eigenvalue, twins and habit planes of an alloy spec
"""

import argparse
import logging
from typing import Optional

import numpy as np

from commands.base.base_command import BaseCommand
from engines.compatibility import habit_solutions, middle_eigenvalue_gap, twin_pairs, twin_solutions
from engines.deadload import DeadLoadProblem
from utils.alloys import AlloySpec
from utils.reporting.schemas import (
    HabitEntry,
    HabitPairEntry,
    HabitReport,
    Lambda2Report,
    TwinEntry,
    TwinReport,
    VariantsReport,
    matrix,
    vector,
)

logger = logging.getLogger(__name__)


def variants_report(spec: AlloySpec) -> VariantsReport:
    family = spec.family()
    return VariantsReport(alloy=BaseCommand.alloy_info(spec), count=len(family),
                          variants=[matrix(well.stretch) for well in family])


def lambda2_report(spec: AlloySpec) -> Lambda2Report:
    result = middle_eigenvalue_gap(spec.U1)
    return Lambda2Report(
        alloy=BaseCommand.alloy_info(spec), eigenvalues=vector(result.eigenvalues), lambda2=result.lambda2,
        gap=result.gap, compatible=result.compatible, classification=result.classification,
        two_well_incompatibility=result.two_well_incompatibility,
    )


def habit_report(spec: AlloySpec, all_pairs: bool = False) -> HabitReport:
    pairs = twin_pairs(spec.family())
    if not all_pairs:
        pairs = [pair for pair in pairs if pair.i == 0]
    entries = []
    for pair in pairs:
        solutions = habit_solutions(spec.U1, pair)
        entries.append(HabitPairEntry(
            i=pair.i, j=pair.j, a=vector(pair.twin.a), n=vector(pair.twin.n),
            solutions=[HabitEntry(lam=s.lam, b=vector(s.b), m=vector(s.m), residual=s.residual) for s in solutions],
        ))
    count = sum(len(entry.solutions) for entry in entries)
    logger.info("✅ %d habit solutions over %d twin systems", count, len(entries))
    return HabitReport(alloy=BaseCommand.alloy_info(spec), pairs=entries, habit_count=count)


class VariantsCommand(BaseCommand):
    NAME = "variants"
    HELP = "martensite variants Q U1 Q^T of an alloy"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        self.emit_json(variants_report(self.alloy(args)), args)
        return 0


class Lambda2Command(BaseCommand):
    NAME = "lambda2"
    HELP = "middle eigenvalue criterion against the identity well"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        self.emit_json(lambda2_report(self.alloy(args)), args)
        return 0


class TwinCommand(BaseCommand):
    NAME = "twin"
    HELP = "rank-one connections R U = F + a (x) n"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        parser.add_argument("--tau", type=float, default=None,
                            help="use the loaded parent R1^tau U1 as F (needs a load section)")
        parser.add_argument("--identity", action="store_true", help="F = 1 and U = U1")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        spec = self.alloy(args)
        tau: Optional[float] = args.tau
        if args.identity:
            F, U = np.eye(3), spec.U1
        elif tau is not None:
            load = spec.require_load()
            problem = DeadLoadProblem(spec.U1, spec.product(), spec.orientation, load.sigma1,
                                      c2=load.c2, tau_max=load.tau_max)
            F, U = problem.parent(tau), problem.wellset[1].stretch
        else:
            F, U = spec.U1, spec.product()

        solutions = twin_solutions(F, U)
        logger.info("%s %d twin solutions", "✅" if solutions else "⚠️", len(solutions))
        report = TwinReport(
            alloy=self.alloy_info(spec), tau=0.0 if tau is None else tau, F=matrix(F), U=matrix(U),
            solutions=[TwinEntry(R=matrix(s.R), a=vector(s.a), n=vector(s.n), residual=s.residual)
                       for s in solutions],
        )
        self.emit_json(report, args)
        return 0


class HabitCommand(BaseCommand):
    NAME = "habit"
    HELP = "habit planes of twinned laminates against the austenite well"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        parser.add_argument("--all-pairs", action="store_true",
                            help="every ordered variant pair, not only pairs with variant 1")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        self.emit_json(habit_report(self.alloy(args), args.all_pairs), args)
        return 0
