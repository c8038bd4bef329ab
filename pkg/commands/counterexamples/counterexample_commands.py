"""
Counterexample Commands - rooms and passages, zero-gradient layer and the L1 splitting sequence
"""

import argparse
import logging

from commands.base.base_command import BaseCommand, parse_matrix, parse_range
from engines.counterexamples import (
    RoomsPassages,
    l1_sequence,
    rooms_ratio,
    rooms_sweep,
    thickness_for_ratio,
    zero_gradient_layer,
)
from engines.relax import INCOMPATIBLE_A1, INCOMPATIBLE_A2
from utils.reporting.schemas import L1Entry, L1SequenceReport, NooneReport, RoomsReport, matrix

logger = logging.getLogger(__name__)

DEFAULT_L1_INDICES = "1,10,100,1000"


def _well_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--A1", default=None, help="first well 'a,b;c,d', e2 (x) e2 by default")
    parser.add_argument("--A2", default=None, help="second well, (e1 + e2) (x) (e1 + e2) by default")


def _wells(args: argparse.Namespace):
    A1 = INCOMPATIBLE_A1 if args.A1 is None else parse_matrix(args.A1)
    A2 = INCOMPATIBLE_A2 if args.A2 is None else parse_matrix(args.A2)
    return A1, A2


class RoomsCommand(BaseCommand):
    NAME = "rooms"
    HELP = "layer-to-nucleus energy ratio on a rooms-and-passages domain"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--J", type=int, default=6, help="number of rooms, h_j = l_j = 2^-j")
        parser.add_argument("--j", type=int, default=3, help="room holding the nucleus")
        parser.add_argument("--p", type=float, default=2.0)
        parser.add_argument("--thickness-fraction", type=float, default=0.5, help="d_j = fraction 2^-(j+1)")
        parser.add_argument("--target", type=float, default=None,
                            help="also report the corridor scale bringing the ratio below this value")
        parser.add_argument("--sweep", default=None, help="thickness scales lo:hi:count; writes CSV rows (d_j, ratio)")
        _well_arguments(parser)
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        A1, A2 = _wells(args)
        geom = RoomsPassages.dyadic(args.J, args.thickness_fraction)
        if args.sweep:
            self.emit_csv(("d", "ratio"), rooms_sweep(geom, A1, A2, args.p, args.j, parse_range(args.sweep)), args)
            return 0

        result = rooms_ratio(geom, A1, A2, args.p, args.j)
        scale = None if args.target is None else thickness_for_ratio(geom, A1, A2, args.p, args.j, args.target)
        report = RoomsReport(
            J=geom.J, j=args.j, p=args.p, h=geom.h[args.j - 1], l=geom.l[args.j - 1], d=geom.d[args.j - 1],
            layer_energy=result.layer_energy, nucleus_volume=result.nucleus_volume, ratio=result.ratio,
            target=args.target, target_scale=scale,
        )
        self.emit_json(report, args)
        return 0


class NooneCommand(BaseCommand):
    NAME = "noone"
    HELP = "zero-gradient transition layer between incompatible point wells"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--delta", type=float, default=0.1, help="layer parameter in (0, 1)")
        parser.add_argument("--samples", type=int, default=1000, help="points for the interface continuity check")
        parser.add_argument("--seed", type=int, default=0)
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        layer = zero_gradient_layer(args.delta)
        report = NooneReport(
            delta=layer.delta, layer_gradient_energy=layer.layer_gradient_energy, layer_measure=layer.layer_measure,
            min_phase_volume=layer.min_phase_volume, interface_jump=layer.interface_jump(args.samples, args.seed),
        )
        self.emit_json(report, args)
        return 0


class L1SequenceCommand(BaseCommand):
    NAME = "l1seq"
    HELP = "L1 norms of the splitting sequence y_j between two matrices"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--A", default="1,0;0,1", help="matrix on x1 <= 0")
        parser.add_argument("--B", default="2,0;0,1", help="matrix on x1 >= 1/j")
        parser.add_argument("--j", default=DEFAULT_L1_INDICES, help="comma list of sequence indices")
        parser.add_argument("--samples", type=int, default=1000)
        parser.add_argument("--seed", type=int, default=0)
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        A, B = parse_matrix(args.A), parse_matrix(args.B)
        indices = [int(j) for j in parse_range(args.j)]
        members = [l1_sequence(A, B, j, args.samples, args.seed) for j in indices]
        constant = l1_sequence(A, B, 1, args.samples, args.seed).l1_norm
        worst = max(m.l1_norm for m in members) / constant
        logger.info("%s largest norm is %.4f x the j=1 value", "✅" if worst <= 1.05 else "⚠️", worst)
        report = L1SequenceReport(
            A=matrix(A), B=matrix(B), constant=constant,
            sequence=[L1Entry(j=m.j, l1_norm=m.l1_norm, strip_measure=m.strip_measure, bound=m.bound,
                              gradient_residual=m.gradient_residual) for m in members],
        )
        self.emit_json(report, args)
        return 0
