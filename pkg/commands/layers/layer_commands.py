"""
Layer Commands - radial transition layer, gamma lower bound and metastability threshold
"""

import argparse
import logging

from commands.base.base_command import BaseCommand, parse_range
from engines.layers import (
    ConvexBody,
    LayerProfile,
    eccentricity,
    gamma_lower_bound,
    metastability_threshold,
    radial_layer,
    radial_sweep,
)
from utils.errors import PreconditionError
from utils.reporting.schemas import GammaReport, RadialReport, ThresholdReportModel

logger = logging.getLogger(__name__)


class RadialCommand(BaseCommand):
    NAME = "radial"
    HELP = "radial layer energy rho(k), its minimum and the gamma upper bound"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--lambda", dest="lam", type=float, required=True, help="inner dilatation factor")
        parser.add_argument("--mu", type=float, required=True, help="outer dilatation factor")
        parser.add_argument("--n", type=int, default=3, help="dimension")
        parser.add_argument("--k", type=float, default=2.0, help="layer width ratio for rho(k)")
        parser.add_argument("--sweep", default=None, help="k grid lo:hi:count; writes CSV rows (k, rho)")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        profile = LayerProfile(args.lam, args.mu, args.n, k=args.k)
        if args.sweep:
            self.emit_csv(("k", "rho"), radial_sweep(profile, parse_range(args.sweep)), args)
            return 0
        layer = radial_layer(profile)
        report = RadialReport(lam=args.lam, mu=args.mu, n=args.n, k_star=layer.k_star, rho_min=layer.rho_min,
                              gamma_upper=layer.gamma_upper, degenerate=layer.degenerate)
        self.emit_json(report, args)
        return 0


class GammaCommand(BaseCommand):
    NAME = "gamma"
    HELP = "lower bound for the transition-layer constant gamma"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--gamma0", type=float, required=True)
        parser.add_argument("--body", choices=["ball", "box"], default="ball")
        parser.add_argument("--dimension", type=int, default=2, help="dimension of a ball body")
        parser.add_argument("--radius", type=float, default=1.0, help="radius of a ball body")
        parser.add_argument("--sides", default=None, help="comma list of box side lengths")
        parser.add_argument("--vol-omega", type=float, default=None, help="volume of the domain, vol(C) by default")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        if args.body == "box":
            if not args.sides:
                raise PreconditionError("--body box needs --sides")
            body = ConvexBody.box(parse_range(args.sides))
        else:
            body = ConvexBody.ball(args.dimension, args.radius)
        vol_omega = body.volume if args.vol_omega is None else args.vol_omega
        gamma = gamma_lower_bound(args.gamma0, body, vol_omega)
        report = GammaReport(
            gamma0=args.gamma0, dimension=body.dimension, inner_radius=body.inner_radius,
            outer_radius=body.outer_radius, body_volume=body.volume, vol_omega=vol_omega,
            eccentricity=eccentricity(body), gamma=gamma,
        )
        self.emit_json(report, args)
        return 0


class ThresholdCommand(BaseCommand):
    NAME = "threshold"
    HELP = "critical well depth delta0 below which the parent is metastable"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        for name in ("c0", "c1", "alpha", "p", "gamma", "Delta"):
            parser.add_argument(f"--{name}", type=float, required=True)
        parser.add_argument("--kappa", type=float, default=None, help="vol(C)/vol(Omega)")
        parser.add_argument("--E", type=float, default=None, help="eccentricity of C")
        parser.add_argument("--vol-omega", type=float, default=None)
        parser.add_argument("--n", type=int, default=None, help="dimension")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        result = metastability_threshold(args.c0, args.c1, args.alpha, args.p, args.gamma, args.Delta,
                                         kappa=args.kappa, E=args.E, vol_omega=args.vol_omega, n=args.n)
        logger.info("✅ delta0 = %.12g on branch %s", result.delta0, result.branch)
        report = ThresholdReportModel(
            c0=args.c0, c1=args.c1, alpha=args.alpha, p=args.p, gamma=args.gamma, Delta=args.Delta,
            K=result.K, branch=result.branch, delta0=result.delta0, sigma=result.sigma, beta=result.beta,
            Delta_body=result.Delta_body,
        )
        self.emit_json(report, args)
        return 0
