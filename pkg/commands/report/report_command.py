"""
Report Commands - full alloy pipeline as one JSON document, and the shipped report schemas
"""

import argparse
import logging
from typing import Callable, Dict, Optional, TypeVar

from commands.alloy.alloy_commands import habit_report, lambda2_report, variants_report
from commands.base.base_command import BaseCommand
from commands.deadload.deadload_commands import curve_for, hysteresis_report
from utils.errors import MartensiteError
from utils.reporting import emit_text, report_schema
from utils.reporting.schemas import REPORT_MODELS, CurveEntry, FullReport

logger = logging.getLogger(__name__)

T = TypeVar("T")


def _optional(name: str, build: Callable[[], T], skipped: Dict[str, str]) -> Optional[T]:
    try:
        return build()
    except MartensiteError as e:
        skipped[name] = f"{type(e).__name__}: {e}"
        logger.warning("⚠️ %s skipped: %s", name, e)
        return None


class ReportCommand(BaseCommand):
    NAME = "report"
    HELP = "run every alloy analysis that applies and emit one JSON document"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_alloy_arguments(parser)
        parser.add_argument("--workers", type=int, default=1, help="threads for the equal-energy curve")
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        spec = self.alloy(args)
        skipped: Dict[str, str] = {}

        habit = None
        if len(spec.family()) > 1:
            habit = _optional("habit", lambda: habit_report(spec), skipped)
        else:
            skipped["habit"] = "single variant"

        curve = hysteresis = None
        if spec.load is not None:
            table = _optional("curve", lambda: curve_for(spec, workers=args.workers), skipped)
            if table is not None:
                curve = [CurveEntry(sigma1=s, f=f, rank_gap=g) for s, f, g in table.rows()]
            hysteresis = _optional("hysteresis", lambda: hysteresis_report(spec), skipped)
        else:
            skipped["curve"] = skipped["hysteresis"] = "no load section"

        report = FullReport(
            alloy=self.alloy_info(spec), variants=variants_report(spec), lambda2=lambda2_report(spec),
            habit=habit, curve=curve, hysteresis=hysteresis, skipped=skipped,
        )
        self.emit_json(report, args)
        return 0


class ReportSchemaCommand(BaseCommand):
    NAME = "report-schema"
    HELP = "print the JSON schema of a report"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", choices=sorted(REPORT_MODELS))
        cls.add_output_argument(parser)

    def run(self, args: argparse.Namespace) -> int:
        emit_text(report_schema(args.name), args.output)
        return 0
