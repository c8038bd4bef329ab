"""
Base Command - Common functionality for all subcommands
Provides shared argument groups, alloy resolution and standardized output
"""

import argparse
import logging
from typing import Any, Iterable, List, Sequence

import numpy as np
from pydantic import BaseModel

from engines.deadload import Orientation
from utils.alloys import AlloySpec, resolve_alloy
from utils.errors import PreconditionError
from utils.reporting import write_csv, write_json
from utils.reporting.schemas import AlloyInfo, matrix

logger = logging.getLogger(__name__)


def parse_range(text: str) -> np.ndarray:
    """'lo:hi:count' as an inclusive linspace, or a comma list of values."""
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            return np.linspace(float(lo), float(hi), int(count))
        return np.array([float(v) for v in text.split(",")])
    except ValueError as e:
        raise PreconditionError(f"cannot read '{text}' as lo:hi:count or a comma list") from e


def parse_matrix(text: str) -> np.ndarray:
    """Rows separated by ';', entries by ','."""
    try:
        return np.array([[float(v) for v in row.split(",")] for row in text.split(";")])
    except ValueError as e:
        raise PreconditionError(f"cannot read '{text}' as a matrix 'a,b;c,d'") from e


class BaseCommand:
    """
    Base class for all subcommands.
    Subclasses declare their flags in add_arguments and do the work in run.
    """

    NAME = ""
    HELP = ""
    CATEGORY = "Martensite"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        cls.add_output_argument(parser)

    @staticmethod
    def add_output_argument(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--output", "-o", default=None, help="write the artifact here instead of stdout")

    @staticmethod
    def add_alloy_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--preset", default=None, help="named alloy preset (cualni, terephthalic)")
        parser.add_argument("--spec", default=None, help="YAML alloy spec document")
        parser.add_argument("--orientation", choices=["spec", "aligned"], default="spec",
                            help="use the alloy document's specimen orientation or the aligned frame")

    def alloy(self, args: argparse.Namespace) -> AlloySpec:
        spec = resolve_alloy(getattr(args, "preset", None), getattr(args, "spec", None))
        if getattr(args, "orientation", "spec") == "aligned":
            spec = spec.with_orientation(Orientation.aligned())
        logger.debug("alloy: %s", self.generate_info_string(name=spec.name, group=spec.group,
                                                            orientation=spec.orientation.label))
        return spec

    @staticmethod
    def alloy_info(spec: AlloySpec) -> AlloyInfo:
        return AlloyInfo(name=spec.name, preset=spec.preset, group=spec.group,
                         U1=matrix(spec.U1), orientation=spec.orientation.label)

    def emit_json(self, report: BaseModel, args: argparse.Namespace) -> str:
        return write_json(report, getattr(args, "output", None))

    def emit_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]], args: argparse.Namespace) -> str:
        return write_csv(header, rows, getattr(args, "output", None))

    def generate_info_string(self, **kwargs) -> str:
        """
        Generate information string about the processing.

        Args:
            **kwargs: Information to include in the string

        Returns:
            Formatted information string
        """
        info_parts: List[str] = []
        for key, value in kwargs.items():
            if value is not None:
                info_parts.append(f"{key}: {value}")
        return ", ".join(info_parts)

    def run(self, args: argparse.Namespace) -> int:
        """
        Execute the subcommand.

        Returns:
            Process exit status, 0 on success
        """
        raise NotImplementedError(f"{type(self).__name__} must implement run")
