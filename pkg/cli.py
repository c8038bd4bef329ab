"""
Martensite Metastability - command-line front end
Registers every subcommand and maps each error class to its exit code
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Type

from commands.alloy.alloy_commands import HabitCommand, Lambda2Command, TwinCommand, VariantsCommand
from commands.base.base_command import BaseCommand
from commands.counterexamples.counterexample_commands import L1SequenceCommand, NooneCommand, RoomsCommand
from commands.deadload.deadload_commands import CurveCommand, HysteresisCommand
from commands.layers.layer_commands import GammaCommand, RadialCommand, ThresholdCommand
from commands.relax.relax_command import RelaxCommand
from commands.report.report_command import ReportCommand, ReportSchemaCommand
from utils.errors import MartensiteError

# Version and constants
VERSION = "1.0.0"
SEPARATOR = "=" * 70

logger = logging.getLogger("martensite")

COMMAND_CLASS_MAPPINGS: Dict[str, Type[BaseCommand]] = {
    command.NAME: command
    for command in (
        VariantsCommand,
        TwinCommand,
        Lambda2Command,
        HabitCommand,
        CurveCommand,
        HysteresisCommand,
        RadialCommand,
        GammaCommand,
        ThresholdCommand,
        RoomsCommand,
        NooneCommand,
        L1SequenceCommand,
        RelaxCommand,
        ReportCommand,
        ReportSchemaCommand,
    )
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="martensite", description="Metastability toolkit for martensitic alloys")
    parser.add_argument("--version", action="version", version=f"%(prog)s v{VERSION}")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, command in COMMAND_CLASS_MAPPINGS.items():
        command.add_arguments(subparsers.add_parser(name, help=command.HELP, description=command.HELP))
    return parser


def configure_logging(verbose: bool = False) -> None:
    # stdout carries the artifacts; everything else goes to stderr
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit status.

    Exit codes: 0 ok, 2 parse or precondition error, 3 numerical failure, 4 regime error.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    logger.debug(SEPARATOR)
    logger.debug("martensite v%s: %s", VERSION, args.command)

    command = COMMAND_CLASS_MAPPINGS[args.command]()
    try:
        return command.run(args)
    except MartensiteError as e:
        logger.error("❌ %s: %s", type(e).__name__, e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
