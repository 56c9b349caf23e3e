"""
cclab Command Line - Modular Version

Command-line front end of the curvature inequality lab. Each subcommand is a
component under cli/components.

Usage:
    # Run a scenario file
    python main.py check --config scenarios.json --out report.csv --format csv

    # Or use programmatically
    from cli.cclab_cli import CclabCLI
    exit_code = CclabCLI().run(["fixtures", "--list"])
"""

import argparse
import logging
from typing import List, Optional

from .components import (
    CheckCommand,
    FixturesCommand,
    HessianCommand,
    LogComponent,
    OracleCommand,
)

# Configure logging
logger = logging.getLogger(__name__)


class CclabCLI:
    """
    Parses the command line and dispatches to the command components.

    Attributes:
        parser (argparse.ArgumentParser): Top-level parser
        log (Optional[LogComponent]): Console output, created on run
    """

    COMMANDS = (CheckCommand, FixturesCommand, HessianCommand, OracleCommand)

    def __init__(self):
        self.log: Optional[LogComponent] = None
        self.parser = self._build_parser()

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog='cclab',
            description="Chen and Casorati curvature inequality lab for quaternionic space forms",
        )
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument('--verbose', action='store_true', help="debug logging")
        verbosity.add_argument('--quiet', action='store_true', help="warnings and errors only")
        parser.add_argument('--no-color', action='store_true', help="plain console output")
        self.subparsers = parser.add_subparsers(dest='command', required=True)
        # components only need the subparsers object at registration time
        for command_class in self.COMMANDS:
            command_class(None).register(self.subparsers)
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Parse arguments and run one command.

        Args:
            argv (Optional[List[str]]): Arguments (default: sys.argv[1:])

        Returns:
            int: Process exit code (argparse usage errors exit with 2)
        """
        args = self.parser.parse_args(argv)
        level = LogComponent.level_from_flags(args.verbose, args.quiet)
        self.log = LogComponent(level=level, use_color=not args.no_color)
        commands = {command_class.name: command_class for command_class in self.COMMANDS}
        command = commands[args.command](self.log)
        logger.debug(f"Running command '{args.command}'")
        return command.run(args)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point used by main.py and run.py."""
    return CclabCLI().run(argv)
