"""
Check Command Component

`check --config <file> --out <path> --format csv|json|xlsx`: parses a
scenario file, runs the suite and writes the report.

Exit codes: 0 when every asserted row holds, 1 on any violation, 2 on input
or I/O errors.

Usage:
    from cli.components.check_command import CheckCommand

    command = CheckCommand(log_component)
    command.register(subparsers)
    exit_code = command.run(args)
"""

import argparse
import logging
import os
from typing import Optional

from core.report_writer import ReportWriter
from core.suite_runner import EXIT_INPUT_ERROR, SuiteRunner
from utils.scenario_file import REPORT_FORMATS, ScenarioFileError, parse_scenario_file

from .log_component import LogComponent

# Configure logging
logger = logging.getLogger(__name__)

SEED_ENV = 'CCLAB_SEED'


def seed_override() -> Optional[int]:
    """
    Run seed from the CCLAB_SEED environment variable.

    Returns:
        Optional[int]: The seed, or None when the variable is unset or empty

    Raises:
        ValueError: If the value is not a non-negative integer
    """
    raw = os.environ.get(SEED_ENV, '').strip()
    if not raw:
        return None
    try:
        seed = int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}")
    if seed < 0 or seed >= 2 ** 64:
        raise ValueError(f"{SEED_ENV} out of range: {seed}")
    return seed


class CheckCommand:
    """
    Runs the inequality suite from a scenario file.

    Attributes:
        log (LogComponent): Console output
    """

    name = 'check'

    def __init__(self, log: LogComponent):
        self.log = log

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help="run the suite on a scenario file")
        parser.add_argument('--config', required=True, help="scenario file (JSON)")
        parser.add_argument('--out', help="report path (default: output.path from the file)")
        parser.add_argument('--format', choices=REPORT_FORMATS,
                            help="report format (default: output.format from the file, else csv)")
        return parser

    def run(self, args: argparse.Namespace) -> int:
        """
        Execute the command.

        Args:
            args (argparse.Namespace): Parsed arguments

        Returns:
            int: Process exit code
        """
        try:
            seed = seed_override()
            if seed is not None:
                logger.info(f"Run seed overridden by {SEED_ENV}: {seed}")
            config = parse_scenario_file(args.config, seed_override=seed)
            out = args.out or config.output_path
            if not out:
                raise ScenarioFileError("No report path given (use --out or output.path)", field='output.path')
            fmt = args.format or config.output_format

            runner = SuiteRunner(checks=config.checks, r_grid=config.r_grid, samples=config.samples,
                                 seed=config.seed, optimizer_starts=config.optimizer_starts)
            summary = runner.run_suite(config.scenarios)
            path = ReportWriter(out, fmt).write(summary['rows'])
        except (ValueError, OSError) as e:
            logger.error(f"Input error: {e}")
            self.log.error(str(e))
            return EXIT_INPUT_ERROR

        ok = summary['exit_code'] == 0
        text = (f"{summary['total']} rows, {summary['violations']} violations, "
                f"{summary['errors']} errors, {summary['reported_only']} reported-only failures -> {path}")
        self.log.status(text, ok=ok)
        return summary['exit_code']
