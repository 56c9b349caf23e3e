"""
Fixtures Command Component

`fixtures --list`: prints the named fixtures with one-line descriptions.
`fixtures --show NAME`: prints the serialized point of one fixture.

Usage:
    from cli.components.fixtures_command import FixturesCommand
"""

import argparse
import json

from core.point_model import point_to_dict
from core.scenario_lab import build_fixture, describe_fixtures, fixture_names

from .log_component import LogComponent


class FixturesCommand:
    """
    Lists and shows the named fixtures.

    Attributes:
        log (LogComponent): Console output
    """

    name = 'fixtures'

    def __init__(self, log: LogComponent):
        self.log = log

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help="list the named fixtures")
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--list', action='store_true', help="print fixture names and descriptions")
        group.add_argument('--show', choices=fixture_names(), help="print one fixture as JSON")
        return parser

    def run(self, args: argparse.Namespace) -> int:
        if args.list:
            width = max(len(name) for name in fixture_names())
            for name, description in describe_fixtures():
                self.log.message(f"{name:<{width}}  {description}")
            return 0
        self.log.message(json.dumps(point_to_dict(build_fixture(args.show)), indent=2))
        return 0
