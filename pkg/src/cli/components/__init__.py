"""
CLI Components Package

This package contains the command components of the cclab command line.
Each component registers one subcommand and runs it.
"""

from .log_component import LogComponent, configure_logging
from .check_command import CheckCommand
from .fixtures_command import FixturesCommand
from .hessian_command import HessianCommand
from .oracle_command import OracleCommand

__all__ = [
    'LogComponent',
    'configure_logging',
    'CheckCommand',
    'FixturesCommand',
    'HessianCommand',
    'OracleCommand',
]
