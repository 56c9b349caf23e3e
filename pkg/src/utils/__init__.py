"""
Utils Package

This package contains utility modules for cclab.
It includes scenario file loading and validation.

Available modules:
- scenario_file: For loading and validating JSON scenario files
"""

from .scenario_file import (
    RunConfig,
    ScenarioFileError,
    ScenarioFileLoader,
    ScenarioFileNotFound,
    parse_scenario_file,
    validate_scenario_file,
)

__all__ = [
    'RunConfig',
    'ScenarioFileError',
    'ScenarioFileLoader',
    'ScenarioFileNotFound',
    'parse_scenario_file',
    'validate_scenario_file',
]

__version__ = "1.0.0"
__author__ = "cclab Team"
