"""
Core Module for cclab

This module provides the numerical engine for Chen-type and Casorati
curvature inequalities of submanifolds in quaternionic space forms with a
Ricci quarter-symmetric metric connection.

Main Components:
- quat_structure: Quaternionic structure psi_1, psi_2, psi_3 on R^{4m}
- point_model: Submanifold point data, frames and validation
- curvature_engine: Curvature tensors, sectional/scalar/Ricci curvatures
- invariants: Mean curvature, Casorati curvatures, delta invariants
- inequality_suite: Inequality checks, equality cases, Hessian analysis
- scenario_lab: Deterministic scenario generators and named fixtures
- SuiteRunner: Orchestrates a suite run
- ReportWriter: CSV/JSON/Excel reports

Usage:
    from core import SuiteRunner, fixture_spec

    runner = SuiteRunner(checks=["A1", "B1"], r_grid=[6])
    summary = runner.run_suite([fixture_spec("S1")])
"""

from .errors import GeometryError, PointValidationError, PreconditionError
from .quat_structure import QuaternionicStructure, build_standard, verify_structure
from .point_model import AmbientModel, SubmanifoldPoint, validate_point
from .scenario_lab import ScenarioSpec, build_fixture, build_point, fixture_spec
from .inequality_suite import InequalityReport, hessian_spectrum
from .report_writer import ReportWriter, emit_report, load_report
from .suite_runner import SuiteRunner

__all__ = [
    'GeometryError',
    'PointValidationError',
    'PreconditionError',
    'QuaternionicStructure',
    'build_standard',
    'verify_structure',
    'AmbientModel',
    'SubmanifoldPoint',
    'validate_point',
    'ScenarioSpec',
    'build_fixture',
    'build_point',
    'fixture_spec',
    'InequalityReport',
    'hessian_spectrum',
    'ReportWriter',
    'emit_report',
    'load_report',
    'SuiteRunner',
]

__version__ = "1.0.0"
__author__ = "cclab Team"
