"""
Suite Runner Module

Orchestrates a suite run: builds every scenario point, runs the requested
checks on it, and collects one row per (scenario, check, subcase).

Subcases: coordinate axes and random samples for A2, coordinate planes and
random samples for A3, one row per r for B1, low/high for COR, one row per
eigenvalue plus a summary row for HESS, one row per identity for IDENTITIES.

Usage:
    from core.suite_runner import SuiteRunner

    runner = SuiteRunner(checks=["A1", "B1"], r_grid=[6], seed=0)
    summary = runner.run_suite(scenarios)
    print(summary['exit_code'])
"""

import logging
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from . import inequality_suite as suite
from .errors import GeometryError
from .invariants import DEFAULT_STARTS
from .point_model import SubmanifoldPoint
from .scenario_lab import ScenarioSpec, build_point

# Configure logging
logger = logging.getLogger(__name__)

ALL_CHECKS = ('A1', 'A2', 'A3', 'A4', 'A5', 'B1', 'COR', 'HESS', 'IDENTITIES')

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


def default_r_grid(n: int) -> List[float]:
    """r in {1, n(n-1)/2, n^2-n-1, n^2-n+1, 2n(n-1)}, deduplicated, ascending."""
    boundary = n * n - n
    values = {1.0, boundary / 2.0, boundary - 1.0, boundary + 1.0, 2.0 * boundary}
    return sorted(r for r in values if r > 0)


def _label(r: float) -> str:
    return f"r={r:.17g}"


class SuiteRunner:
    """
    Runs the inequality checks over a list of scenarios.

    Attributes:
        checks (List[str]): Checks to run
        r_grid (Optional[List[float]]): Casorati parameters (None: per-dimension default)
        samples (int): Random X / plane samples per scenario
        seed (int): Seed for samples and optimizer starts
        optimizer_starts (int): Random starts per extremization
    """

    def __init__(self, checks: Sequence[str] = ALL_CHECKS, r_grid: Optional[Sequence[float]] = None,
                 samples: int = 8, seed: int = 0, optimizer_starts: int = DEFAULT_STARTS):
        """
        Initialize the suite runner.

        Args:
            checks (Sequence[str]): Checks to run (default: all)
            r_grid (Optional[Sequence[float]]): Casorati parameters (default: per-dimension grid)
            samples (int): Random samples per scenario (default: 8)
            seed (int): Run seed (default: 0)
            optimizer_starts (int): Random starts per extremization (default: 64)
        """
        self.checks: List[str] = []
        self.r_grid: Optional[List[float]] = None
        self.samples = 8
        self.seed = 0
        self.optimizer_starts = DEFAULT_STARTS
        self.update_settings(checks=checks, r_grid=r_grid, samples=samples, seed=seed,
                             optimizer_starts=optimizer_starts)
        logger.info(f"SuiteRunner initialized with checks {self.checks}")

    def update_settings(self, **kwargs):
        """
        Update runner settings.

        Args:
            **kwargs: checks, r_grid, samples, seed, optimizer_starts

        Raises:
            ValueError: On unknown settings or invalid values
        """
        for key, value in kwargs.items():
            if key == 'checks':
                checks = list(value)
                unknown = [name for name in checks if name not in ALL_CHECKS]
                if not checks or unknown:
                    raise ValueError(f"Checks must be a non-empty subset of {ALL_CHECKS}, got {checks}")
                self.checks = checks
            elif key == 'r_grid':
                if value is not None:
                    value = [float(r) for r in value]
                    if not value or any(not r > 0 for r in value):
                        raise ValueError(f"r_grid must be a non-empty list of positive reals, got {value}")
                self.r_grid = value
            elif key in ('samples', 'seed', 'optimizer_starts'):
                value = int(value)
                if value < (1 if key == 'optimizer_starts' else 0):
                    raise ValueError(f"{key} out of range: {value}")
                setattr(self, key, value)
            else:
                raise ValueError(f"Unknown setting '{key}'")
        logger.debug("Suite runner settings updated")

    def r_values(self, n: int) -> List[float]:
        return list(self.r_grid) if self.r_grid is not None else default_r_grid(n)

    def _row(self, scenario_id: str, check: str, subcase: str,
             report: suite.InequalityReport) -> Dict[str, Any]:
        return {
            'scenario_id': scenario_id,
            'check': check,
            'subcase': subcase,
            'lhs': report.lhs,
            'rhs_canonical': report.rhs_canonical,
            'rhs_variant': report.rhs_variant,
            'slack': report.slack,
            'holds': report.holds,
            'equality': report.equality,
            'equality_case': report.equality_case,
            'seed': self.seed,
            'asserted': report.asserted,
            'notes': report.notes,
        }

    def _error_row(self, scenario_id: str, check: str, error: Exception) -> Dict[str, Any]:
        return {
            'scenario_id': scenario_id,
            'check': check,
            'subcase': 'error',
            'lhs': None,
            'rhs_canonical': None,
            'rhs_variant': None,
            'slack': None,
            'holds': False,
            'equality': False,
            'equality_case': 'none',
            'seed': self.seed,
            'asserted': True,
            'notes': f"{type(error).__name__}: {error}",
        }

    def _applicable(self, check: str, point: SubmanifoldPoint) -> Optional[str]:
        """Reason a check does not apply to the point, or None."""
        if check in ('A3', 'A4', 'A5', 'B1', 'COR', 'HESS') and point.n < 3:
            return f"needs n >= 3 (n = {point.n})"
        if check == 'A4' and not point.c > 0:
            return f"needs c > 0 (c = {point.c})"
        if check == 'A5' and not point.c < 0:
            return f"needs c < 0 (c = {point.c})"
        return None

    def _run_A1(self, point: SubmanifoldPoint):
        return [('point', suite.check_A1(point))]

    def _run_A2(self, point: SubmanifoldPoint):
        n = point.n
        rng = np.random.default_rng(self.seed)
        results = [(f"axis{i}", suite.check_A2(point, np.eye(n)[i])) for i in range(n)]
        for s in range(self.samples):
            x = rng.standard_normal(n)
            results.append((f"sample{s:03d}", suite.check_A2(point, x / np.linalg.norm(x))))
        return results

    def _run_A3(self, point: SubmanifoldPoint):
        n = point.n
        eye = np.eye(n)
        rng = np.random.default_rng(self.seed)
        results = [(f"plane({i},{j})", suite.check_A3(point, (eye[i], eye[j])))
                   for i, j in combinations(range(n), 2)]
        for s in range(self.samples):
            u, v = rng.standard_normal((2, n))
            results.append((f"sample{s:03d}", suite.check_A3(point, (u, v))))
        return results

    def _run_A4(self, point: SubmanifoldPoint):
        return [('argmin', suite.check_A4(point, seed=self.seed, starts=self.optimizer_starts))]

    def _run_A5(self, point: SubmanifoldPoint):
        return [('argmin', suite.check_A5(point, seed=self.seed, starts=self.optimizer_starts))]

    def _run_B1(self, point: SubmanifoldPoint):
        return [(_label(r), suite.check_B1(point, r, self.seed, self.optimizer_starts))
                for r in self.r_values(point.n)]

    def _run_COR(self, point: SubmanifoldPoint):
        return [(report.name.split('.', 1)[1], report)
                for report in suite.check_corollary_11(point, self.seed, self.optimizer_starts)]

    def _run_HESS(self, point: SubmanifoldPoint):
        results = []
        n = point.n
        for r in self.r_values(n):
            spectrum = suite.hessian_spectrum(n, r)
            prefix = f"n={n},{_label(r)}"
            for index, (value, expected, match) in enumerate(
                    zip(spectrum.eigenvalues, spectrum.closed_form, spectrum.matches)):
                results.append((f"{prefix},lambda{index}", suite.InequalityReport(
                    name='HESS', lhs=value, rhs_canonical=expected, slack=expected - value,
                    holds=match, equality=match, tol=suite.HESSIAN_TOL, notes='eigenvalue')))
            single_zero = spectrum.psd and spectrum.zero_multiplicity == 1
            results.append((f"{prefix},psd", suite.InequalityReport(
                name='HESS', lhs=float(spectrum.zero_multiplicity), rhs_canonical=1.0,
                slack=1.0 - spectrum.zero_multiplicity, holds=single_zero, equality=single_zero,
                tol=suite.HESSIAN_TOL, notes=f"min eigenvalue {spectrum.eigenvalues[0]:.17g}")))
        return results

    def _run_IDENTITIES(self, point: SubmanifoldPoint):
        return [(report.name.split('.', 1)[1], report)
                for report in suite.check_identities(point, self.seed, self.optimizer_starts)]

    def build_scenario(self, spec: ScenarioSpec) -> SubmanifoldPoint:
        """
        Build a scenario point, adding the scenario id to any error.

        Raises:
            ValueError: If the recipe cannot be realized
        """
        try:
            return build_point(spec)
        except (GeometryError, ValueError, KeyError) as e:
            raise ValueError(f"Scenario '{spec.name}' cannot be built: {e}") from e

    def run_scenario(self, spec: ScenarioSpec, point: Optional[SubmanifoldPoint] = None) -> List[Dict[str, Any]]:
        """
        Run every configured check on one scenario.

        Args:
            spec (ScenarioSpec): Scenario recipe (its name is the scenario id)
            point (Optional[SubmanifoldPoint]): Prebuilt point (default: built from spec)

        Returns:
            List[Dict[str, Any]]: Rows for this scenario
        """
        if point is None:
            point = self.build_scenario(spec)
        scenario_id = spec.name
        rows = []
        for check in self.checks:
            reason = self._applicable(check, point)
            if reason is not None:
                logger.info(f"Skipping {check} on {scenario_id}: {reason}")
                continue
            runner: Callable = getattr(self, f"_run_{check}")
            try:
                for subcase, report in runner(point):
                    rows.append(self._row(scenario_id, check, subcase, report))
            except Exception as e:
                logger.error(f"Error running {check} on {scenario_id}: {e}")
                rows.append(self._error_row(scenario_id, check, e))
        logger.info(f"Scenario {scenario_id}: {len(rows)} rows")
        return rows

    def run_suite(self, scenarios: Sequence[ScenarioSpec]) -> Dict[str, Any]:
        """
        Run the configured checks over all scenarios.

        Every scenario is built before any check runs, so a bad recipe aborts
        the run without partial output.

        Args:
            scenarios (Sequence[ScenarioSpec]): Scenario recipes

        Returns:
            Dict[str, Any]: 'rows', 'total', 'violations', 'errors',
                'reported_only' (failing rows that are not asserted) and 'exit_code'

        Raises:
            ValueError: If a scenario cannot be built
        """
        points = [(spec, self.build_scenario(spec)) for spec in scenarios]
        rows: List[Dict[str, Any]] = []
        for index, (spec, point) in enumerate(points, 1):
            logger.info(f"Processing scenario {index}/{len(points)}: {spec.name}")
            rows.extend(self.run_scenario(spec, point))

        violations = [row for row in rows if row['asserted'] and not row['holds']]
        errors = [row for row in rows if row['subcase'] == 'error']
        reported_only = [row for row in rows if not row['asserted'] and not row['holds']]
        exit_code = EXIT_VIOLATION if violations else EXIT_OK

        summary = {
            'rows': rows,
            'total': len(rows),
            'violations': len(violations),
            'errors': len(errors),
            'reported_only': len(reported_only),
            'exit_code': exit_code,
        }
        logger.info(f"Suite completed: {len(rows)} rows, {len(violations)} violations, {len(errors)} errors")
        return summary


def run_suite(config) -> Dict[str, Any]:
    """
    Convenience function: run a parsed RunConfig.

    Args:
        config (RunConfig): Parsed scenario file

    Returns:
        Dict[str, Any]: Summary as returned by SuiteRunner.run_suite
    """
    runner = SuiteRunner(checks=config.checks, r_grid=config.r_grid, samples=config.samples,
                         seed=config.seed, optimizer_starts=config.optimizer_starts)
    return runner.run_suite(config.scenarios)
