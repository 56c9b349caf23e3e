"""
Oracle Command Component

`oracle --n <int> --grid <int>`: compares the multi-start optimizers with
dense-grid oracles (hyperplane inf/sup of C(V), 2-plane inf of K) on seeded
random scenarios and prints one line per comparison.

Usage:
    from cli.components.oracle_command import OracleCommand
"""

import argparse
import logging
from typing import Any, Dict, List

from core.invariants import (
    chen_delta,
    hyperplane_extrema,
    hyperplane_grid_oracle,
    plane_grid_oracle,
)
from core.scenario_lab import build_point, random_spec
from core.suite_runner import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION

from .check_command import seed_override
from .log_component import LogComponent

# Configure logging
logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-6


def compare_with_oracles(n: int, grid: int, scenarios: int, seed: int) -> List[Dict[str, Any]]:
    """
    Optimizer vs grid-oracle values on random scenarios.

    Args:
        n (int): Submanifold dimension (>= 3)
        grid (int): Grid size of each oracle
        scenarios (int): Number of random scenarios
        seed (int): Base seed; scenario i uses seed + i

    Returns:
        List[Dict[str, Any]]: Rows with scenario, quantity, optimizer, oracle,
            difference and agree
    """
    m = n // 4 + 1
    rows = []
    for index in range(scenarios):
        spec = random_spec(n, m, c=1.0, seed=seed + index)
        point = build_point(spec)
        values = {
            'C_inf': (hyperplane_extrema(point, 'inf', seed).extremal_value,
                      hyperplane_grid_oracle(point, 'inf', grid)['value']),
            'C_sup': (hyperplane_extrema(point, 'sup', seed).extremal_value,
                      hyperplane_grid_oracle(point, 'sup', grid)['value']),
            'K_inf': (chen_delta(point, seed).inf_K, plane_grid_oracle(point, grid)['value']),
        }
        for quantity, (optimizer, oracle) in values.items():
            difference = abs(optimizer - oracle)
            rows.append({
                'scenario': spec.name,
                'quantity': quantity,
                'optimizer': optimizer,
                'oracle': oracle,
                'difference': difference,
                'agree': difference <= ORACLE_TOL * max(1.0, abs(oracle)),
            })
        logger.debug(f"Oracle comparison done for {spec.name}")
    return rows


class OracleCommand:
    """
    Prints optimizer-vs-oracle comparisons.

    Attributes:
        log (LogComponent): Console output
    """

    name = 'oracle'

    def __init__(self, log: LogComponent):
        self.log = log

    def register(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help="compare optimizers with dense-grid oracles")
        parser.add_argument('--n', type=int, required=True, help="submanifold dimension (>= 3)")
        parser.add_argument('--grid', type=int, default=10000, help="grid points per oracle (default: 10000)")
        parser.add_argument('--scenarios', type=int, default=5, help="random scenarios (default: 5)")
        parser.add_argument('--seed', type=int, default=0, help="base seed (CCLAB_SEED overrides)")
        return parser

    def run(self, args: argparse.Namespace) -> int:
        try:
            if args.n < 3 or args.grid < 1 or args.scenarios < 1:
                raise ValueError("need n >= 3, grid >= 1 and scenarios >= 1")
            override = seed_override()
            seed = override if override is not None else args.seed
            rows = compare_with_oracles(args.n, args.grid, args.scenarios, seed)
        except ValueError as e:
            self.log.error(str(e))
            return EXIT_INPUT_ERROR

        self.log.message(f"{'scenario':<22} {'quantity':<8} {'optimizer':>22} {'oracle':>22} {'difference':>11}")
        for row in rows:
            self.log.message(f"{row['scenario']:<22} {row['quantity']:<8} {row['optimizer']:>22.15g} "
                             f"{row['oracle']:>22.15g} {row['difference']:>11.2e}")
        disagreements = sum(not row['agree'] for row in rows)
        self.log.status(f"{len(rows) - disagreements}/{len(rows)} comparisons within {ORACLE_TOL:g}",
                        ok=disagreements == 0)
        return EXIT_OK if disagreements == 0 else EXIT_VIOLATION
