"""
Scenario File Module

Loads and validates the JSON scenario file that configures a suite run.
Parsing is strict: unknown keys are rejected and the physics-bearing fields
(n, m, c, h, M) of every non-fixture scenario are required.

File layout:
    {
      "scenarios": ["S0", {"id": "rnd", "kind": "random", "n": 3, "m": 2,
                            "c": 1.0, "h": {"type": "random", "scale": 1.0},
                            "M": {"type": "zero"}, "seed": 7}],
      "checks": ["A1", "B1"],
      "r_grid": [6],
      "samples": 8,
      "seed": 0,
      "optimizer_starts": 64,
      "output": {"path": "report.csv", "format": "csv"}
    }

Usage:
    from utils.scenario_file import ScenarioFileLoader, parse_scenario_file

    config = parse_scenario_file("scenarios.json")
    is_valid, error_message = ScenarioFileLoader().validate_scenario_file("scenarios.json")
"""

import json
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.scenario_lab import FIXTURES, H_TYPES, M_TYPES, ScenarioSpec

# Configure logging
logger = logging.getLogger(__name__)

ALL_CHECKS = ('A1', 'A2', 'A3', 'A4', 'A5', 'B1', 'COR', 'HESS', 'IDENTITIES')
REPORT_FORMATS = ('csv', 'json', 'xlsx')
MAX_SEED = 2 ** 64

_TOP_LEVEL_KEYS = {'scenarios', 'checks', 'r_grid', 'samples', 'seed', 'optimizer_starts', 'output'}
_SCENARIO_KEYS = {'id', 'kind', 'n', 'm', 'c', 'h', 'M', 'seed', 'name'}
_H_PARAMS = {
    'zero': set(),
    'umbilical': {'lambda'},
    'quasi_umbilical': {'u', 'r'},
    'explicit': {'value'},
    'random': {'scale'},
}
_M_PARAMS = {
    'zero': set(),
    'scaled_identity': {'s'},
    'explicit': {'value'},
    'random': {'scale'},
}
SYMMETRY_TOL = 1e-12


class ScenarioFileError(ValueError):
    """
    Schema or syntax problem in a scenario file.

    Attributes:
        field (Optional[str]): Dotted path of the offending field
        line (Optional[int]): 1-based line number when it can be located
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ''
        super().__init__(f"{prefix}{message}")


class ScenarioFileNotFound(ScenarioFileError):
    """The scenario file does not exist."""


@dataclass
class RunConfig:
    """
    Parsed scenario file.

    Attributes:
        scenarios (List[ScenarioSpec]): Scenario recipes, in file order
        checks (List[str]): Checks to run
        r_grid (Optional[List[float]]): Casorati parameters; None selects the
            per-dimension default grid
        samples (int): Random X / plane samples per scenario
        seed (int): Run seed for samples and optimizer starts
        optimizer_starts (int): Random starts per extremization
        output_path (Optional[str]): Report path from the file
        output_format (str): csv, json or xlsx
        source (Optional[str]): Path the config was read from
    """

    scenarios: List[ScenarioSpec]
    checks: List[str]
    r_grid: Optional[List[float]] = None
    samples: int = 8
    seed: int = 0
    optimizer_starts: int = 64
    output_path: Optional[str] = None
    output_format: str = 'csv'
    source: Optional[str] = field(default=None, compare=False)


class ScenarioFileLoader:
    """
    Reads scenario files and turns them into RunConfig objects.

    Attributes:
        text (str): Raw text of the file being parsed (for line lookup)
        seed_override (Optional[int]): Run seed replacing the file's 'seed'
    """

    def __init__(self, seed_override: Optional[int] = None):
        """
        Initialize the scenario file loader.

        Args:
            seed_override (Optional[int]): Run seed that replaces the file's
                'seed' (default: None keeps the file value)
        """
        self.text = ''
        self.seed_override = seed_override

    def validate_scenario_file(self, file_path: str) -> Tuple[bool, str]:
        """
        Check that a scenario file parses.

        Args:
            file_path (str): Path to the JSON file

        Returns:
            Tuple[bool, str]: (is_valid, error_message)
        """
        try:
            self.load(file_path)
            return True, "File is valid"
        except ScenarioFileError as e:
            return False, str(e)

    def load(self, file_path: str) -> RunConfig:
        """
        Read and validate a scenario file.

        Args:
            file_path (str): Path to the JSON file

        Returns:
            RunConfig: Parsed configuration

        Raises:
            ScenarioFileNotFound: If the file does not exist
            ScenarioFileError: On JSON syntax or schema violations
        """
        if not file_path or not os.path.exists(file_path):
            raise ScenarioFileNotFound(f"Scenario file does not exist: {file_path}")
        with open(file_path, 'r', encoding='utf-8') as handle:
            text = handle.read()
        config = self.loads(text)
        config.source = file_path
        logger.info(f"Loaded {len(config.scenarios)} scenarios and {len(config.checks)} checks from {file_path}")
        return config

    def loads(self, text: str) -> RunConfig:
        """
        Parse scenario file text.

        Args:
            text (str): JSON document

        Returns:
            RunConfig: Parsed configuration
        """
        self.text = text
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioFileError(f"Invalid JSON: {e.msg}", line=e.lineno)
        if not isinstance(data, dict):
            raise ScenarioFileError("Top level must be an object", line=1)
        self._reject_unknown(data, _TOP_LEVEL_KEYS, '')

        for key in ('scenarios', 'checks'):
            if key not in data:
                raise ScenarioFileError("Missing required field", field=key)

        scenarios_raw = data['scenarios']
        if not isinstance(scenarios_raw, list):
            raise self._error("Must be a list", 'scenarios', 'scenarios')

        seed = self._integer(data.get('seed', 0), 'seed', minimum=0, maximum=MAX_SEED - 1)
        if self.seed_override is not None:
            # scenarios without their own seed inherit the overriding run seed
            seed = self.seed_override
        scenarios =[self._scenario(entry, index, seed) for index, entry in enumerate(scenarios_raw)]
        ids = [spec.name for spec in scenarios]
        duplicates = sorted({name for name in ids if ids.count(name) > 1})
        if duplicates:
            raise self._error(f"Duplicate scenario ids {duplicates}", 'scenarios', 'id')

        checks = self._checks(data['checks'])
        r_grid = None
        if 'r_grid' in data:
            r_grid = self._r_grid(data['r_grid'])

        output_path, output_format = None, 'csv'
        if 'output' in data:
            output_path, output_format = self._output(data['output'])

        return RunConfig(
            scenarios=scenarios,
            checks=checks,
            r_grid=r_grid,
            samples=self._integer(data.get('samples', 8), 'samples', minimum=0),
            seed=seed,
            optimizer_starts=self._integer(data.get('optimizer_starts', 64), 'optimizer_starts', minimum=1),
            output_path=output_path,
            output_format=output_format,
        )

    def _line_of(self, key: str, value: Any = None) -> Optional[int]:
        """Best-effort line number of "key": value in the raw text."""
        if value is None:
            pattern = rf'"{re.escape(key)}"\s*:'
        else:
            pattern = rf'"{re.escape(key)}"\s*:\s*{re.escape(json.dumps(value))}'
        match = re.search(pattern, self.text)
        if match is None:
            return None
        return self.text.count('\n', 0, match.start()) + 1

    def _error(self, message: str, field_path: str, key: str, value: Any = None) -> ScenarioFileError:
        return ScenarioFileError(message, field=field_path, line=self._line_of(key, value))

    def _reject_unknown(self, data: Dict[str, Any], allowed: set, path: str):
        unknown = sorted(set(data) - allowed)
        if unknown:
            key = unknown[0]
            raise self._error(f"Unknown field (allowed: {sorted(allowed)})",
                              f"{path}{key}", key)

    def _integer(self, value: Any, path: str, minimum: Optional[int] = None,
                 maximum: Optional[int] = None) -> int:
        key = path.rsplit('.', 1)[-1]
        if isinstance(value, bool) or not isinstance(value, int):
            raise self._error(f"Expected an integer, got {value!r}", path, key, value)
        if minimum is not None and value < minimum:
            raise self._error(f"Must be >= {minimum}, got {value}", path, key, value)
        if maximum is not None and value > maximum:
            raise self._error(f"Must be <= {maximum}, got {value}", path, key, value)
        return value

    def _real(self, value: Any, path: str) -> float:
        key = path.rsplit('.', 1)[-1]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            raise self._error(f"Expected a finite real, got {value!r}", path, key, value)
        return float(value)

    def _checks(self, value: Any) -> List[str]:
        if not isinstance(value, list) or not value:
            raise self._error("Must be a non-empty list", 'checks', 'checks')
        checks = []
        for index, name in enumerate(value):
            if name not in ALL_CHECKS:
                raise self._error(f"Unknown check {name!r} (allowed: {list(ALL_CHECKS)})",
                                  f"checks[{index}]", 'checks')
            if name not in checks:
                checks.append(name)
        return checks

    def _r_grid(self, value: Any) -> List[float]:
        if not isinstance(value, list) or not value:
            raise self._error("Must be a non-empty list", 'r_grid', 'r_grid')
        grid = []
        for index, r in enumerate(value):
            r = self._real(r, f"r_grid[{index}]")
            if r <= 0:
                raise self._error(f"r must be positive, got {r}", f"r_grid[{index}]", 'r_grid')
            grid.append(r)
        return grid

    def _output(self, value: Any) -> Tuple[Optional[str], str]:
        if not isinstance(value, dict):
            raise self._error("Must be an object", 'output', 'output')
        self._reject_unknown(value, {'path', 'format'}, 'output.')
        fmt = value.get('format', 'csv')
        if fmt not in REPORT_FORMATS:
            raise self._error(f"Unknown format {fmt!r} (allowed: {list(REPORT_FORMATS)})",
                              'output.format', 'format', fmt)
        path = value.get('path')
        if path is not None and not isinstance(path, str):
            raise self._error("Must be a string", 'output.path', 'path')
        return path, fmt

    def _scenario(self, entry: Any, index: int, run_seed: int) -> ScenarioSpec:
        path = f"scenarios[{index}]"
        if isinstance(entry, str):
            if entry not in FIXTURES:
                raise self._error(f"Unknown fixture {entry!r} (known: {list(FIXTURES)})", path, entry)
            return ScenarioSpec(kind='fixture', name=entry)
        if not isinstance(entry, dict):
            raise self._error("Scenario must be a fixture name or an object", path, 'scenarios')
        self._reject_unknown(entry, _SCENARIO_KEYS, f"{path}.")

        kind = entry.get('kind')
        if kind not in ('invariant', 'anti_invariant', 'random', 'fixture'):
            raise self._error(f"Unknown kind {kind!r}", f"{path}.kind", 'kind', kind)
        scenario_id = entry.get('id', entry.get('name') if kind == 'fixture' else f"scenario{index:03d}")
        if not isinstance(scenario_id, str) or not scenario_id:
            raise self._error("Must be a non-empty string", f"{path}.id", 'id')

        if kind == 'fixture':
            name = entry.get('name')
            if name not in FIXTURES:
                raise self._error(f"Unknown fixture {name!r}", f"{path}.name", 'name', name)
            extra = sorted(set(entry) - {'kind', 'name', 'id'})
            if extra:
                raise self._error("Fixture scenarios take only 'kind', 'name' and 'id'",
                                  f"{path}.{extra[0]}", extra[0])
            fixture = FIXTURES[name][1]
            return ScenarioSpec(kind='fixture', name=name) if scenario_id == name else \
                ScenarioSpec(kind=fixture.kind, n=fixture.n, m=fixture.m, c=fixture.c,
                             h_spec=fixture.h_spec, M_spec=fixture.M_spec,
                             seed=fixture.seed, name=scenario_id)

        for key in ('n', 'm', 'c', 'h', 'M'):
            if key not in entry:
                raise self._error("Missing required field", f"{path}.{key}", 'kind', kind)
        n = self._integer(entry['n'], f"{path}.n", minimum=1)
        m = self._integer(entry['m'], f"{path}.m", minimum=1)
        c = self._real(entry['c'], f"{path}.c")
        seed = self._integer(entry.get('seed', run_seed), f"{path}.seed", minimum=0, maximum=MAX_SEED - 1)
        h_spec = self._form(entry['h'], f"{path}.h", _H_PARAMS, H_TYPES)
        M_spec = self._form(entry['M'], f"{path}.M", _M_PARAMS, M_TYPES)
        if h_spec['type'] == 'explicit':
            self._check_explicit_h(h_spec['value'], n, 4 * m - n, f"{path}.h.value")
        if M_spec['type'] == 'explicit':
            self._check_explicit_M(M_spec['value'], n, f"{path}.M.value")
        return ScenarioSpec(kind=kind, n=n, m=m, c=c, h_spec=h_spec, M_spec=M_spec,
                            seed=seed, name=scenario_id)

    def _form(self, value: Any, path: str, params: Dict[str, set], types: Tuple[str, ...]) -> Dict[str, Any]:
        if not isinstance(value, dict) or 'type' not in value:
            raise self._error("Must be an object with a 'type'", path, path.rsplit('.', 1)[-1])
        kind = value['type']
        if kind not in types:
            raise self._error(f"Unknown type {kind!r} (allowed: {list(types)})", f"{path}.type", 'type', kind)
        expected = params[kind]
        self._reject_unknown(value, expected | {'type'}, f"{path}.")
        for key in sorted(expected):
            if key not in value:
                raise self._error("Missing required field", f"{path}.{key}", 'type', kind)
        spec = {'type': kind}
        for key in sorted(expected):
            raw = value[key]
            if key == 'lambda':
                if not isinstance(raw, list):
                    raise self._error("Must be a list", f"{path}.lambda", 'lambda')
                spec[key] = [self._real(x, f"{path}.lambda[{i}]") for i, x in enumerate(raw)]
            elif key == 'value':
                spec[key] = raw
            else:
                spec[key] = self._real(raw, f"{path}.{key}")
        if kind == 'quasi_umbilical' and spec['r'] <= 0:
            raise self._error(f"r must be positive, got {spec['r']}", f"{path}.r", 'r', value['r'])
        if kind == 'random' and spec['scale'] < 0:
            raise self._error("scale must be non-negative", f"{path}.scale", 'scale', value['scale'])
        return spec

    def _array(self, value: Any, shape: Tuple[int, ...], path: str) -> np.ndarray:
        try:
            array = np.array(value, dtype=float)
        except (TypeError, ValueError):
            raise self._error("Must be a nested list of reals", path, 'value')
        if array.shape != shape:
            raise self._error(f"Has shape {array.shape}, expected {shape}", path, 'value')
        if not np.all(np.isfinite(array)):
            raise self._error("Entries must be finite", path, 'value')
        return array

    def _check_explicit_h(self, value: Any, n: int, codim: int, path: str):
        h = self._array(value, (codim, n, n), path)
        asymmetric = np.argwhere(np.abs(h - np.swapaxes(h, 1, 2)) > SYMMETRY_TOL)
        if asymmetric.size:
            alpha, i, j = (int(x) for x in asymmetric[0])
            raise self._error(f"h is not symmetric: h[{alpha}][{i}][{j}] != h[{alpha}][{j}][{i}]",
                              path, 'value')

    def _check_explicit_M(self, value: Any, n: int, path: str):
        M = self._array(value, (n, n), path)
        asymmetric = np.argwhere(np.abs(M - M.T) > SYMMETRY_TOL)
        if asymmetric.size:
            i, j = (int(x) for x in asymmetric[0])
            raise self._error(f"M is not symmetric: M[{i}][{j}] != M[{j}][{i}]", path, 'value')


def parse_scenario_file(file_path: str, seed_override: Optional[int] = None) -> RunConfig:
    """
    Convenience function to load a scenario file.

    Args:
        file_path (str): Path to the JSON file
        seed_override (Optional[int]): Run seed replacing the file's 'seed'

    Returns:
        RunConfig: Parsed configuration
    """
    return ScenarioFileLoader(seed_override).load(file_path)


def validate_scenario_file(file_path: str) -> Tuple[bool, str]:
    """
    Convenience function to validate a scenario file.

    Returns:
        Tuple[bool, str]: (is_valid, error_message)
    """
    return ScenarioFileLoader().validate_scenario_file(file_path)
