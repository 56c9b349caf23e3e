#!/usr/bin/env python3
"""
Test script for scenario file parsing.

Valid files become RunConfig objects; every schema violation raises a
ScenarioFileError that names the offending field (and line, when it can be
located).
"""

import sys
import os
import json
from pathlib import Path

import pytest

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from core.scenario_lab import ScenarioKind
from utils.scenario_file import (
    ScenarioFileError,
    ScenarioFileLoader,
    ScenarioFileNotFound,
    parse_scenario_file,
    validate_scenario_file,
)

SCENARIO_DIR = Path(__file__).parent / "scenarios"


def loads(payload):
    text = payload if isinstance(payload, str) else json.dumps(payload)
    return ScenarioFileLoader().loads(text)


def test_fixture_names_become_fixture_scenarios():
    config = loads({'scenarios': ['S0', 'QU'], 'checks': ['A1', 'B1', 'A1']})

    assert [spec.name for spec in config.scenarios] == ['S0', 'QU']
    assert all(spec.kind is ScenarioKind.FIXTURE for spec in config.scenarios)
    assert config.checks == ['A1', 'B1']
    assert config.r_grid is None
    assert config.samples == 8
    assert config.optimizer_starts == 64
    assert config.output_path is None
    assert config.output_format == 'csv'


def test_custom_scenario_inherits_run_seed():
    config = loads({
        'scenarios': [{'id': 'rnd', 'kind': 'random', 'n': 3, 'm': 2, 'c': -1,
                       'h': {'type': 'random', 'scale': 0.5}, 'M': {'type': 'zero'}}],
        'checks': ['A1'],
        'seed': 99,
        'r_grid': [1, 2.5],
        'output': {'path': 'out.json', 'format': 'json'},
    })
    spec = config.scenarios[0]

    assert spec.kind is ScenarioKind.RANDOM
    assert spec.seed == 99
    assert spec.c == -1.0
    assert spec.h_spec == {'type': 'random', 'scale': 0.5}
    assert config.r_grid == [1.0, 2.5]
    assert (config.output_path, config.output_format) == ('out.json', 'json')


def test_seed_override_reaches_scenarios():
    payload = {
        'scenarios': [
            {'id': 'inherits', 'kind': 'random', 'n': 3, 'm': 2, 'c': 1.0,
             'h': {'type': 'random', 'scale': 1.0}, 'M': {'type': 'random', 'scale': 0.3}},
            {'id': 'pinned', 'kind': 'random', 'n': 3, 'm': 2, 'c': 1.0,
             'h': {'type': 'random', 'scale': 1.0}, 'M': {'type': 'random', 'scale': 0.3}, 'seed': 7},
        ],
        'checks': ['A1'],
        'seed': 99,
    }
    config = ScenarioFileLoader(seed_override=5).loads(json.dumps(payload))

    assert config.seed == 5
    assert [spec.seed for spec in config.scenarios] == [5, 7]
    assert [spec.seed for spec in loads(payload).scenarios] == [99, 7]


def test_renamed_fixture_object():
    config = loads({'scenarios': [{'kind': 'fixture', 'name': 'S1', 'id': 'umbilical'}], 'checks': ['A1']})
    spec = config.scenarios[0]
    assert spec.name == 'umbilical'
    assert spec.kind is ScenarioKind.INVARIANT
    assert spec.h_spec == {'type': 'umbilical', 'lambda': [1.0]}


@pytest.mark.parametrize("payload,field", [
    ({'scenarios': ['S0']}, 'checks'),
    ({'scenarios': ['S0'], 'checks': ['A1', 'A9']}, 'checks[1]'),
    ({'scenarios': ['S0'], 'checks': []}, 'checks'),
    ({'scenarios': ['S7'], 'checks': ['A1']}, 'scenarios[0]'),
    ({'scenarios': ['S0'], 'checks': ['A1'], 'colour': 'red'}, 'colour'),
    ({'scenarios': ['S0'], 'checks': ['A1'], 'r_grid': [6, -1]}, 'r_grid[1]'),
    ({'scenarios': ['S0'], 'checks': ['A1'], 'samples': 2.5}, 'samples'),
    ({'scenarios': ['S0'], 'checks': ['A1'], 'seed': -3}, 'seed'),
    ({'scenarios': ['S0'], 'checks': ['A1'], 'output': {'format': 'pdf'}}, 'output.format'),
    ({'scenarios': [{'kind': 'random', 'n': 3, 'm': 2, 'c': 1, 'h': {'type': 'zero'}}], 'checks': ['A1']},
     'scenarios[0].M'),
    ({'scenarios': [{'kind': 'random', 'n': 3, 'm': 2, 'c': 1, 'h': {'type': 'spiral'}, 'M': {'type': 'zero'}}],
      'checks': ['A1']}, 'scenarios[0].h.type'),
    ({'scenarios': [{'kind': 'random', 'n': 3, 'm': 2, 'c': 1, 'h': {'type': 'quasi_umbilical', 'u': 1, 'r': 0},
                     'M': {'type': 'zero'}}], 'checks': ['A1']}, 'scenarios[0].h.r'),
    ({'scenarios': [{'kind': 'torus', 'n': 3}], 'checks': ['A1']}, 'scenarios[0].kind'),
])
def test_schema_violations_name_the_field(payload, field):
    with pytest.raises(ScenarioFileError) as excinfo:
        loads(payload)
    assert excinfo.value.field == field
    assert f"field '{field}'" in str(excinfo.value)


def test_duplicate_ids_rejected():
    payload = {'scenarios': ['S0', {'kind': 'fixture', 'name': 'S0'}], 'checks': ['A1']}
    with pytest.raises(ScenarioFileError, match="Duplicate"):
        loads(payload)


def test_asymmetric_M_is_located():
    text = "\n".join([
        '{',
        '  "scenarios": [',
        '    {"id": "bad", "kind": "random", "n": 2, "m": 1, "c": 1.0,',
        '     "h": {"type": "zero"},',
        '     "M": {"type": "explicit", "value": [[0.0, 1.0], [0.5, 0.0]]}}',
        '  ],',
        '  "checks": ["A1"]',
        '}',
    ])
    with pytest.raises(ScenarioFileError) as excinfo:
        loads(text)

    error = excinfo.value
    assert error.field == 'scenarios[0].M.value'
    assert error.line == 5
    assert 'M[0][1] != M[1][0]' in str(error)
    assert str(error).startswith("line 5, field 'scenarios[0].M.value'")


def test_explicit_h_with_wrong_shape():
    payload = {'scenarios': [{'kind': 'random', 'n': 2, 'm': 1, 'c': 1,
                              'h': {'type': 'explicit', 'value': [[[0.0]]]}, 'M': {'type': 'zero'}}],
               'checks': ['A1']}
    with pytest.raises(ScenarioFileError, match="shape"):
        loads(payload)


def test_invalid_json_reports_a_line():
    with pytest.raises(ScenarioFileError) as excinfo:
        loads('{\n  "scenarios": ["S0",\n  "checks": ["A1"]\n}')
    assert 'Invalid JSON' in str(excinfo.value)
    assert excinfo.value.line is not None


def test_missing_file(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ScenarioFileNotFound):
        parse_scenario_file(str(missing))
    valid, message = validate_scenario_file(str(missing))
    assert not valid
    assert 'does not exist' in message


def test_shipped_scenario_files_parse():
    fixtures = parse_scenario_file(str(SCENARIO_DIR / "fixtures.json"))
    assert [spec.name for spec in fixtures.scenarios] == ['S0', 'S1', 'S2', 'S0_neg', 'QU', 'AI']
    assert fixtures.source.endswith("fixtures.json")

    assert validate_scenario_file(str(SCENARIO_DIR / "random.json")) == (True, "File is valid")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
