#!/usr/bin/env python3
"""
Test script for the suite runner, the report writer and the command line.

Runs small suites on fixtures, writes CSV/JSON/Excel reports and reads them
back, and drives the CLI through its exit codes (0 clean, 1 violation,
2 input error).
"""

import sys
import os
import json

import openpyxl
import pytest

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import core.inequality_suite as inequality_suite
from cli.cclab_cli import CclabCLI
from core.report_writer import COLUMNS, ReportWriter, emit_report, format_real, load_report
from core.scenario_lab import fixture_spec, random_spec
from core.suite_runner import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATION, SuiteRunner, default_r_grid


def small_runner(**kwargs):
    settings = {'checks': ['A1', 'A2', 'B1'], 'r_grid': [6], 'samples': 2, 'optimizer_starts': 8}
    settings.update(kwargs)
    return SuiteRunner(**settings)


def write_config(tmp_path, payload):
    path = tmp_path / "scenarios.json"
    path.write_text(json.dumps(payload), encoding='utf-8')
    return str(path)


def test_default_r_grid():
    assert default_r_grid(4) == [1, 6, 11, 13, 24]
    assert default_r_grid(3) == [1, 3, 5, 7, 12]


def test_runner_rejects_bad_settings():
    with pytest.raises(ValueError):
        SuiteRunner(checks=['A7'])
    with pytest.raises(ValueError):
        SuiteRunner(checks=[])
    with pytest.raises(ValueError):
        SuiteRunner(r_grid=[6, 0])
    with pytest.raises(ValueError):
        SuiteRunner(optimizer_starts=0)

    runner = SuiteRunner()
    with pytest.raises(ValueError):
        runner.update_settings(colour='red')
    runner.update_settings(samples=3, r_grid=[2])
    assert runner.samples == 3
    assert runner.r_values(5) == [2.0]


def test_rows_per_subcase():
    rows = small_runner(checks=['A1', 'A3']).run_scenario(fixture_spec('S1'))

    subcases = [(row['check'], row['subcase']) for row in rows]
    assert subcases[0] == ('A1', 'point')
    assert ('A3', 'plane(0,1)') in subcases
    assert ('A3', 'sample001') in subcases
    assert len(rows) == 1 + 6 + 2
    assert all(row['scenario_id'] == 'S1' for row in rows)


def test_inapplicable_checks_are_skipped():
    rows = small_runner(checks=['A4', 'A5']).run_scenario(fixture_spec('S0'))
    assert [row['check'] for row in rows] == ['A4']

    flat = small_runner(checks=['A1', 'A3', 'B1']).run_scenario(random_spec(n=2, m=1, c=1.0, seed=0))
    assert [row['check'] for row in flat] == ['A1']


def test_umbilical_B1_row():
    rows = small_runner(checks=['B1']).run_scenario(fixture_spec('S1'))
    assert len(rows) == 1
    assert rows[0]['subcase'] == 'r=6'
    assert rows[0]['slack'] == pytest.approx(1.5)
    assert rows[0]['holds']


def test_hessian_rows():
    rows = small_runner(checks=['HESS']).run_scenario(fixture_spec('S0'))
    assert [row['subcase'] for row in rows] == [
        'n=4,r=6,lambda0', 'n=4,r=6,lambda1', 'n=4,r=6,lambda2', 'n=4,r=6,lambda3', 'n=4,r=6,psd']
    assert all(row['holds'] for row in rows)


def test_fixture_suite_is_clean():
    runner = SuiteRunner(r_grid=[1, 6, 11, 13, 24], samples=2, optimizer_starts=16)
    specs = [fixture_spec(name) for name in ('S0', 'S1', 'S2', 'S0_neg', 'QU', 'AI')]
    summary = runner.run_suite(specs)

    assert summary['exit_code'] == EXIT_OK
    assert summary['violations'] == 0
    assert summary['errors'] == 0
    assert summary['total'] == len(summary['rows'])
    quasi = [row for row in summary['rows']
             if row['scenario_id'] == 'QU' and row['check'] == 'B1' and row['subcase'] == 'r=6']
    assert quasi[0]['equality']
    assert quasi[0]['equality_case'] == 'quasi_umbilical(6)'


def test_violation_sets_exit_code(monkeypatch):
    failing = inequality_suite.InequalityReport(name='A1', lhs=2.0, rhs_canonical=1.0, slack=-1.0, holds=False)
    monkeypatch.setattr(inequality_suite, 'check_A1', lambda point: failing)
    summary = small_runner(checks=['A1']).run_suite([fixture_spec('S0')])

    assert summary['violations'] == 1
    assert summary['exit_code'] == EXIT_VIOLATION


def test_check_errors_become_rows(monkeypatch):
    def explode(point):
        raise RuntimeError("boom")

    monkeypatch.setattr(inequality_suite, 'check_A1', explode)
    summary = small_runner(checks=['A1']).run_suite([fixture_spec('S0')])

    row = summary['rows'][0]
    assert row['subcase'] == 'error'
    assert 'boom' in row['notes']
    assert summary['errors'] == 1
    assert summary['exit_code'] == EXIT_VIOLATION


def test_unbuildable_scenario_aborts_the_run():
    with pytest.raises(ValueError, match="cannot be built"):
        small_runner().run_suite([random_spec(n=9, m=2, c=1.0, seed=0)])


def test_format_real():
    assert format_real(None) == ''
    assert format_real(0.1) == '0.10000000000000001'
    assert float(format_real(1.0 / 3.0)) == 1.0 / 3.0


def test_csv_round_trip(tmp_path):
    rows = small_runner().run_suite([fixture_spec('S1'), fixture_spec('QU')])['rows']
    path = emit_report(rows, 'csv', str(tmp_path / "report.csv"))

    lines = path.read_text(encoding='utf-8').splitlines()
    assert lines[0] == ','.join(COLUMNS)
    assert len(lines) == len(rows) + 1

    loaded = load_report(str(path))
    expected = sorted(rows, key=lambda row: (row['scenario_id'], row['check'], row['subcase']))
    for got, want in zip(loaded, expected):
        for column in COLUMNS:
            assert got[column] == want[column], column


def test_json_report_keeps_assertion_flags(tmp_path):
    rows = small_runner(checks=['A1']).run_suite([fixture_spec('S1')])['rows']
    path = emit_report(rows, 'json', str(tmp_path / "nested" / "report.json"))

    payload = json.loads(path.read_text(encoding='utf-8'))
    assert payload['columns'] == COLUMNS
    assert payload['rows'][0]['asserted'] is True
    assert payload['rows'][0]['lhs'] == rows[0]['lhs']

    loaded = load_report(str(path))
    assert loaded[0]['equality_case'] == 'totally_umbilical'
    assert loaded[0]['rhs_variant'] is None


def test_json_reals_keep_seventeen_digits(tmp_path):
    row = {'scenario_id': 'x', 'check': 'A1', 'subcase': '-', 'lhs': 0.1, 'rhs_canonical': 1.0 / 3.0,
           'rhs_variant': None, 'slack': float('nan'), 'holds': True, 'equality': False,
           'equality_case': 'none', 'seed': 0, 'asserted': True, 'notes': ''}
    path = emit_report([row], 'json', str(tmp_path / "digits.json"))
    text = path.read_text(encoding='utf-8')

    assert '"lhs": 0.10000000000000001' in text
    assert '"rhs_canonical": 0.33333333333333331' in text
    assert '"slack": "nan"' in text
    assert json.loads(text)['rows'][0]['lhs'] == 0.1
    loaded = load_report(str(path))[0]
    assert (loaded['lhs'], loaded['rhs_canonical']) == (0.1, 1.0 / 3.0)


def test_excel_report_has_styled_header(tmp_path):
    rows = small_runner(checks=['A1']).run_suite([fixture_spec('S0')])['rows']
    path = ReportWriter(str(tmp_path / "report.xlsx"), 'xlsx').write(rows)

    worksheet = openpyxl.load_workbook(str(path)).active
    assert [cell.value for cell in worksheet[1]] == COLUMNS
    assert worksheet['A1'].font.bold
    assert worksheet['A2'].value == 'S0'


def test_unknown_report_format():
    with pytest.raises(ValueError):
        ReportWriter("report.txt", 'txt')
    with pytest.raises(ValueError):
        load_report("report.txt")


def test_identical_runs_give_identical_reports():
    specs = [fixture_spec('S2'), random_spec(n=3, m=2, c=-1.0, seed=5)]
    first = ReportWriter("unused.csv", 'csv').render(small_runner(seed=4).run_suite(specs)['rows'])
    second = ReportWriter("unused.csv", 'csv').render(small_runner(seed=4).run_suite(specs)['rows'])
    assert first == second


def test_cli_check_clean_run(tmp_path, capsys):
    config = write_config(tmp_path, {'scenarios': ['S1', 'AI'], 'checks': ['A1', 'A5', 'COR'],
                                     'samples': 1, 'optimizer_starts': 8})
    out = tmp_path / "report.csv"
    code = CclabCLI().run(['--no-color', 'check', '--config', config, '--out', str(out)])

    assert code == EXIT_OK
    assert out.exists()
    assert '[PASS]' in capsys.readouterr().out


def test_cli_check_violation(tmp_path, monkeypatch, capsys):
    failing = inequality_suite.InequalityReport(name='A1', lhs=2.0, rhs_canonical=1.0, slack=-1.0, holds=False)
    monkeypatch.setattr(inequality_suite, 'check_A1', lambda point: failing)
    config = write_config(tmp_path, {'scenarios': ['S0'], 'checks': ['A1']})
    code = CclabCLI().run(['--no-color', 'check', '--config', config, '--out', str(tmp_path / "r.json"),
                           '--format', 'json'])

    assert code == EXIT_VIOLATION
    assert '[FAIL]' in capsys.readouterr().out


def test_cli_check_input_errors(tmp_path, monkeypatch):
    bad = write_config(tmp_path, {'scenarios': ['S0'], 'checks': ['A0']})
    assert CclabCLI().run(['--no-color', 'check', '--config', bad, '--out', 'x.csv']) == EXIT_INPUT_ERROR
    missing = str(tmp_path / "missing.json")
    assert CclabCLI().run(['--no-color', 'check', '--config', missing, '--out', 'x.csv']) == EXIT_INPUT_ERROR

    no_output = write_config(tmp_path, {'scenarios': ['S0'], 'checks': ['A1']})
    assert CclabCLI().run(['--no-color', 'check', '--config', no_output]) == EXIT_INPUT_ERROR

    monkeypatch.setenv('CCLAB_SEED', 'abc')
    good = write_config(tmp_path, {'scenarios': ['S0'], 'checks': ['A1']})
    assert CclabCLI().run(['--no-color', 'check', '--config', good,
                           '--out', str(tmp_path / "r.csv")]) == EXIT_INPUT_ERROR


def test_cli_seed_override_changes_random_scenarios(tmp_path, monkeypatch):
    config = write_config(tmp_path, {
        'scenarios': [{'id': 'rnd', 'kind': 'random', 'n': 3, 'm': 2, 'c': 1.0,
                       'h': {'type': 'random', 'scale': 1.0}, 'M': {'type': 'random', 'scale': 0.3}}],
        'checks': ['A1'],
        'seed': 0,
    })

    def run_with_seed(seed, name):
        monkeypatch.setenv('CCLAB_SEED', seed)
        out = str(tmp_path / name)
        assert CclabCLI().run(['--no-color', 'check', '--config', config, '--out', out]) == EXIT_OK
        return load_report(out)[0]

    first = run_with_seed('5', "five.csv")
    second = run_with_seed('99', "ninety_nine.csv")
    again = run_with_seed('5', "five_again.csv")

    assert (first['seed'], second['seed']) == (5, 99)
    assert first['lhs'] != second['lhs']
    assert again['lhs'] == first['lhs']


def test_cli_usage_error_exits_with_two():
    with pytest.raises(SystemExit) as excinfo:
        CclabCLI().run([])
    assert excinfo.value.code == 2


def test_cli_fixtures(capsys):
    assert CclabCLI().run(['--no-color', 'fixtures', '--list']) == EXIT_OK
    listing = capsys.readouterr().out
    assert 'S0_neg' in listing
    assert 'quasi-umbilical' in listing

    assert CclabCLI().run(['--no-color', '--quiet', 'fixtures', '--show', 'S1']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['n'] == 4
    assert data['h'][0][0][0] == 1.0


def test_cli_hessian(capsys):
    assert CclabCLI().run(['--no-color', 'hessian', '--n', '4', '--r', '6']) == EXIT_OK
    assert 'zero multiplicity=1' in capsys.readouterr().out
    assert CclabCLI().run(['--no-color', 'hessian', '--n', '2', '--r', '6']) == EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
