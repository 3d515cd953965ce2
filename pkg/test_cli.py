import json

import pytest

from cli.main import build_parser, build_run_config, run
from cli.reports import dumps_report, to_jsonable
from model.errors import ConfigError


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    # the verification log and default reports land in the working directory
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _read(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


def test_jack_prints_expansion(tmp_path, capsys):
    code = run(['jack', '--N', '2', '--lam', '2,0', '--k', '1', '-o', str(tmp_path / 'jack.json')])
    assert code == 0
    assert 'm[2] + m[1,1]' in capsys.readouterr().out
    report = _read(tmp_path / 'jack.json')
    assert report['data']['expansion'] == 'm[2] + m[1,1]'
    assert report['passed']


def test_missing_kind_is_a_config_error():
    assert run(['audit', '--g', '1.0']) == 2


def test_unknown_config_field(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'command': 'audit', 'model': {'kind': 'I', 'N': 2, 'g': 1.0}, 'bogus': 1}))
    assert run(['audit', '--config', str(path)]) == 2

    path.write_text(json.dumps({'kind': 'I', 'N': 2, 'g': 1.0, 'mass': 2.0}))
    assert run(['audit', '--config', str(path)]) == 2


def test_config_for_another_command(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'command': 'scatter', 'model': {'kind': 'I', 'N': 2, 'g': 1.0}}))
    assert run(['audit', '--config', str(path)]) == 2


def test_bad_arguments():
    assert run(['teleport']) == 2
    assert run(['audit', '--kind', 'I', '--g', '1', '--seed', '-1']) == 2
    assert run(['ba', '--N', '2', '--m', '1.5']) == 2


def test_flags_override_config_file(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'model': {'kind': 'III', 'N': 3, 'g': 1.0, 'a': 1.0}, 'params': {'T': 2.0},
                                'seed': 5}))
    args = build_parser().parse_args(['simulate', '--config', str(path), '--g', '2.5', '--T', '4'])
    config = build_run_config(args)
    assert config.model.g == 2.5
    assert config.model.N == 3
    assert config.params['T'] == 4.0
    assert config.seed == 5


def test_ba_reads_integer_m():
    args = build_parser().parse_args(['ba', '--N', '3', '--m', '2'])
    config = build_run_config(args)
    assert config.model is None
    assert config.params == {'N': 3, 'm': 2.0}


def test_simulate_writes_csv(tmp_path):
    csv_path = tmp_path / 'out' / 'traj.csv'
    code = run(['simulate', '--kind', 'I', '--N', '2', '--g', '1.0', '--T', '1.0', '-o', str(csv_path)])
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == 't,x1,x2,p1,p2'
    assert len(lines) > 2
    assert float(lines[1].split(',')[0]) == 0.0
    report = _read(tmp_path / 'out' / 'traj.json')
    assert report['command'] == 'simulate'
    assert [c['name'] for c in report['checks']] == ['min_gap']


def test_ba_report(tmp_path):
    path = tmp_path / 'ba.json'
    assert run(['ba', '--N', '2', '--m', '1', '-o', str(path)]) == 0
    report = _read(path)
    assert report['data']['rational_phase'] == 1
    assert report['data']['antisymmetrization_defects'] == []
    assert {c['name']: c['value'] for c in report['checks']}['antisymmetrization'] == 0
    assert report['failed'] == 0


@pytest.mark.parametrize('kind', ['II', 'III'])
def test_audit_brackets_for_periodic_and_hyperbolic_kinds(tmp_path, kind):
    path = tmp_path / 'audit.json'
    run(['audit', '--kind', kind, '--N', '3', '--g', '1', '--a', '1', '--T', '1', '-o', str(path)])
    checks = {c['name']: c for c in _read(path)['checks']}
    assert checks['power_trace_brackets']['passed']
    assert checks['power_trace_brackets']['value'] < 1e-6


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    for path in (first, second):
        run(['duality', '--kind', 'I', '--N', '3', '--g', '1.0', '--states', '2', '--couplings', '1.0',
             '--seed', '11', '-o', str(path)])
    assert first.read_bytes() == second.read_bytes()


def test_scatter_needs_unbounded_motion():
    assert run(['scatter', '--kind', 'III', '--N', '2', '--g', '1.0', '--a', '1.0']) == 2


def test_failed_run_still_writes_report(tmp_path):
    """Equal free momenta have no ordered asymptotics: the error is recorded and the exit code is 1"""
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'model': {'kind': 'I', 'N': 2, 'g': 0.0},
                                  'params': {'state': {'x': [1.0, -1.0], 'p': [0.5, 0.5]}}}))
    path = tmp_path / 'scatter.json'
    assert run(['scatter', '--config', str(config), '-o', str(path)]) == 1
    report = _read(path)
    assert not report['passed']
    assert report['checks'][0]['name'] == 'scattering_data'
    assert 'error' in report['checks'][0]


def test_jsonable_values():
    assert to_jsonable({'z': 1 + 2j, 'nan': float('nan'), 't': (1, 2)}) == {
        'z': {'re': 1.0, 'im': 2.0}, 'nan': 'nan', 't': [1, 2]}
    assert dumps_report({'b': 0.1, 'a': 1}) == '{\n  "a": 1,\n  "b": 0.1\n}\n'


def test_unknown_kind():
    args = build_parser().parse_args(['audit', '--kind', 'V', '--g', '1'])
    with pytest.raises(ConfigError):
        build_run_config(args)
