"""Tests for main module functionality."""
import json
from unittest.mock import patch

import pytest

from slocc import __version__
from slocc.main import COMMANDS, main, parse_args
from slocc.serializers import parse_state
from slocc.states import gen_chi, gen_ghz


def test_parse_args_defaults():
    """Defaults of the seeded commands."""
    args = parse_args(['check-covariance', 'state.json'])
    assert args.kind == 'all'
    assert args.trials == 20
    assert args.seed == 0
    assert args.backend is None
    assert not args.per_qubit
    assert args.output is None


def test_parse_args_numeric_options():
    args = parse_args(['compare', 'a.json', 'b.json', '--backend', 'float',
                       '--zero-factor', '1e-8', '-o', 'out.json'])
    assert args.backend == 'float'
    assert args.zero_factor == 1e-8
    assert args.output == 'out.json'


def test_parse_args_kind_aliases():
    assert parse_args(['measure', 'a.json', '--kind', 'omega']).kind == 'IV'
    assert parse_args(['check-covariance', 'a.json', '--kind', '2']).kind == 'II'


def test_every_command_has_a_handler():
    parser_commands = {'gen', 'invariants', 'signature', 'compare', 'check-covariance',
                       'measure', 'table', 'independence'}
    assert set(COMMANDS) == parser_commands


def test_version(run_cli):
    code, out, _ = run_cli('--version')
    assert code == 0
    assert __version__ in out


@pytest.mark.parametrize("argv", [
    [],
    ['compare', 'only_one.json'],
    ['check-covariance', 'a.json', '--trials', '0'],
    ['measure', 'a.json', '--kind', 'V'],
    ['measure', 'a.json', '--kind', 'all'],
    ['measure', 'a.json'],
    ['table', '--n', 'x'],
    ['independence', '--n', '4', '--samples', '0'],
    ['check-covariance', 'a.json', '--trials', '-1'],
    ['check-covariance', 'a.json', '--kind', 'five'],
    ['signature', 'a.json', '--backend', 'quad'],
    ['signature', 'a.json', '--zero-factor', '-1'],
])
def test_usage_errors(run_cli, argv):
    code, _, _ = run_cli(*argv)
    assert code == 2


def test_main_uses_sys_argv(ghz4_file):
    with patch('sys.argv', ['slocc', 'signature', ghz4_file]):
        assert main() == 0


class TestGen:

    def test_gen_to_stdout(self, run_cli):
        code, out, err = run_cli('gen', '--family', 'chi1', '--n', '4')
        assert code == 0
        assert parse_state(out) == gen_chi(1, 4)
        assert 'chi1' in err

    def test_gen_dicke(self, run_cli):
        code, out, _ = run_cli('gen', '--family', 'dicke', '-n', '6', '-l', '3')
        assert code == 0
        assert parse_state(out).label == 'dicke(3,6)'

    def test_gen_to_file(self, run_cli, tmp_path):
        target = tmp_path / 'ghz.json'
        code, out, _ = run_cli('gen', '--family', 'ghz', '--n', '4', '-o', target)
        assert code == 0
        assert out == ''
        assert parse_state(target.read_text()) == gen_ghz(4)

    @pytest.mark.parametrize("argv", [
        ['--family', 'bell', '--n', '4'],
        ['--family', 'ghz', '--n', '3'],
        ['--family', 'dicke', '--n', '4'],
        ['--family', 'chi7', '--n', '2'],
    ])
    def test_gen_errors(self, run_cli, argv):
        code, out, err = run_cli('gen', *argv)
        assert code == 1
        assert out == ''
        assert 'Error' in err


class TestAnalysisCommands:

    def test_invariants_exact(self, run_cli, state_file):
        code, out, _ = run_cli('invariants', state_file(gen_chi(1, 4)))
        assert code == 0
        document = json.loads(out)
        assert document['backend'] == 'exact'
        assert document['invariants'][0]['normalized'] == {'re': '-1/16', 'im': '0/1'}

    def test_invariants_float(self, run_cli, state_file):
        code, out, _ = run_cli('invariants', state_file(gen_chi(1, 4)), '--backend', 'float')
        assert code == 0
        theta = json.loads(out)['invariants'][0]
        assert theta['raw']['log_magnitude'] == pytest.approx(0.0, abs=1e-12)
        assert theta['is_zero'] is False

    def test_signature(self, run_cli, state_file):
        code, out, _ = run_cli('signature', state_file(gen_chi(3, 4)))
        assert code == 0
        invariants = json.loads(out)['signature']['invariants']
        assert invariants[0]['is_zero'] is True
        assert invariants[1]['is_zero'] is False

    def test_compare_inconclusive(self, run_cli, ghz4_file, w4_file):
        code, out, err = run_cli('compare', ghz4_file, w4_file)
        assert code == 3
        assert json.loads(out)['verdict'] == 'inconclusive'
        assert 'Inconclusive' in err

    def test_compare_inequivalent(self, run_cli, state_file):
        code, out, _ = run_cli('compare', state_file(gen_chi(1, 4)), state_file(gen_chi(3, 4)))
        assert code == 0
        document = json.loads(out)
        assert document['verdict'] == 'inequivalent'
        assert 'I' in document['separating_kinds']

    def test_compare_missing_file(self, run_cli, ghz4_file, tmp_path):
        code, _, err = run_cli('compare', ghz4_file, tmp_path / 'missing.json')
        assert code == 1
        assert 'Error' in err

    def test_compare_bad_document(self, run_cli, ghz4_file, tmp_path):
        bad = tmp_path / 'bad.json'
        bad.write_text('{"format": "sparse-rational", "n": 4, "amplitudes": [{"index": 16}]}')
        code, _, err = run_cli('compare', ghz4_file, bad)
        assert code == 1
        assert 'amplitudes.0.index' in err

    def test_measure(self, run_cli, state_file):
        code, out, _ = run_cli('measure', state_file(gen_chi(1, 4)), '--kind', 'I')
        assert code == 0
        assert json.loads(out)['squared'] == '1/256'

    def test_table(self, run_cli):
        code, out, _ = run_cli('table', '--n', '4')
        assert code == 0
        rows = json.loads(out)['rows']
        assert rows[0]['label'] == 'ghz'
        assert rows[0]['zeros'] == [True] * 4

    def test_capacity_exceeded(self, run_cli, state_file, monkeypatch):
        monkeypatch.setattr('slocc.determinants.EXACT_MAX_DIM', 2)
        code, _, err = run_cli('invariants', state_file(gen_chi(1, 4)))
        assert code == 1
        assert 'Error' in err


class TestCovarianceCommand:

    def test_chi5_six_qubits(self, run_cli, state_file):
        code, out, _ = run_cli('check-covariance', state_file(gen_chi(5, 6)),
                               '--kind', 'all', '--trials', '50', '--seed', '7')
        assert code == 0
        document = json.loads(out)
        assert document['passed'] is True
        assert document['checks'] == 200
        assert document['failures'] == 0

    def test_per_qubit(self, run_cli, state_file):
        code, out, _ = run_cli('check-covariance', state_file(gen_chi(1, 4)),
                               '--kind', '1', '--trials', '2', '--per-qubit')
        assert code == 0
        results = json.loads(out)['results']
        assert [r['qubit'] for r in results] == [None, None, 0, 1, 2, 3]

    def test_float_backend(self, run_cli, state_file):
        code, out, _ = run_cli('check-covariance', state_file(gen_chi(2, 6)),
                               '--trials', '3', '--backend', 'float')
        assert code == 0
        assert json.loads(out)['backend'] == 'float'

    def test_byte_identical_reruns(self, run_cli, state_file, tmp_path):
        source = state_file(gen_chi(3, 4))
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        assert run_cli('check-covariance', source, '--trials', '5', '--seed', '11', '-o', first)[0] == 0
        assert run_cli('check-covariance', source, '--trials', '5', '--seed', '11', '-o', second)[0] == 0
        assert first.read_bytes() == second.read_bytes()


class TestIndependenceCommand:

    def test_six_qubits(self, run_cli):
        code, out, _ = run_cli('independence', '--n', '6', '--samples', '8', '--seed', '1')
        assert code == 0
        assert json.loads(out)['rank'] == 4

    def test_four_qubits_inconclusive(self, run_cli):
        code, out, _ = run_cli('independence', '--n', '4')
        assert code == 1
        assert json.loads(out)['independent'] is False


class TestErrorExits:

    @pytest.fixture
    def bad_file(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{"format": "sparse-rational", "n": 3, "amplitudes": [{"index": 0, "re": "1"}]}')
        return str(path)

    @pytest.mark.parametrize("argv", [
        ['invariants', '{file}'],
        ['signature', '{file}'],
        ['measure', '{file}', '--kind', 'I'],
        ['check-covariance', '{file}', '--trials', '1'],
    ])
    def test_malformed_state_file(self, run_cli, bad_file, argv):
        code, out, err = run_cli(*[a.format(file=bad_file) for a in argv])
        assert code == 1
        assert out == ''
        assert 'Error' in err

    @pytest.mark.parametrize("argv", [
        ['table', '--n', '3'],
        ['independence', '--n', '5'],
    ])
    def test_odd_qubit_count(self, run_cli, argv):
        code, out, err = run_cli(*argv)
        assert code == 1
        assert out == ''
        assert 'Error' in err

    def test_failed_covariance_check(self, run_cli, state_file, monkeypatch):
        monkeypatch.setattr('slocc.operators.LOG_TOLERANCE', -1.0)
        code, out, err = run_cli('check-covariance', state_file(gen_chi(1, 4)),
                                 '--kind', 'I', '--trials', '2', '--backend', 'float')
        assert code == 1
        document = json.loads(out)
        assert document['passed'] is False
        assert document['failures'] == 2
        assert 'failed' in err
