import json

import pytest

from src.cli import build_parser, run
from src.constants import NOT_CONCORDANT


def output(capsys, *argv):
    status = run(list(argv))
    captured = capsys.readouterr()
    return status, captured.out.strip(), captured.err.strip()


def test_family_determinant(capsys):
    assert output(capsys, 'det', '--family-n', '0')[:2] == (0, '15')
    assert output(capsys, 'det', '--family-n', '-3')[:2] == (0, '1')


def test_braid_invariants(capsys):
    assert output(capsys, 'signature', '--braid', '1 1 1')[:2] == (0, '-2')
    assert output(capsys, 'alexander', '--braid', '1 -2 1 -2')[:2] == (0, '-t^-1 + 3 - t')


def test_pattern_normalize(capsys):
    assert output(capsys, 'pattern', '--expr', 'dual(J)', '--normalize')[:2] == (0, 'twist(-4, J)')
    assert output(capsys, 'pattern', '--expr', 'twist(1, J)', '--trace-partner', '0')[:2] == (0, 'twist(-5, J)')


def test_pattern_json(capsys):
    status, out, _ = output(capsys, '--format', 'json', 'pattern', '--expr', 'J', '--inverse')
    assert status == 0
    payload = json.loads(out)
    assert payload['result'] == 'twist(4, bar(J))'
    assert payload['operation'] == 'inverse'
    assert payload['windingNumber'] == 1


def test_negative_fraction_is_a_value(capsys):
    assert output(capsys, 'cf', '--frac', '-1/4')[:2] == (0, '[-1, -2, -2, -2]')


def test_json_output_is_deterministic(capsys):
    first = output(capsys, '--format', 'json', 'obstruct', '--k', '2')
    second = output(capsys, '--format', 'json', 'obstruct', '--k', '2')
    assert first[0] == 0
    assert first[1] == second[1]
    assert json.loads(first[1])['verdict'] == NOT_CONCORDANT


def test_obstruct_text(capsys):
    status, out, _ = output(capsys, 'obstruct', '--k', '1')
    assert status == 0
    assert 'd(Y-2) <= d(Y0) = -2 < 0 = d(Y1)' in out


def test_lattice_check(tmp_path, capsys):
    path = tmp_path / 'q2.json'
    path.write_text(json.dumps({'matrix': [[-1, -1], [-1, -2]]}))
    status, out, _ = output(capsys, '--format', 'json', 'lattice', '--matrix', str(path), '--check', 'char-max')
    assert status == 0
    assert json.loads(out)['charSquare'] == -2
    assert output(capsys, 'lattice', '--matrix', str(path), '--check', 'definiteness')[1] == 'negative-definite'


def test_chain_command(tmp_path, capsys):
    path = tmp_path / 'eta.json'
    path.write_text(json.dumps({'components': [{'name': 'eta', 'coeff': '-1/3', 'writhe': 0, 'links': {}}]}))
    status, out, _ = output(capsys, '--format', 'json', 'chain', '--diagram', str(path), '--component', 'eta')
    assert status == 0
    assert json.loads(out)['linkingMatrix'] == [[-1, -1, 0], [-1, -2, -1], [0, -1, -2]]


def test_lift_command(capsys):
    status, out, _ = output(capsys, '--format', 'json', 'lift', '--coeff', '-1/6', '--branch-lk', '1',
                            '--lift-writhe', '0')
    assert status == 0
    assert json.loads(out)['lifts'] == [{'m': -1, 'b': 3, 'writhe': 0, 'coefficient': '-1/3'}]


def test_domain_errors_exit_one(capsys, tmp_path):
    status, _, err = output(capsys, 'cf', '--frac', '1/0')
    assert status == 1
    assert err.startswith('InvalidFraction:')

    status, _, err = output(capsys, 'lift', '--coeff', '-1/3', '--branch-lk', '1', '--lift-writhe', '0')
    assert status == 1
    assert err.startswith('OddHalving:')

    status, _, err = output(capsys, 'lattice', '--matrix', str(tmp_path / 'missing.json'), '--check', 'definiteness')
    assert status == 1
    assert err.startswith('FileNotFoundError:')

    path = tmp_path / 'fractional.json'
    path.write_text(json.dumps({'matrix': [[-1.9]]}))
    status, _, err = output(capsys, 'lattice', '--matrix', str(path), '--check', 'definiteness')
    assert status == 1
    assert err.startswith('InvalidMatrix:')


@pytest.mark.parametrize('argv', [
    ['obstruct', '--k', '0'],
    ['obstruct'],
    ['frobnicate'],
    ['pattern', '--expr', 'J', '--dual', '--bar'],
    ['det', '--braid', '1 1 1', '--family-n', '1'],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(argv) == 2


def test_parser_accepts_negative_family_members():
    args = build_parser().parse_args(['slice', '--family-n', '-5'])
    assert args.family_n == -5


@pytest.mark.parametrize('argv, value', [
    (['cf', '--frac', '-1/4'], '-1/4'),
    (['cf', '--frac=-1/4'], '-1/4'),
    (['cf', '--frac', '-12'], '-12'),
])
def test_parser_keeps_negative_values(argv, value):
    assert build_parser().parse_args(argv).frac == value


def test_negative_values_in_lift():
    args = build_parser().parse_args(['lift', '--coeff', '-1/3', '--branch-lk', '-1', '--lift-writhe', '-2'])
    assert (args.coeff, args.branch_lk, args.lift_writhe) == ('-1/3', -1, -2)
