import json
from fractions import Fraction

import pytest

from apportionment.cli import main
from apportionment.core import TiePolicy, build_problem
from apportionment.errors import UnknownMethod
from apportionment.io import FormatError, IoError, decimal_string, rational, read_quotas, read_votes, to_jsonable
from apportionment.methods import ParseError, apportion, parse_method, parse_methods

ALABAMA_CSV = 'party,votes\nA,107890192\nB,197827864\nC,18986361\n'


@pytest.fixture
def files(tmp_path):
    paths = {
        'csv': tmp_path / 'alabama.csv',
        'json': tmp_path / 'maj.json',
        'quotas': tmp_path / 'q.json',
        'tie': tmp_path / 'tie.json',
    }
    paths['csv'].write_text(ALABAMA_CSV)
    paths['json'].write_text(json.dumps({'seats': 101, 'parties': [
        {'name': 'A', 'votes': 50600}, {'name': 'B', 'votes': 40650}, {'name': 'C', 'votes': 9750}]}))
    paths['quotas'].write_text(json.dumps({'seats': 68, 'quotas': ['65.91', '0.53', '0.521', '0.52', '0.519']}))
    paths['tie'].write_text(json.dumps({'seats': 3, 'parties': [{'name': 'X', 'votes': 1}, {'name': 'Y', 'votes': 1}]}))
    return {k: str(v) for k, v in paths.items()}


# readers

def test_read_votes_csv_needs_seats(files):
    with pytest.raises(FormatError):
        read_votes(files['csv'])
    p, warning = read_votes(files['csv'], seats=94)
    assert p.names == ('A', 'B', 'C') and p.seats == 94 and warning is None


def test_read_votes_json_override_warns(files):
    p, warning = read_votes(files['json'])
    assert p.seats == 101 and warning is None
    p, warning = read_votes(files['json'], seats=100)
    assert p.seats == 100 and 'overrides' in warning


def test_read_votes_bad_rows(tmp_path):
    bad = tmp_path / 'bad.csv'
    bad.write_text('party,votes\nA,1.5\n')
    with pytest.raises(FormatError) as info:
        read_votes(str(bad), seats=3)
    assert info.value.line == 2
    bad.write_text('name,count\nA,1\n')
    with pytest.raises(FormatError):
        read_votes(str(bad), seats=3)


def test_read_missing_file(tmp_path):
    with pytest.raises(IoError):
        read_votes(str(tmp_path / 'nope.csv'), seats=3)


def test_read_quotas(files, tmp_path):
    q, names = read_quotas(files['quotas'])
    assert q.seats == 68 and q.quotas[0] == Fraction('65.91') and names is None
    f = tmp_path / 'float.json'
    f.write_text('{"seats": 2, "quotas": [1.5, 0.5]}')
    with pytest.raises(FormatError, match='float'):
        read_quotas(str(f))


# serialisation

def test_rational_encoding():
    assert rational(Fraction(1, 3)) == {'num': 1, 'den': 3, 'decimal': '0.333333333333'}
    assert decimal_string(Fraction(5, 2)) == '2.5'
    assert decimal_string(Fraction(7)) == '7'
    with pytest.raises(TypeError):
        to_jsonable(0.5)


# method grammar

@pytest.mark.parametrize('text, name', [
    ('hare', 'hare'), ('HARE-Majority', 'hare-majority'), ('rho:1/2', 'hare'), ('rho:0.25', 'rho:1/4'),
    ('rho:1', 'rho:1'), (' dhondt ', 'dhondt'), ('linear:d0=1/2', 'sainte-lague'),
    ('linear:d0=0.3', 'linear:d0=3/10'), ('hill', 'hill'), ('dean', 'dean'),
])
def test_parse_method_round_trip(text, name):
    spec = parse_method(text)
    assert spec.name == name
    assert parse_method(spec.name) == spec


@pytest.mark.parametrize('text', ['rho:1.5', 'rho:-1/4', 'rho:x', 'linear:d0=-1', 'linear:x=1', 'webster', ''])
def test_parse_method_errors(text):
    with pytest.raises(ParseError):
        parse_method(text)


def test_parse_methods_and_apportion():
    methods = parse_methods('hare, dhondt')
    assert [m.name for m in methods] == ['hare', 'dhondt']
    assert apportion('dhondt', build_problem([253, 237, 28], 33)).chosen == (17, 15, 1)
    assert parse_method('hare', TiePolicy.parse('index')).policy.mode == 'index'


def test_unknown_method_is_input_error():
    assert issubclass(UnknownMethod, ValueError)


# CLI

def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_apportion(files, capsys):
    code, out, _ = run(capsys, 'apportion', '--method', 'hare', '--votes-csv', files['csv'], '--seats', '94')
    assert code == 0
    doc = json.loads(out)
    assert doc['results'][0]['chosen'] == [31, 57, 6]


def test_cli_compare_table(files, capsys):
    code, out, _ = run(capsys, 'compare', '--methods', 'hare,sainte-lague,dhondt', '--votes-csv', files['csv'],
                       '--seats', '94,95', '--format', 'table')
    assert code == 0
    assert 'M=94' in out and 'M=95' in out
    assert any(line.split()[-3:] == ['32', '58', '5'] for line in out.splitlines() if 'hare' in line)


def test_cli_check(files, capsys):
    code, out, _ = run(capsys, 'check', '--method', 'hare', '--votes-json', files['json'])
    assert code == 0
    conds = {c['condition']: c for c in json.loads(out)['conditions']}
    assert conds['majority']['holds'] is False
    assert conds['lower-quota']['holds'] is True


def test_cli_scan_alabama(files, capsys):
    code, out, _ = run(capsys, 'scan', 'alabama', '--method', 'hare', '--votes-csv', files['csv'],
                       '--seats', '94', '--seats-from', '94', '--seats-to', '94')
    assert code == 0
    f = json.loads(out)['findings'][0]
    assert f['before'] == [31, 57, 6] and f['after'] == [32, 58, 5]


def test_cli_exit_codes(files, capsys, tmp_path):
    assert run(capsys, 'apportion', '--method', 'nope', '--votes-json', files['json'])[0] == 1
    assert run(capsys, 'apportion', '--votes-json', files['json'])[0] == 1
    assert run(capsys, 'apportion', '--method', 'hare', '--votes-csv', files['csv'])[0] == 2
    assert run(capsys, 'apportion', '--method', 'hare', '--votes-csv', str(tmp_path / 'missing.csv'),
               '--seats', '3')[0] == 2
    code, _, err = run(capsys, 'apportion', '--method', 'sainte-lague', '--votes-json', files['tie'])
    assert code == 4 and 'tie' in err
    code, out, _ = run(capsys, 'apportion', '--method', 'sainte-lague', '--votes-json', files['tie'], '--tie', 'index')
    assert code == 0 and json.loads(out)['results'][0]['chosen'] == [2, 1]


def test_cli_verify_small(capsys):
    code, out, _ = run(capsys, 'verify', '--trials', '5', '--max-m', '5', '--seed', '3')
    assert code == 0 and json.loads(out)['ok'] is True


def test_cli_scenarios_out(tmp_path, capsys):
    target = tmp_path / 's.json'
    assert run(capsys, 'scenarios', '--out', str(target))[0] == 0
    assert json.loads(target.read_text())['schema'] == 'apportionment.scenarios/1'


def test_cli_deterministic(files, capsys):
    argv = ['scan', 'bias', '--method', 'dhondt', '--seats', '10', '--parties', '4', '--trials', '50', '--seed', '9']
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
