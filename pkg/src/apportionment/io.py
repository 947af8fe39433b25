"""Input files and JSON report documents.

Vote files are CSV (header ``party,votes``) or JSON
(``{"seats": M, "parties": [{"name": s, "votes": k}, ...]}``). Quota files are
JSON with decimal strings: ``{"seats": M, "quotas": ["65.91", ...]}``.
JSON floats are rejected so that nothing inexact enters a computation.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from apportionment import __version__
from apportionment.core import ApportionmentResult, build_problem, quotas_from_decimals
from apportionment.errors import ApportionmentError, InputError

SCHEMA = 'apportionment.report/1'


class IoError(ApportionmentError):
    pass


class FormatError(InputError):
    def __init__(self, message, path=None, line=None, field=None):
        where = ''
        if path is not None:
            where = f'{path}'
            if line is not None:
                where += f':{line}'
            where += ': '
        super().__init__(where + message, field=field)
        self.path = path
        self.line = line


def _read_text(path):
    try:
        with open(path, encoding='utf-8') as fh:
            return fh.read()
    except OSError as exc:
        raise IoError(f'cannot read {path}: {exc.strerror}') from exc


def _load_json(path):
    text = _read_text(path)

    def no_floats(s):
        raise FormatError(f'JSON number {s} is a float; write quotas as decimal strings like "{s}"',
                          path, field='quotas')

    try:
        return json.loads(text, parse_float=no_floats)
    except json.JSONDecodeError as exc:
        raise FormatError(f'invalid JSON: {exc.msg}', path, exc.lineno) from None


def read_votes(path, format: str = None, seats: int = None):
    """Read an ElectionProblem. ``seats`` overrides a seat count found in the file."""
    if format is None:
        format = 'json' if str(path).lower().endswith('.json') else 'csv'
    if format == 'csv':
        names, votes = [], []
        rows = list(csv.reader(_read_text(path).splitlines()))
        if not rows or [c.strip().lower() for c in rows[0]] != ['party', 'votes']:
            raise FormatError('header must be "party,votes"', path, 1)
        for lineno, row in enumerate(rows[1:], start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise FormatError(f'expected 2 fields, got {len(row)}', path, lineno)
            try:
                v = int(row[1].strip())
            except ValueError:
                raise FormatError(f'votes must be an integer, got {row[1]!r}', path, lineno, 'votes') from None
            names.append(row[0].strip())
            votes.append(v)
        if seats is None:
            raise FormatError('CSV vote files carry no seat count; pass --seats', path, field='seats')
        return build_problem(votes, seats, names), None

    doc = _load_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get('parties'), list):
        raise FormatError('expected an object with a "parties" list', path, field='parties')
    names, votes = [], []
    for i, party in enumerate(doc['parties']):
        if not isinstance(party, dict) or 'votes' not in party:
            raise FormatError(f'party #{i + 1} needs "name" and "votes"', path, field='parties')
        v = party['votes']
        if isinstance(v, bool) or not isinstance(v, int):
            raise FormatError(f'party #{i + 1} votes must be an integer', path, field='votes')
        names.append(str(party.get('name', f'P{i + 1}')))
        votes.append(v)
    warning = None
    file_seats = doc.get('seats')
    if seats is None:
        seats = file_seats
    elif file_seats is not None and file_seats != seats:
        warning = f'--seats {seats} overrides seats {file_seats} in {path}'
    if seats is None:
        raise FormatError('no seat count in file; pass --seats', path, field='seats')
    return build_problem(votes, seats, names), warning


def read_quotas(path):
    doc = _load_json(path)
    if not isinstance(doc, dict) or 'quotas' not in doc or 'seats' not in doc:
        raise FormatError('expected {"seats": M, "quotas": [...]}', path)
    quotas = doc['quotas']
    if not isinstance(quotas, list) or not all(isinstance(q, str) for q in quotas):
        raise FormatError('quotas must be a list of decimal strings', path, field='quotas')
    seats = doc['seats']
    if isinstance(seats, bool) or not isinstance(seats, int):
        raise FormatError('seats must be an integer', path, field='seats')
    names = doc.get('names')
    return quotas_from_decimals(quotas, seats), names


def decimal_string(x: Fraction, places: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = 100
        d = Decimal(x.numerator) / Decimal(x.denominator)
        d = d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    s = format(d, 'f')
    if '.' in s:
        s = s.rstrip('0').rstrip('.')
    return s


def rational(x: Fraction) -> dict:
    return {'num': x.numerator, 'den': x.denominator, 'decimal': decimal_string(x)}


def to_jsonable(obj):
    """Convert results, reports and fractions into plain JSON data."""
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError(f'refusing to serialise float {obj!r}')
    if isinstance(obj, ApportionmentResult):
        return {
            'method': obj.method,
            'chosen': list(obj.chosen),
            'tie_occurred': obj.tie_occurred,
            'all_minimal': None if obj.all_minimal is None else sorted(list(m) for m in obj.all_minimal),
            'notes': list(obj.notes),
        }
    if hasattr(obj, 'to_json'):
        return to_jsonable(obj.to_json())
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f'cannot serialise {type(obj).__name__}')


def input_echo(data) -> dict:
    if hasattr(data, 'votes') and hasattr(data, 'names') and hasattr(data, 'total'):
        return {'kind': 'votes', 'seats': data.seats, 'names': list(data.names), 'votes': list(data.votes)}
    return {'kind': 'quotas', 'seats': data.seats, 'quotas': [rational(q) for q in data.quotas]}


def report_document(command: str, input=None, results=(), conditions=(), findings=(), seed=None,
                    extra=None) -> dict:
    doc = {
        'schema': SCHEMA,
        'tool_version': __version__,
        'command': command,
        'input': input,
        'results': to_jsonable(list(results)),
        'conditions': to_jsonable(list(conditions)),
        'findings': to_jsonable(list(findings)),
        'seed': seed,
    }
    if extra:
        doc.update(to_jsonable(extra))
    return doc


def compact(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(',', ':'))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
