"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 bad input data,
3 scenario or verification mismatch, 4 tie under the ``error`` tie policy.
"""

from __future__ import annotations

import argparse
import sys

from apportionment import conditions as cond
from apportionment import io, paradox
from apportionment.core import TiePolicy, as_quotas, parse_rational
from apportionment.errors import ApportionmentError, InputError, ScenarioMismatch, TieUnderErrorPolicy
from apportionment.methods import ParseError, parse_method, parse_methods
from apportionment.oracle import DEFAULT_CAP as LATTICE_CAP
from apportionment.oracle import lattice_size
from apportionment.verify import oracle_sweep, sweep_quotas

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_MISMATCH, EXIT_TIE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


def _int_list(text):
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise UsageError(f'expected comma-separated integers, got {text!r}') from None


def _add_input(p, seats_list=False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--votes-csv', metavar='PATH', help='CSV with header party,votes')
    src.add_argument('--votes-json', metavar='PATH', help='JSON {"seats": M, "parties": [...]}')
    src.add_argument('--quotas', metavar='PATH', help='JSON {"seats": M, "quotas": ["1.5", ...]}')
    p.add_argument('--seats', help='house size' + (' (comma-separated list allowed)' if seats_list else ''))


def _add_output(p):
    p.add_argument('--tie', default='error', help='error | index | largest-votes | seeded:<int>')
    p.add_argument('--format', choices=('json', 'table'), default='json')
    p.add_argument('--out', metavar='PATH', help='write the report here instead of stdout')


def build_parser():
    parser = _Parser(prog='apportion', description='Exact proportional seat apportionment.')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('apportion', help='run one method')
    p.add_argument('--method', required=True)
    _add_input(p)
    _add_output(p)

    p = sub.add_parser('compare', help='run several methods over one or more house sizes')
    p.add_argument('--methods', required=True, help='comma-separated method list')
    _add_input(p, seats_list=True)
    _add_output(p)

    p = sub.add_parser('check', help='run a method and test the fairness conditions')
    p.add_argument('--method', required=True)
    p.add_argument('--large', help='bias check: comma-separated 1-based party indices of L')
    p.add_argument('--small', help='bias check: comma-separated 1-based party indices of S')
    _add_input(p)
    _add_output(p)

    p = sub.add_parser('scan', help='search for paradoxes')
    p.add_argument('kind', choices=('alabama', 'new-state', 'instability', 'bias'))
    p.add_argument('--method', required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument('--votes-csv', metavar='PATH')
    src.add_argument('--votes-json', metavar='PATH')
    src.add_argument('--quotas', metavar='PATH')
    p.add_argument('--seats', help='house size')
    p.add_argument('--seats-from', type=int, help='alabama: first house size')
    p.add_argument('--seats-to', type=int, help='alabama: last house size')
    p.add_argument('--new-votes', type=int, help='new-state: votes of the entering party')
    p.add_argument('--added-seats', type=int, default=1, help='new-state: seats added with it')
    p.add_argument('--perturbation', default='0.1', help='instability: maximal quota shift')
    p.add_argument('--parties', type=int, default=3, help='bias: number of parties')
    p.add_argument('--max-votes', type=int, default=10 ** 6, help='bias: largest random vote count')
    p.add_argument('--trials', type=int, default=1000)
    p.add_argument('--seed', type=int, default=0)
    _add_output(p)

    p = sub.add_parser('verify', help='golden scenarios plus seeded oracle equivalence sweep')
    p.add_argument('--max-n', type=int, default=4)
    p.add_argument('--max-m', type=int, default=12)
    p.add_argument('--trials', type=int, default=500)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--golden', action='store_true', help='also sweep golden instances within the lattice cap')
    p.add_argument('--format', choices=('json', 'table'), default='json')
    p.add_argument('--out', metavar='PATH')

    p = sub.add_parser('scenarios', help='export the built-in scenario table as JSON')
    p.add_argument('--out', metavar='PATH')
    return parser


def _load(args, seats_override=None):
    warning = None
    seats = seats_override
    if args.votes_csv:
        data, warning = io.read_votes(args.votes_csv, 'csv', seats)
    elif args.votes_json:
        data, warning = io.read_votes(args.votes_json, 'json', seats)
    elif args.quotas:
        data, _ = io.read_quotas(args.quotas)
        if seats is not None and seats != data.seats:
            raise InputError(f'--seats {seats} disagrees with quota file ({data.seats})', field='seats')
    else:
        raise UsageError('an input file is required')
    if warning:
        print(f'warning: {warning}', file=sys.stderr)
    return data


def _single_seats(args):
    if args.seats is None:
        return None
    values = _int_list(args.seats)
    if len(values) != 1:
        raise UsageError('--seats takes a single integer here')
    return values[0]


def _names(data):
    return list(getattr(data, 'names', None) or [f'P{j + 1}' for j in range(data.n)])


def _result_entry(data, res):
    entry = io.to_jsonable(res)
    entry['seats'] = data.seats
    return entry


def _table(headers, rows):
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(headers)]
    line = '  '.join(str(h).ljust(w) for h, w in zip(headers, widths))
    out = [line, '  '.join('-' * w for w in widths)]
    out += ['  '.join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return '\n'.join(out) + '\n'


def _emit(args, doc, table_text):
    text = table_text if getattr(args, 'format', 'json') == 'table' else io.dumps(doc)
    if getattr(args, 'out', None):
        with open(args.out, 'w', encoding='utf-8') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_of(policy):
    return policy.seed if policy.mode == 'seeded' else None


def cmd_apportion(args):
    policy = TiePolicy.parse(args.tie)
    method = parse_method(args.method, policy)
    data = _load(args, _single_seats(args))
    res = method.apportion(data)
    doc = io.report_document('apportion', io.input_echo(data), [_result_entry(data, res)],
                             seed=_seed_of(policy))
    names = _names(data)
    rows = [[names[j], res.chosen[j]] for j in range(data.n)]
    table = f'{method.name}, {data.seats} seats' + (' (tie resolved by policy)' if res.tie_occurred else '') + '\n'
    _emit(args, doc, table + _table(['party', 'seats'], rows))
    return EXIT_OK


def cmd_compare(args):
    policy = TiePolicy.parse(args.tie)
    methods = parse_methods(args.methods, policy)
    if not methods:
        raise UsageError('--methods is empty')
    seat_list = _int_list(args.seats) if args.seats else [None]
    entries, rows = [], []
    first = None
    for M in seat_list:
        data = _load(args, M)
        first = first or data
        quotas = as_quotas(data)
        names = _names(data)
        rows.append([f'M={data.seats}', 'exact quota'] + [io.decimal_string(q, 4) for q in quotas.quotas])
        for method in methods:
            res = method.apportion(data)
            entries.append(_result_entry(data, res))
            rows.append(['', method.name] + list(res.chosen))
    doc = io.report_document('compare', io.input_echo(first), entries, seed=_seed_of(policy),
                             extra={'seat_sizes': [e['seats'] for e in entries[::len(methods)]]})
    _emit(args, doc, _table(['', 'method'] + names, rows))
    return EXIT_OK


def _index_set(text):
    return [i - 1 for i in _int_list(text)]


def cmd_check(args):
    policy = TiePolicy.parse(args.tie)
    method = parse_method(args.method, policy)
    data = _load(args, _single_seats(args))
    res = method.apportion(data)
    m = res.chosen
    quotas = as_quotas(data)
    reports = [
        cond.check_monotony(quotas, m),
        cond.check_lower_quota(quotas, m),
        cond.check_upper_quota(quotas, m),
        cond.check_majority(data, m),
        cond.check_coalition(data, m),
    ]
    if hasattr(data, 'total'):
        reports.append(cond.check_house_monotony(method, data, data.seats))
        if args.large and args.small:
            part = cond.BiasPartition(_index_set(args.large), _index_set(args.small))
            reports.append(cond.check_bias(data, m, part))
    elif args.large or args.small:
        raise UsageError('the bias check needs vote data')
    if quotas.is_integral():
        reports.append(cond.check_fixpoint(method, quotas))
    doc = io.report_document('check', io.input_echo(data), [_result_entry(data, res)], reports,
                             seed=_seed_of(policy))
    rows = [[r.condition, {True: 'holds', False: 'fails', None: 'indeterminate'}[r.holds],
             r.direction or '', '' if r.witness is None else io.compact(r.witness)]
            for r in reports]
    head = f'{method.name}, {data.seats} seats: {list(m)}\n'
    _emit(args, doc, head + _table(['condition', 'status', 'direction', 'witness'], rows))
    return EXIT_OK


def cmd_scan(args):
    policy = TiePolicy.parse(args.tie)
    method = parse_method(args.method, policy)
    findings, extra, echo, seed = [], {}, None, None
    if args.kind == 'bias':
        if args.seats is None:
            raise UsageError('bias scan needs --seats')
        seed = args.seed
        rep = paradox.bias_report(method, args.parties, _single_seats(args), args.trials, args.seed,
                                  args.max_votes)
        extra = {'summary': rep}
        table = _table(['direction', 'count'], [[k, v] for k, v in rep['counts'].items()])
    elif args.kind == 'instability':
        if not args.quotas and not args.votes_csv and not args.votes_json:
            raise UsageError('instability scan needs an input file')
        data = _load(args, _single_seats(args))
        echo = io.input_echo(data)
        seed = args.seed
        rep = paradox.scan_instability(method, as_quotas(data), parse_rational(args.perturbation),
                                       args.trials, args.seed)
        extra = {'summary': rep}
        table = _table(['key', 'value'], [[k, rep[k]] for k in ('method', 'party', 'trials_used', 'max_swing')])
    else:
        if not args.votes_csv and not args.votes_json:
            raise UsageError(f'{args.kind} scan needs vote data')
        data = _load(args, _single_seats(args))
        echo = io.input_echo(data)
        if args.kind == 'alabama':
            lo = args.seats_from if args.seats_from is not None else data.seats
            hi = args.seats_to if args.seats_to is not None else lo
            rep = paradox.scan_alabama(method, data, lo, hi)
            findings = rep['findings']
            extra = {'indeterminate': rep['indeterminate'], 'range': [lo, hi]}
        else:
            if args.new_votes is None:
                raise UsageError('new-state scan needs --new-votes')
            f = paradox.scan_new_state(method, data, args.new_votes, args.added_seats)
            findings = [f] if f else []
        table = _table(['kind', 'trigger', 'parties', 'before', 'after'],
                       [[f.kind, io.compact(f.trigger), list(f.parties),
                         list(f.before), list(f.after)] for f in findings])
    doc = io.report_document('scan', echo, findings=findings, seed=seed,
                             extra={'scan': args.kind, 'method': method.name, **extra})
    _emit(args, doc, table)
    return EXIT_OK


def cmd_verify(args):
    run = paradox.run_scenarios(strict=False)
    quotas = sweep_quotas(args.seed, args.trials, args.max_n, args.max_m)
    if args.golden:
        for sc in paradox.SCENARIOS:
            q = as_quotas(sc.data())
            if lattice_size(q.n, q.seats) <= LATTICE_CAP:
                quotas.append(q)
    sweep = oracle_sweep(quotas, certificate=True)
    ok = not run['diffs'] and sweep.ok
    doc = io.report_document('verify', {'max_n': args.max_n, 'max_m': args.max_m,
                                        'trials': args.trials, 'golden': args.golden},
                             seed=args.seed,
                             extra={'scenario_diffs': run['diffs'],
                                    'scenario_checks': len(run['outcomes']),
                                    'sweep': {'instances': sweep.instances, 'checks': sweep.checks,
                                              'failures': sweep.failures},
                                    'ok': ok})
    table = _table(['check', 'count', 'failures'], [
        ['scenarios', len(run['outcomes']), len(run['diffs'])],
        ['oracle sweep', sweep.checks, len(sweep.failures)],
    ])
    _emit(args, doc, table)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_scenarios(args):
    text = io.dumps(paradox.scenarios_json())
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    'apportion': cmd_apportion,
    'compare': cmd_compare,
    'check': cmd_check,
    'scan': cmd_scan,
    'verify': cmd_verify,
    'scenarios': cmd_scenarios,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except TieUnderErrorPolicy as exc:
        print(f'tie: {exc}', file=sys.stderr)
        return EXIT_TIE
    except ScenarioMismatch as exc:
        print(f'mismatch: {exc}', file=sys.stderr)
        return EXIT_MISMATCH
    except (InputError, io.IoError) as exc:
        print(f'input error: {exc}', file=sys.stderr)
        return EXIT_INPUT
    except ApportionmentError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
