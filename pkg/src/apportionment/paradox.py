"""Worked scenarios and scanners for apportionment paradoxes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from apportionment.conditions import (
    FAVOURS_LARGE,
    FAVOURS_SMALL,
    NEUTRAL,
    BiasPartition,
    check_bias,
)
from apportionment.core import (
    ERROR,
    INDEX_ORDER,
    ElectionProblem,
    QuotaVector,
    build_problem,
    exact_quotas,
    quotas_from_decimals,
)
from apportionment.errors import ApportionmentError, ScenarioMismatch, TieUnderErrorPolicy
from apportionment.methods import MethodSpec, parse_method

ALABAMA_VOTES = (107890192, 197827864, 18986361)


@dataclass(frozen=True)
class Scenario:
    id: str
    citation: str
    seats: int
    expected: tuple  # (method name, seat vector) pairs
    votes: Optional[tuple] = None
    quotas: Optional[tuple] = None  # decimal strings
    names: Optional[tuple] = None
    printed_quotas: Optional[tuple] = None  # decimal strings as printed, truncated

    def data(self):
        if self.votes is not None:
            return build_problem(self.votes, self.seats, self.names)
        return quotas_from_decimals(self.quotas, self.seats)

    def to_json(self) -> dict:
        out = {
            'id': self.id,
            'citation': self.citation,
            'seats': self.seats,
            'expected': [{'method': m, 'seats': list(v)} for m, v in self.expected],
        }
        if self.votes is not None:
            out['votes'] = list(self.votes)
        if self.quotas is not None:
            out['quotas'] = list(self.quotas)
        if self.names is not None:
            out['names'] = list(self.names)
        if self.printed_quotas is not None:
            out['printed_quotas'] = list(self.printed_quotas)
        return out


INSTABILITY_A = ('65.91', '0.53', '0.521', '0.52', '0.519')
INSTABILITY_B = ('66.075', '0.485', '0.481', '0.48', '0.479')
MAJORITY_PARADOX = ('26', '7.96', '5.84', '4.78', '3.72', '1.60', '0.56', '0.54')
VOTE_STABILITY = ('26', '8.03', '7.09', '6.12', '1.415', '1.405', '0.472', '0.468')

SCENARIOS = (
    Scenario('S1-committee-1970', 'committee of 1970', 33,
             (('dhondt', (17, 15, 1)),),
             votes=(253, 237, 28), names=('CDU/CSU', 'SPD', 'FDP')),
    Scenario('S2-majority-101', 'Hare majority fix', 101,
             (('hare', (50, 41, 10)), ('hare-majority', (51, 40, 10))),
             votes=(50600, 40650, 9750)),
    Scenario('S3-instability-A', 'instability paradox', 68,
             (('sainte-lague', (64, 1, 1, 1, 1)), ('hare', (66, 1, 1, 0, 0))),
             quotas=INSTABILITY_A),
    Scenario('S3-instability-B', 'instability paradox', 68,
             (('sainte-lague', (68, 0, 0, 0, 0)), ('hare', (66, 1, 1, 0, 0))),
             quotas=INSTABILITY_B),
    Scenario('S4-majority-paradox-51', 'majority paradox', 51,
             (('sainte-lague', (24, 8, 6, 5, 4, 2, 1, 1)),),
             quotas=MAJORITY_PARADOX),
    Scenario('S5-vote-stability', 'vote stability paradox', 51,
             (('sainte-lague', (28, 8, 7, 6, 1, 1, 0, 0)),),
             quotas=VOTE_STABILITY),
    Scenario('S6-new-state-before', 'new state paradox', 37,
             (('hare', (18, 14, 5)),),
             votes=(320, 238, 79), names=('A', 'B', 'C'),
             printed_quotas=('18.587127', '13.824175', '4.588697')),
    Scenario('S6-new-state-after', 'new state paradox', 38,
             (('hare', (19, 14, 4, 1)),),
             votes=(320, 238, 79, 17), names=('A', 'B', 'C', 'D'),
             printed_quotas=('18.593272', '13.828746', '4.590214', '0.987767')),
    Scenario('S7-alabama-94', 'Alabama paradox', 94,
             (('hare', (31, 57, 6)), ('sainte-lague', (31, 57, 6))),
             votes=ALABAMA_VOTES),
    Scenario('S7-alabama-95', 'Alabama paradox', 95,
             (('hare', (32, 58, 5)), ('sainte-lague', (31, 58, 6))),
             votes=ALABAMA_VOTES),
)


def truncate_decimal(x: Fraction, places: int) -> str:
    """Decimal rendering cut (not rounded) after ``places`` digits."""
    scaled = x.numerator * 10 ** places // x.denominator
    whole, frac = divmod(scaled, 10 ** places)
    return f'{whole}.{frac:0{places}d}'


@dataclass
class ScenarioOutcome:
    scenario: str
    method: str
    expected: tuple
    actual: tuple

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def run_scenarios(scenarios=SCENARIOS, strict: bool = True) -> dict:
    """Run each built-in scenario and compare against its expected seats.

    Returns ``{'outcomes': [...], 'diffs': [...]}``; with ``strict`` any
    difference raises :class:`ScenarioMismatch`.
    """
    outcomes, diffs = [], []
    for sc in scenarios:
        data = sc.data()
        for method_name, expected in sc.expected:
            actual = parse_method(method_name).apportion(data).chosen
            out = ScenarioOutcome(sc.id, method_name, tuple(expected), actual)
            outcomes.append(out)
            if not out.ok:
                diffs.append(f'{sc.id} {method_name}: expected {list(expected)}, got {list(actual)}')
        if sc.printed_quotas is not None:
            rendered = tuple(truncate_decimal(q, 6) for q in exact_quotas(data).quotas)
            printed = tuple(p if not p.startswith('.') else '0' + p for p in sc.printed_quotas)
            if rendered != printed:
                diffs.append(f'{sc.id} quotas: expected {list(printed)}, got {list(rendered)}')
    if strict and diffs:
        raise ScenarioMismatch(diffs)
    return {'outcomes': outcomes, 'diffs': diffs}


def scenarios_json() -> dict:
    return {'schema': 'apportionment.scenarios/1', 'scenarios': [s.to_json() for s in SCENARIOS]}


@dataclass(frozen=True)
class ParadoxFinding:
    kind: str  # alabama, new-state, instability, majority-violation, vote-stability
    method: str
    before: tuple
    after: tuple
    parties: tuple
    trigger: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            'kind': self.kind,
            'method': self.method,
            'before': list(self.before),
            'after': list(self.after),
            'parties': list(self.parties),
            'trigger': self.trigger,
        }


def replay(finding: ParadoxFinding) -> bool:
    """Re-run the stored inputs and confirm the stored before/after vectors."""
    method = parse_method(finding.method)
    t = finding.trigger
    if finding.kind == 'alabama':
        p = build_problem(t['votes'], t['seats'])
        before = method.apportion(p).chosen
        after = method.apportion(p.with_seats(t['seats_after'])).chosen
    elif finding.kind == 'new-state':
        before = method.apportion(build_problem(t['votes'], t['seats'])).chosen
        after = method.apportion(build_problem(t['votes'] + [t['new_votes']],
                                               t['seats'] + t['added_seats'])).chosen
    else:
        raise ValueError(f'cannot replay a {finding.kind} finding')
    return before == finding.before and after == finding.after


def _method(method) -> MethodSpec:
    return parse_method(method) if isinstance(method, str) else method


def scan_alabama(method, problem: ElectionProblem, M_lo: int, M_hi: int) -> dict:
    """House-size increases M -> M + 1 for M in [M_lo, M_hi] that cost a party a seat.

    Returns ``{'findings': [...], 'indeterminate': [M, ...]}``.
    """
    method = _method(method).with_policy(ERROR)
    if M_lo > M_hi:
        raise ValueError(f'empty seat range {M_lo}..{M_hi}')
    findings, indeterminate = [], []
    cache = {}

    def run(M):
        if M not in cache:
            try:
                cache[M] = method.apportion(problem.with_seats(M)).chosen
            except TieUnderErrorPolicy:
                cache[M] = None
        return cache[M]

    for M in range(M_lo, M_hi + 1):
        before, after = run(M), run(M + 1)
        if before is None or after is None:
            indeterminate.append(M)
            continue
        for j in range(problem.n):
            if after[j] < before[j]:
                findings.append(ParadoxFinding('alabama', method.name, before, after, (j + 1,),
                                               {'votes': list(problem.votes), 'seats': M, 'seats_after': M + 1}))
    findings.sort(key=lambda f: (f.trigger['seats'], f.parties))
    return {'findings': findings, 'indeterminate': indeterminate}


def scan_new_state(method, problem: ElectionProblem, new_votes: int, added_seats: int = 1,
                   new_name: str = None) -> Optional[ParadoxFinding]:
    """Add a party with ``new_votes`` votes and ``added_seats`` seats; report reshuffles."""
    if new_votes < 0 or added_seats < 0:
        raise ValueError('new_votes and added_seats must be non-negative')
    method = _method(method)
    name = new_name or f'P{problem.n + 1}'
    before = method.apportion(problem).chosen
    grown = build_problem(problem.votes + (new_votes,), problem.seats + added_seats, problem.names + (name,))
    after = method.apportion(grown).chosen
    changed = tuple(j + 1 for j in range(problem.n) if after[j] != before[j])
    if not changed:
        return None
    return ParadoxFinding('new-state', method.name, before, after, changed,
                          {'votes': list(problem.votes), 'seats': problem.seats,
                           'new_votes': new_votes, 'added_seats': added_seats})


def instability_between(method, quotas_a: QuotaVector, quotas_b: QuotaVector, party: int = None) -> dict:
    """Seat swing of one party (default: largest quota in ``quotas_a``) between two outcomes."""
    method = _method(method)
    if party is None:
        party = max(range(quotas_a.n), key=lambda j: (quotas_a.quotas[j], -j))
    a = method.apportion(quotas_a).chosen
    b = method.apportion(quotas_b).chosen
    return {
        'party': party + 1,
        'before': a,
        'after': b,
        'swing': abs(b[party] - a[party]),
        'quota_shift': abs(quotas_b.quotas[party] - quotas_a.quotas[party]),
    }


def scan_instability(method, quotas: QuotaVector, perturbation, trials: int, seed: int) -> dict:
    """Randomly move quota between the smaller parties and watch the largest one.

    Each trial adds to every non-largest party an amount drawn from
    [-perturbation, perturbation] (in steps of perturbation/1000), then
    recentres the shifts so the total is unchanged. Trials that would make a
    quota negative are skipped. The largest party's quota never changes, so
    any change of its seats is caused by the smaller parties alone.
    """
    method = _method(method)
    perturbation = Fraction(perturbation)
    if perturbation < 0:
        raise ValueError('perturbation must be non-negative')
    qs = quotas.quotas
    n = quotas.n
    big = max(range(n), key=lambda j: (qs[j], -j))
    others = [j for j in range(n) if j != big]
    base = method.apportion(quotas).chosen
    rng = random.Random(seed)
    max_swing, max_ratio, used, worst = 0, Fraction(0), 0, None
    for _ in range(trials):
        if perturbation == 0 or not others:
            shifts = [Fraction(0)] * len(others)
        else:
            raw = [Fraction(rng.randint(-1000, 1000), 1000) * perturbation for _ in others]
            mean = sum(raw) / len(raw)
            shifts = [r - mean for r in raw]
        new = list(qs)
        for j, s in zip(others, shifts):
            new[j] += s
        if any(x < 0 for x in new):
            continue
        used += 1
        m = method.apportion(QuotaVector(tuple(new), quotas.seats)).chosen
        swing = abs(m[big] - base[big])
        moved = max((abs(s) for s in shifts), default=Fraction(0))
        if swing > max_swing:
            max_swing, worst = swing, (tuple(new), m)
        if swing and moved and Fraction(swing) / moved > max_ratio:
            max_ratio = Fraction(swing) / moved
    return {
        'method': method.name,
        'party': big + 1,
        'trials': trials,
        'trials_used': used,
        'max_swing': max_swing,
        'max_swing_per_unit_quota': max_ratio,
        'worst': worst,
    }


def bias_report(method, n: int, M: int, trials: int, seed: int, max_votes: int = 10 ** 6) -> dict:
    """Monte-Carlo frequencies of the bias direction under uniform random votes.

    Votes are uniform integers in [1, max_votes]. Parties are ranked by
    seats; the top floor(n/2) form L and the bottom floor(n/2) form S.
    Draws where L does not strictly out-seat S are counted as incomparable.
    This is an estimate, not a test.
    """
    if trials < 1:
        raise ValueError('trials must be at least 1')
    method = _method(method).with_policy(INDEX_ORDER)
    rng = random.Random(seed)
    counts = {FAVOURS_LARGE: 0, FAVOURS_SMALL: 0, NEUTRAL: 0, 'incomparable': 0}
    half = n // 2
    for _ in range(trials):
        votes = [rng.randint(1, max_votes) for _ in range(n)]
        problem = build_problem(votes, M)
        try:
            m = method.apportion(problem).chosen
        except ApportionmentError:
            counts['incomparable'] += 1
            continue
        order = sorted(range(n), key=lambda j: (-m[j], j))
        large, small = order[:half], order[n - half:]
        if half == 0 or min(m[j] for j in large) <= max(m[i] for i in small):
            counts['incomparable'] += 1
            continue
        direction = check_bias(problem, m, BiasPartition(large, small)).direction
        counts[direction] += 1
    return {
        'method': method.name,
        'n': n,
        'seats': M,
        'trials': trials,
        'seed': seed,
        'vote_model': f'uniform integers in [1, {max_votes}]',
        'counts': counts,
        'frequencies': {k: Fraction(v, trials) for k, v in counts.items()},
    }
