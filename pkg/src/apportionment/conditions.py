"""Fairness conditions checked on one outcome or on a pair of outcomes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from apportionment.core import ERROR, INDEX_ORDER, ElectionProblem, QuotaVector, as_quotas
from apportionment.errors import InputError, InvalidPartition, LengthMismatch, TieUnderErrorPolicy

FAVOURS_LARGE = 'favours-large'
FAVOURS_SMALL = 'favours-small'
NEUTRAL = 'neutral'


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one check.

    ``holds`` is None when the check was indeterminate (a tie at either end
    of a house monotony comparison); ``note`` then says why.
    """

    condition: str
    holds: Optional[bool]
    witness: Optional[dict] = None
    direction: Optional[str] = None
    note: Optional[str] = None

    def __post_init__(self):
        assert (self.witness is not None) == (self.holds is False), self

    def __bool__(self):
        return bool(self.holds)


@dataclass(frozen=True)
class BiasPartition:
    large: frozenset
    small: frozenset

    def __post_init__(self):
        object.__setattr__(self, 'large', frozenset(self.large))
        object.__setattr__(self, 'small', frozenset(self.small))
        if self.large & self.small:
            raise InvalidPartition('large and small party sets overlap', field='partition')
        if not self.large or not self.small:
            raise InvalidPartition('both party sets must be non-empty', field='partition')


def _lengths(quotas, m):
    if len(quotas.quotas) != len(m):
        raise LengthMismatch(f'{len(quotas.quotas)} quotas but {len(m)} seat counts', field='seats')


def check_monotony(quotas, m) -> ConditionReport:
    quotas = as_quotas(quotas)
    _lengths(quotas, m)
    qs = quotas.quotas
    for j in range(len(m)):
        for k in range(len(m)):
            if qs[j] < qs[k] and m[j] > m[k]:
                return ConditionReport('monotony', False, {
                    'parties': [j + 1, k + 1],
                    'quotas': [qs[j], qs[k]],
                    'seats': [m[j], m[k]],
                })
    return ConditionReport('monotony', True)


def check_lower_quota(quotas, m) -> ConditionReport:
    quotas = as_quotas(quotas)
    _lengths(quotas, m)
    bad = [j for j, q in enumerate(quotas.quotas) if m[j] < math.floor(q)]
    if bad:
        return ConditionReport('lower-quota', False, {
            'parties': [j + 1 for j in bad],
            'seats': [m[j] for j in bad],
            'lower_quota': [math.floor(quotas.quotas[j]) for j in bad],
        })
    return ConditionReport('lower-quota', True)


def check_upper_quota(quotas, m) -> ConditionReport:
    quotas = as_quotas(quotas)
    _lengths(quotas, m)
    bad = [j for j, q in enumerate(quotas.quotas) if m[j] > math.ceil(q)]
    if bad:
        return ConditionReport('upper-quota', False, {
            'parties': [j + 1 for j in bad],
            'seats': [m[j] for j in bad],
            'upper_quota': [math.ceil(quotas.quotas[j]) for j in bad],
        })
    return ConditionReport('upper-quota', True)


def _vote_shares(data):
    """Per-party (share, half) pairs: votes against A/2 if known, else quotas against M/2."""
    if isinstance(data, ElectionProblem):
        return list(data.votes), Fraction(data.total, 2)
    if data.votes is not None:
        return list(data.votes), Fraction(sum(data.votes), 2)
    return list(data.quotas), Fraction(data.seats, 2)


def check_majority(data, m) -> ConditionReport:
    quotas = as_quotas(data)
    _lengths(quotas, m)
    shares, half = _vote_shares(data)
    M = quotas.seats
    for j, s in enumerate(shares):
        if s > half and not 2 * m[j] > M:
            return ConditionReport('majority', False, {'party': j + 1, 'share': s, 'half': half,
                                                       'seats': m[j], 'house': M})
    return ConditionReport('majority', True)


def check_coalition(data, m) -> ConditionReport:
    quotas = as_quotas(data)
    _lengths(quotas, m)
    shares, half = _vote_shares(data)
    M = quotas.seats
    for j, s in enumerate(shares):
        if s < half and not 2 * m[j] < M:
            return ConditionReport('coalition', False, {'party': j + 1, 'share': s, 'half': half,
                                                        'seats': m[j], 'house': M})
    return ConditionReport('coalition', True)


def check_bias(problem: ElectionProblem, m, partition: BiasPartition) -> ConditionReport:
    if len(problem.votes) != len(m):
        raise LengthMismatch(f'{len(problem.votes)} parties but {len(m)} seat counts', field='seats')
    for j in partition.large | partition.small:
        if not 0 <= j < len(m):
            raise InvalidPartition(f'party index {j} out of range', field='partition')
    for j in partition.large:
        for i in partition.small:
            if not m[j] > m[i]:
                raise InvalidPartition(f'party {j + 1} in L does not hold more seats than party {i + 1} in S',
                                       field='partition')
    a = problem.votes
    large_votes = sum(a[j] for j in partition.large)
    small_votes = sum(a[j] for j in partition.small)
    if large_votes <= 0 or small_votes <= 0:
        raise InvalidPartition('both party sets need positive votes', field='partition')
    large_rate = Fraction(sum(m[j] for j in partition.large), large_votes)
    small_rate = Fraction(sum(m[j] for j in partition.small), small_votes)
    if large_rate > small_rate:
        direction = FAVOURS_LARGE
    elif large_rate < small_rate:
        direction = FAVOURS_SMALL
    else:
        direction = NEUTRAL
    holds = direction == NEUTRAL
    witness = None if holds else {'large_rate': large_rate, 'small_rate': small_rate}
    return ConditionReport('bias', holds, witness, direction)


def check_house_monotony(method, problem: ElectionProblem, M: int) -> ConditionReport:
    """Compare the method's results at M and M + 1 seats, with ties forbidden."""
    strict = method.with_policy(ERROR)
    try:
        before = strict.apportion(problem.with_seats(M)).chosen
        after = strict.apportion(problem.with_seats(M + 1)).chosen
    except TieUnderErrorPolicy as exc:
        return ConditionReport('house-monotony', None, note=f'indeterminate: {exc}')
    losers = [j for j in range(len(before)) if after[j] < before[j]]
    if losers:
        return ConditionReport('house-monotony', False, {
            'seats': M, 'before': list(before), 'after': list(after),
            'parties': [j + 1 for j in losers],
        })
    return ConditionReport('house-monotony', True)


def check_fixpoint(method, quotas: QuotaVector) -> ConditionReport:
    """On integral quotas the method must return exactly those quotas, uniquely."""
    quotas = as_quotas(quotas)
    if not quotas.is_integral():
        raise InputError('fix-point check needs integral quotas', field='quotas')
    target = tuple(int(q) for q in quotas.quotas)
    res = method.with_policy(INDEX_ORDER).apportion(quotas)
    outcomes = res.all_minimal
    if outcomes == frozenset([target]):
        return ConditionReport('fixpoint', True)
    return ConditionReport('fixpoint', False, {
        'quotas': list(target),
        'results': sorted(list(x) for x in outcomes) if outcomes is not None else [list(res.chosen)],
    })
