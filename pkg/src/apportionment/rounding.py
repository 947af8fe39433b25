"""Rho-rounding methods (Hare at rho = 1/2) and the Hare majority fix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from apportionment.core import (
    ERROR,
    ApportionmentResult,
    ElectionProblem,
    QuotaVector,
    TiePolicy,
    as_quotas,
)
from apportionment.errors import InsufficientSeats, RhoOutOfRange
from apportionment.ties import DEFAULT_CAP, resolve

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RhoAdjustedQuota:
    rho: Fraction
    seats: int
    adjusted: tuple
    floors: tuple
    remainders: tuple


def _check_rho(rho) -> Fraction:
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise RhoOutOfRange(f'rho must lie in [0, 1], got {rho}', field='rho')
    return rho


def floor_sum_bound(rho: Fraction, seats: int) -> int:
    if rho == 0:
        return seats - 1
    if rho == 1:
        return seats + 1
    return seats


def rho_adjust(quotas: QuotaVector, rho) -> RhoAdjustedQuota:
    rho = _check_rho(rho)
    M = quotas.seats
    factor = (M + 2 * rho - 1) / M
    adjusted = tuple(q * factor for q in quotas.quotas)
    floors = tuple(math.floor(x) for x in adjusted)
    remainders = tuple(x - f for x, f in zip(adjusted, floors))
    assert sum(adjusted) == M + 2 * rho - 1
    assert sum(floors) <= floor_sum_bound(rho, M), (rho, floors)
    return RhoAdjustedQuota(rho, M, adjusted, floors, remainders)


def apportion_rho(quotas, rho, policy: TiePolicy = ERROR, cap: int = DEFAULT_CAP) -> ApportionmentResult:
    quotas = as_quotas(quotas)
    adj = rho_adjust(quotas, rho)
    M, n = quotas.seats, quotas.n
    name = 'hare' if adj.rho == HALF else f'rho:{adj.rho}'
    notes = []
    k = M - sum(adj.floors)

    if k < 0:
        # rho = 1 with every adjusted quota integral: one seat too many
        candidates = [j for j in range(n) if adj.floors[j] > quotas.quotas[j]]
        if not candidates:
            candidates = [max(range(n), key=lambda j: (adj.floors[j], -j))]
            notes.append('no party above its exact quota; removed from the largest')
        base = list(adj.floors)
        capacity = [0] * n
        for j in candidates:
            base[j] -= 1
            capacity[j] = 1
        chosen, outcomes, tied = resolve(base, capacity, len(candidates) + k, policy, quotas.votes, cap)
        return ApportionmentResult(chosen, outcomes, tied, name, tuple(notes))

    if k == 0:
        m = tuple(adj.floors)
        return ApportionmentResult(m, frozenset([m]), False, name)

    rem = adj.remainders
    if adj.rho == 0 and not any(rem):
        # every adjusted quota integral: the extra seat may go to any voted party
        eligible = [j for j in range(n) if quotas.quotas[j] > 0]
        threshold = Fraction(0)
    else:
        eligible = list(range(n))
        threshold = sorted(rem, reverse=True)[k - 1]
    base = [f + (1 if r > threshold else 0) for f, r in zip(adj.floors, rem)]
    capacity = [0] * n
    for j in eligible:
        if rem[j] == threshold:
            capacity[j] = 1
    chosen, outcomes, tied = resolve(base, capacity, M - sum(base), policy, quotas.votes, cap)
    return ApportionmentResult(chosen, outcomes, tied, name, tuple(notes))


def apportion_hare(quotas, policy: TiePolicy = ERROR, cap: int = DEFAULT_CAP) -> ApportionmentResult:
    return apportion_rho(quotas, HALF, policy, cap)


def majority_party(data):
    """Index of the party holding an absolute majority, or None.

    Uses the vote form a_j > A/2 when votes are known, else q_j > M/2.
    """
    if isinstance(data, ElectionProblem):
        votes, total = data.votes, data.total
        return next((j for j, a in enumerate(votes) if 2 * a > total), None)
    if data.votes is not None:
        total = sum(data.votes)
        return next((j for j, a in enumerate(data.votes) if 2 * a > total), None)
    return next((j for j, q in enumerate(data.quotas) if 2 * q > data.seats), None)


def apportion_hare_majority(data, policy: TiePolicy = ERROR, cap: int = DEFAULT_CAP) -> ApportionmentResult:
    """Greatest remainders, but an absolute vote majority keeps a seat majority.

    The majority party is first given max(floor(q), floor(M/2) + 1) seats and
    every other party its lower quota. The remaining seats go by greatest
    remainder to parties still below their upper quota.
    """
    quotas = as_quotas(data)
    j_maj = majority_party(data)
    if j_maj is None:
        res = apportion_rho(quotas, HALF, policy, cap)
        return ApportionmentResult(res.chosen, res.all_minimal, res.tie_occurred, 'hare-majority')

    M, n, qs = quotas.seats, quotas.n, quotas.quotas
    base = [math.floor(q) for q in qs]
    base[j_maj] = max(base[j_maj], M // 2 + 1)
    k = M - sum(base)
    if k < 0:
        raise InsufficientSeats(f'lower quotas plus majority need {sum(base)} of {M} seats')
    rem = [q - math.floor(q) for q in qs]
    eligible = [j for j in range(n) if base[j] < math.ceil(qs[j])]
    if k > len(eligible):
        raise InsufficientSeats(f'{k} seats left but only {len(eligible)} parties below upper quota')
    capacity = [0] * n
    if k:
        threshold = sorted((rem[j] for j in eligible), reverse=True)[k - 1]
        for j in eligible:
            if rem[j] > threshold:
                base[j] += 1
            elif rem[j] == threshold:
                capacity[j] = 1
    chosen, outcomes, tied = resolve(base, capacity, M - sum(base), policy, quotas.votes, cap)
    return ApportionmentResult(chosen, outcomes, tied, 'hare-majority')


def greatest_remainder(quotas: QuotaVector) -> list:
    """Textbook Hamilton allocation, ties to the lowest index.

    Kept deliberately naive as a cross-check for :func:`apportion_rho`.
    """
    qs = quotas.quotas
    m = [int(q) for q in qs]
    order = sorted(range(len(qs)), key=lambda j: (-(qs[j] - int(qs[j])), j))
    for j in order[: quotas.seats - sum(m)]:
        m[j] += 1
    return m
