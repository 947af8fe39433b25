"""Resolution of ties at a selection boundary.

Every method in the package reduces a tie to the same shape: a base seat
vector that is certain, a number ``k`` of remaining seats, and for each party
a capacity (how many of the tied entries belong to it). Every way of placing
the ``k`` seats within the capacities is an equally good outcome.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from apportionment.core import TiePolicy
from apportionment.errors import TieUnderErrorPolicy

DEFAULT_CAP = 64


def count_placements(capacity: Sequence[int], k: int) -> int:
    # ways[s] = number of ways to place s seats in the columns seen so far
    ways = [1] + [0] * k
    for c in capacity:
        new = [0] * (k + 1)
        for s, w in enumerate(ways):
            if w:
                for x in range(min(c, k - s) + 1):
                    new[s + x] += w
        ways = new
    return ways[k]


def iter_placements(capacity: Sequence[int], k: int):
    n = len(capacity)
    suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + capacity[j]

    def rec(j, left, acc):
        if j == n:
            if left == 0:
                yield tuple(acc)
            return
        lo = max(0, left - suffix[j + 1])
        for x in range(lo, min(capacity[j], left) + 1):
            acc.append(x)
            yield from rec(j + 1, left - x, acc)
            acc.pop()

    yield from rec(0, k, [])


def _greedy(capacity, k, order):
    x = [0] * len(capacity)
    for j in order:
        take = min(capacity[j], k)
        x[j] = take
        k -= take
        if k == 0:
            break
    return x


def resolve(
    base: Sequence[int],
    capacity: Sequence[int],
    k: int,
    policy: TiePolicy,
    votes: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_CAP,
    what: str = 'seat',
):
    """Place ``k`` seats on top of ``base`` and return ``(chosen, all, tied)``.

    ``all`` is the frozenset of every admissible outcome, or ``None`` when
    there are more than ``cap`` of them.
    """
    n = len(base)
    if k < 0 or k > sum(capacity):
        raise ValueError(f'cannot place {k} seats into capacity {list(capacity)}')
    count = count_placements(capacity, k)
    outcomes = None
    if count <= cap:
        outcomes = frozenset(
            tuple(b + x for b, x in zip(base, xs)) for xs in iter_placements(capacity, k)
        )
    tied = count > 1

    if not tied:
        x = _greedy(capacity, k, range(n))
    elif policy.mode == 'error':
        parties = [j + 1 for j in range(n) if capacity[j]]
        raise TieUnderErrorPolicy(
            f'tie for {k} {what}(s) among parties {parties} '
            f'({count} equally good outcomes)',
            candidates=outcomes,
        )
    elif policy.mode == 'index' or (policy.mode == 'largest-votes' and votes is None):
        x = _greedy(capacity, k, range(n))
    elif policy.mode == 'largest-votes':
        x = _greedy(capacity, k, sorted(range(n), key=lambda j: (-votes[j], j)))
    else:
        rng = random.Random(policy.seed)
        if outcomes is not None:
            return rng.choice(sorted(outcomes)), outcomes, True
        units = [j for j in range(n) for _ in range(capacity[j])]
        rng.shuffle(units)
        x = [0] * n
        for j in units[:k]:
            x[j] += 1
    chosen = tuple(b + xi for b, xi in zip(base, x))
    return chosen, outcomes, tied
