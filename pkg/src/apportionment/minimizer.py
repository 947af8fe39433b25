"""Decomposable error functions and their exact minimisation.

An error function is given through its increments H_j(l), the cost of the
l-th seat of party j. Because every column is non-decreasing, a seat vector
minimises the total error exactly when its seats are M smallest entries of
the increment matrix, which :func:`minimal_solution` finds with a heap over
one cursor per column.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from apportionment.core import ERROR, ApportionmentResult, QuotaVector, TiePolicy
from apportionment.errors import InputError, NonMonotoneIncrements, NotMinimal
from apportionment.ties import DEFAULT_CAP, resolve

# Sentinels for the boundary conventions H_j(M + 1) = +inf and H_k(0) = -inf.
# Fractions compare correctly against them; they never enter arithmetic
# except in the oracle, which treats an infinite sum as infeasible.
INF = math.inf
NEG_INF = -math.inf


@dataclass(frozen=True)
class ErrorFunction:
    """Increment table H[j][l - 1] for parties j and seats l = 1..M.

    A column of ``None`` marks a party that may never receive a seat;
    its increments read as +inf.
    """

    columns: tuple
    seats: int
    descriptor: str = ''
    base: Optional[Fraction] = None

    def __post_init__(self):
        for j, col in enumerate(self.columns):
            if col is None:
                continue
            if len(col) != self.seats:
                raise InputError(f'column {j + 1} has {len(col)} entries, expected {self.seats}')
            for a, b in zip(col, col[1:]):
                if b < a:
                    raise NonMonotoneIncrements(f'increments of party {j + 1} decrease: {a} then {b}')

    @classmethod
    def from_increments(cls, increment: Callable[[int, int], Fraction], n: int, seats: int,
                        descriptor: str = '', excluded: Sequence[int] = (), base=None):
        excluded = set(excluded)
        cols = tuple(
            None if j in excluded else tuple(increment(j, l) for l in range(1, seats + 1))
            for j in range(n)
        )
        return cls(cols, seats, descriptor, base)

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def excluded(self) -> tuple:
        return tuple(j for j, c in enumerate(self.columns) if c is None)

    def H(self, j: int, l: int):
        if l <= 0:
            return NEG_INF
        col = self.columns[j]
        if col is None or l > self.seats:
            return INF
        return col[l - 1]

    def psi(self, m: Sequence[int]):
        """Total error minus its value at zero, i.e. the sum of held increments."""
        total = Fraction(0)
        for j, mj in enumerate(m):
            for l in range(1, mj + 1):
                total += self.H(j, l)
        return total


def lindiv_error(quotas: QuotaVector, d0) -> ErrorFunction:
    """Error function whose minimiser is the linear divisor method with offset d0.

    Increments are 2(l + d0 - 1)/q_j - 2. Parties with zero quota are
    excluded and stay at zero seats.
    """
    d0 = Fraction(d0)
    if d0 < 0:
        raise InputError(f'd0 must be non-negative, got {d0}', field='d0')
    qs = quotas.quotas

    def inc(j, l):
        return 2 * (l + d0 - 1) / qs[j] - 2

    zero = [j for j, q in enumerate(qs) if q == 0]
    return ErrorFunction.from_increments(inc, quotas.n, quotas.seats, f'lindiv(d0={d0})', zero)


def lp_error(adjusted, p: int) -> ErrorFunction:
    """Sum of |m_j - q_j^rho|^p, presented through its increments."""
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise InputError(f'p must be an integer >= 1, got {p!r}', field='p')
    qs = adjusted.adjusted

    def inc(j, l):
        return abs(l - qs[j]) ** p - abs(l - 1 - qs[j]) ** p

    return ErrorFunction.from_increments(inc, len(qs), adjusted.seats,
                                         f'lp(p={p}, rho={adjusted.rho})')


def _frontier_select(err: ErrorFunction, M: int):
    """Take M smallest entries column-prefix-wise; return per-column counts and the last key."""
    counts = [0] * err.n
    heap = [(err.H(j, 1), j) for j in range(err.n) if err.columns[j] is not None]
    heapq.heapify(heap)
    last = None
    for _ in range(M):
        last, j = heapq.heappop(heap)
        counts[j] += 1
        if counts[j] < M:
            heapq.heappush(heap, (err.H(j, counts[j] + 1), j))
    return counts, last


def minimal_solution(err: ErrorFunction, n: int, M: int, policy: TiePolicy = ERROR,
                     votes: Optional[Sequence[int]] = None, cap: int = DEFAULT_CAP) -> ApportionmentResult:
    if n != err.n or M != err.seats:
        raise InputError(f'error function is for n={err.n}, M={err.seats}; got n={n}, M={M}')
    counts, threshold = _frontier_select(err, M)
    if threshold == INF:
        raise InputError('not enough finite increments to place every seat')

    # Split each column into entries strictly below the threshold and
    # entries equal to it; only the latter are free to move.
    below, equal = [], []
    for j in range(n):
        c = counts[j]
        b = c
        while b > 0 and err.H(j, b) == threshold:
            b -= 1
        e = c - b
        l = c + 1
        while l <= M and err.H(j, l) == threshold:
            e += 1
            l += 1
        below.append(b)
        equal.append(e)

    chosen, outcomes, tied = resolve(below, equal, M - sum(below), policy, votes, cap)
    assert is_minimal(err, chosen), chosen
    return ApportionmentResult(chosen, outcomes, tied, err.descriptor)


def is_minimal(err: ErrorFunction, m: Sequence[int]) -> bool:
    """True iff H_j(m_j + 1) >= H_k(m_k) for every pair of parties."""
    if sum(m) != err.seats or len(m) != err.n:
        raise InputError(f'{tuple(m)} is not a seat vector for n={err.n}, M={err.seats}')
    next_cost = min(err.H(j, mj + 1) for j, mj in enumerate(m))
    held_cost = max(err.H(k, mk) for k, mk in enumerate(m))
    return next_cost >= held_cost


def is_unique_minimal(err: ErrorFunction, m: Sequence[int]) -> bool:
    """Sufficient test for uniqueness: strict inequality between distinct parties.

    ``False`` means uniqueness is not certified, not that a tie exists.
    """
    if not is_minimal(err, m):
        raise NotMinimal(f'{tuple(m)} does not minimise {err.descriptor}')
    nxt = [err.H(j, mj + 1) for j, mj in enumerate(m)]
    held = [err.H(k, mk) for k, mk in enumerate(m)]
    return all(nxt[j] > held[k] for j in range(len(m)) for k in range(len(m)) if j != k)


def uniqueness(err: ErrorFunction, m: Sequence[int]) -> str:
    """One of ``certified``, ``tie-found`` or ``not-certified``."""
    if is_unique_minimal(err, m):
        return 'certified'
    res = minimal_solution(err, err.n, err.seats, TiePolicy('index'))
    if res.tie_occurred:
        return 'tie-found'
    return 'not-certified'
