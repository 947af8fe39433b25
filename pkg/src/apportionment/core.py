"""Domain types and exact quota computation.

All arithmetic that can influence a seat decision is done with
:class:`fractions.Fraction`. Seat vectors are plain tuples of ints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from apportionment.errors import (
    DuplicateName,
    EmptyInput,
    InputError,
    LengthMismatch,
    MalformedDecimal,
    NonPositiveSeats,
    QuotaSumMismatch,
    ZeroTotalVotes,
)

SeatVector = tuple  # tuple[int, ...]

_DECIMAL_RE = re.compile(r'^\s*(\d+(\.\d*)?|\.\d+)\s*$')
_RATIONAL_RE = re.compile(r'^\s*(\d+)\s*/\s*(\d+)\s*$')


def parse_decimal(text: str) -> Fraction:
    """Parse a finite non-negative decimal string exactly."""
    if not isinstance(text, str) or not _DECIMAL_RE.match(text):
        raise MalformedDecimal(f'not a finite non-negative decimal: {text!r}')
    return Fraction(text.strip())


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a finite decimal into an exact fraction."""
    m = _RATIONAL_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise MalformedDecimal(f'zero denominator in {text!r}')
        return Fraction(int(m.group(1)), den)
    return parse_decimal(text)


@dataclass(frozen=True)
class ElectionProblem:
    votes: tuple
    seats: int
    names: tuple

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def total(self) -> int:
        return sum(self.votes)

    def with_seats(self, seats: int) -> 'ElectionProblem':
        return build_problem(self.votes, seats, self.names)


@dataclass(frozen=True)
class QuotaVector:
    """Exact quotas summing to ``seats``.

    ``votes`` is kept when the quotas were derived from vote counts; it is
    only consulted by the LargestVotes tie policy and the vote-form majority
    checks.
    """

    quotas: tuple
    seats: int
    votes: Optional[tuple] = None

    def __post_init__(self):
        if sum(self.quotas) != self.seats:
            raise QuotaSumMismatch(sum(self.quotas), self.seats)
        if any(q < 0 for q in self.quotas):
            raise InputError('quotas must be non-negative', field='quotas')

    @property
    def n(self) -> int:
        return len(self.quotas)

    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self.quotas)


def build_problem(votes: Sequence[int], seats: int, names: Optional[Sequence[str]] = None) -> ElectionProblem:
    votes = list(votes)
    if not votes:
        raise EmptyInput('no parties given', field='votes')
    if names is None:
        names = [f'P{i + 1}' for i in range(len(votes))]
    names = [str(s) for s in names]
    if len(names) != len(votes):
        raise LengthMismatch(f'{len(names)} names for {len(votes)} vote counts', field='names')
    if len(set(names)) != len(names):
        dup = next(s for s in names if names.count(s) > 1)
        raise DuplicateName(f'duplicate party name {dup!r}', field='names')
    for v in votes:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f'votes must be integers, got {v!r}', field='votes')
        if v < 0:
            raise InputError(f'negative vote count {v}', field='votes')
    if isinstance(seats, bool) or not isinstance(seats, int) or seats < 1:
        raise NonPositiveSeats(f'seats must be a positive integer, got {seats!r}', field='seats')
    if sum(votes) == 0:
        raise ZeroTotalVotes('total number of votes is zero', field='votes')
    return ElectionProblem(tuple(votes), seats, tuple(names))


def exact_quotas(problem: ElectionProblem) -> QuotaVector:
    A, M = problem.total, problem.seats
    return QuotaVector(tuple(Fraction(a * M, A) for a in problem.votes), M, problem.votes)


def quotas_from_decimals(decimals: Sequence[str], seats: int) -> QuotaVector:
    if not decimals:
        raise EmptyInput('no quotas given', field='quotas')
    if isinstance(seats, bool) or not isinstance(seats, int) or seats < 1:
        raise NonPositiveSeats(f'seats must be a positive integer, got {seats!r}', field='seats')
    return QuotaVector(tuple(parse_decimal(d) for d in decimals), seats)


def as_quotas(data) -> QuotaVector:
    """Accept either an ElectionProblem or a QuotaVector."""
    if isinstance(data, QuotaVector):
        return data
    if isinstance(data, ElectionProblem):
        return exact_quotas(data)
    raise TypeError(f'expected ElectionProblem or QuotaVector, got {type(data).__name__}')


def check_seat_vector(m: Sequence[int], seats: int) -> SeatVector:
    m = tuple(m)
    if any(x < 0 for x in m) or sum(m) != seats:
        raise InputError(f'{m} is not a seat vector for {seats} seats', field='seats')
    return m


@dataclass(frozen=True)
class TiePolicy:
    """How a tie at a selection boundary is resolved.

    ``mode`` is one of ``error``, ``index``, ``largest-votes``, ``seeded``.
    """

    mode: str = 'error'
    seed: Optional[int] = None

    MODES = ('error', 'index', 'largest-votes', 'seeded')

    def __post_init__(self):
        if self.mode not in self.MODES:
            raise InputError(f'unknown tie policy {self.mode!r}', field='tie')
        if self.mode == 'seeded' and self.seed is None:
            raise InputError('seeded tie policy needs a seed', field='seed')

    def __str__(self):
        return f'seeded:{self.seed}' if self.mode == 'seeded' else self.mode

    @classmethod
    def parse(cls, text: str) -> 'TiePolicy':
        text = text.strip().lower()
        if text.startswith('seeded:'):
            try:
                return cls('seeded', int(text.split(':', 1)[1]))
            except ValueError:
                raise InputError(f'bad seed in tie policy {text!r}', field='tie') from None
        return cls(text)


ERROR = TiePolicy('error')
INDEX_ORDER = TiePolicy('index')
LARGEST_VOTES = TiePolicy('largest-votes')


def seeded(seed: int) -> TiePolicy:
    return TiePolicy('seeded', seed)


@dataclass(frozen=True)
class ApportionmentResult:
    chosen: SeatVector
    all_minimal: Optional[frozenset] = None
    tie_occurred: bool = False
    method: str = ''
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.all_minimal is not None:
            assert self.chosen in self.all_minimal

    @property
    def result_set(self) -> Optional[frozenset]:
        return self.all_minimal
