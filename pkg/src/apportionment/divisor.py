"""Divisor methods by the M-largest-quotients rule.

Quotients are compared through exact sort keys. A divisor of zero gives an
infinite quotient, which is modelled as a higher tier ordered by quota.
Hill's divisors are square roots, so its quotients are compared squared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from apportionment.core import ERROR, ApportionmentResult, TiePolicy, as_quotas
from apportionment.errors import TooManyPartiesForAdamsLike, UnknownMethod
from apportionment.ties import DEFAULT_CAP, resolve

LINEAR_NAMES = {
    'adams': Fraction(0),
    'danish': Fraction(1, 3),
    'condorcet': Fraction(2, 5),
    'sainte-lague': Fraction(1, 2),
    'considerant': Fraction(2, 3),
    'dhondt': Fraction(1),
    'imperiali': Fraction(2),
}
CATALOGUE = tuple(LINEAR_NAMES) + ('dean', 'hill')


@dataclass(frozen=True)
class DivisorSequence:
    kind: str  # 'linear', 'dean' or 'hill'
    d0: Fraction = None

    def __post_init__(self):
        if self.kind not in ('linear', 'dean', 'hill'):
            raise UnknownMethod(f'unknown divisor kind {self.kind!r}')
        if self.kind == 'linear' and (self.d0 is None or self.d0 < 0):
            raise UnknownMethod('linear divisor sequence needs d0 >= 0')

    @property
    def name(self) -> str:
        if self.kind != 'linear':
            return self.kind
        for name, d0 in LINEAR_NAMES.items():
            if d0 == self.d0:
                return name
        return f'linear:d0={self.d0}'

    def first_is_zero(self) -> bool:
        return self.kind != 'linear' or self.d0 == 0

    def divisor(self, l: int):
        """d_l for l >= 1; for Hill the squared divisor l(l - 1) is returned."""
        if self.kind == 'linear':
            return self.d0 + (l - 1)
        if self.kind == 'dean':
            return Fraction(l * (l - 1)) / (l - Fraction(1, 2))
        return Fraction(l * (l - 1))

    def key(self, q: Fraction, l: int):
        """Sort key of q / d_l; larger key means larger quotient."""
        d = self.divisor(l)
        if d == 0:
            return (1, q) if q > 0 else (0, Fraction(0))
        if self.kind == 'hill':
            return (0, q * q / d)
        return (0, q / d)


def named_sequence(name: str) -> DivisorSequence:
    key = name.strip().lower()
    if key in LINEAR_NAMES:
        return DivisorSequence('linear', LINEAR_NAMES[key])
    if key in ('dean', 'hill'):
        return DivisorSequence(key)
    raise UnknownMethod(f'unknown divisor method {name!r}; known: {", ".join(CATALOGUE)}')


def linear(d0) -> DivisorSequence:
    return DivisorSequence('linear', Fraction(d0))


def apportion_divisor(quotas, seq: DivisorSequence, policy: TiePolicy = ERROR,
                      cap: int = DEFAULT_CAP) -> ApportionmentResult:
    quotas = as_quotas(quotas)
    M, n, qs = quotas.seats, quotas.n, quotas.quotas
    positive = sum(1 for q in qs if q > 0)
    if seq.first_is_zero() and positive > M:
        raise TooManyPartiesForAdamsLike(
            f'{positive} parties with votes but only {M} seats; {seq.name} seats every party first')

    entries = sorted(
        ((seq.key(qs[j], l), j) for j in range(n) for l in range(1, M + 1)),
        key=lambda e: e[0],
        reverse=True,
    )
    threshold = entries[M - 1][0]
    base = [0] * n
    capacity = [0] * n
    for key, j in entries:
        if key > threshold:
            base[j] += 1
        elif key == threshold:
            capacity[j] += 1
        else:
            break
    chosen, outcomes, tied = resolve(base, capacity, M - sum(base), policy, quotas.votes, cap)
    return ApportionmentResult(chosen, outcomes, tied, seq.name)
