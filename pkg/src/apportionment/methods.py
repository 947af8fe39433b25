"""Method specifications: parsing, canonical names and dispatch.

Grammar (case-insensitive)::

    hare | hare-majority | rho:<rational in [0,1]>
    | adams | danish | condorcet | sainte-lague | considerant | dhondt
    | imperiali | dean | hill | linear:d0=<rational>

where a rational is ``p/q`` or a finite decimal.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from apportionment.core import ERROR, ApportionmentResult, TiePolicy, as_quotas, parse_rational
from apportionment.divisor import CATALOGUE, DivisorSequence, apportion_divisor, named_sequence
from apportionment.errors import InputError, MalformedDecimal
from apportionment.rounding import HALF, apportion_hare_majority, apportion_rho

KEYWORDS = ('hare', 'hare-majority', 'rho:') + CATALOGUE + ('linear:d0=',)


class ParseError(InputError):
    def __init__(self, text, position, expected):
        super().__init__(
            f'cannot parse method {text!r} at position {position}; expected {expected}',
            field='method')
        self.text = text
        self.position = position
        self.expected = expected


@dataclass(frozen=True)
class MethodSpec:
    kind: str  # 'rho', 'divisor' or 'hare-majority'
    rho: Fraction = None
    sequence: DivisorSequence = None
    policy: TiePolicy = ERROR

    @property
    def name(self) -> str:
        if self.kind == 'hare-majority':
            return 'hare-majority'
        if self.kind == 'rho':
            return 'hare' if self.rho == HALF else f'rho:{self.rho}'
        return self.sequence.name

    def __str__(self):
        return self.name

    def with_policy(self, policy: TiePolicy) -> 'MethodSpec':
        return replace(self, policy=policy)

    @property
    def is_linear_divisor(self) -> bool:
        return self.kind == 'divisor' and self.sequence.kind == 'linear'

    def apportion(self, data, cap=None) -> ApportionmentResult:
        kwargs = {} if cap is None else {'cap': cap}
        if self.kind == 'rho':
            return apportion_rho(data, self.rho, self.policy, **kwargs)
        if self.kind == 'divisor':
            return apportion_divisor(data, self.sequence, self.policy, **kwargs)
        return apportion_hare_majority(data, self.policy, **kwargs)


def _rational_after(text, original, offset, lo=None, hi=None):
    try:
        value = parse_rational(text)
    except MalformedDecimal:
        raise ParseError(original, offset, 'a rational "p/q" or finite decimal') from None
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        bound = f'[{lo}, {hi}]' if hi is not None else f'[{lo}, inf)'
        raise ParseError(original, offset, f'a rational in {bound}')
    return value


def parse_method(spec: str, policy: TiePolicy = ERROR) -> MethodSpec:
    original = spec
    text = spec.strip().lower()
    offset = len(spec) - len(spec.lstrip())
    if text == 'hare':
        return MethodSpec('rho', rho=HALF, policy=policy)
    if text == 'hare-majority':
        return MethodSpec('hare-majority', policy=policy)
    if text.startswith('rho:'):
        rho = _rational_after(text[4:], original, offset + 4, 0, 1)
        return MethodSpec('rho', rho=rho, policy=policy)
    if text.startswith('linear:'):
        if not text.startswith('linear:d0='):
            raise ParseError(original, offset + 7, '"d0="')
        d0 = _rational_after(text[10:], original, offset + 10, 0)
        return MethodSpec('divisor', sequence=DivisorSequence('linear', d0), policy=policy)
    if text in CATALOGUE:
        return MethodSpec('divisor', sequence=named_sequence(text), policy=policy)
    raise ParseError(original, offset, 'one of ' + ', '.join(KEYWORDS))


def parse_methods(text: str, policy: TiePolicy = ERROR) -> list:
    return [parse_method(part, policy) for part in text.split(',') if part.strip()]


def apportion(method, data, policy: TiePolicy = None, cap=None) -> ApportionmentResult:
    """Run ``method`` (a MethodSpec or a method string) on votes or quotas."""
    if isinstance(method, str):
        method = parse_method(method)
    if policy is not None:
        method = method.with_policy(policy)
    if method.kind != 'hare-majority':
        data = as_quotas(data)
    return method.apportion(data, cap)
