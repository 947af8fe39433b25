"""Seeded equivalence sweeps between the minimiser, the direct methods and the oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from apportionment.core import INDEX_ORDER, build_problem, exact_quotas
from apportionment.divisor import apportion_divisor, linear
from apportionment.minimizer import is_minimal, lindiv_error, lp_error, minimal_solution
from apportionment.oracle import brute_min, brute_min_norm, enumerate_lattice
from apportionment.rounding import apportion_rho, rho_adjust

D0_VALUES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2))
RHO_VALUES = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
P_VALUES = (1, 2, 3)
BIG_CAP = 10 ** 6


def random_problems(seed: int, count: int, max_n: int = 4, max_m: int = 12, max_votes: int = 50,
                    min_votes: int = 1):
    """Seeded random ElectionProblems with n in 2..max_n and M in 1..max_m."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        M = rng.randint(1, max_m)
        votes = [rng.randint(min_votes, max_votes) for _ in range(n)]
        if sum(votes) == 0:
            votes[0] = 1
        yield build_problem(votes, M)


def error_functions(quotas):
    """Every (label, error function) pair the sweep checks on one quota vector."""
    for d0 in D0_VALUES:
        yield f'lindiv d0={d0}', lindiv_error(quotas, d0)
    for rho in RHO_VALUES:
        adj = rho_adjust(quotas, rho)
        for p in P_VALUES:
            yield f'lp rho={rho} p={p}', lp_error(adj, p)


@dataclass
class SweepReport:
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)


def oracle_sweep(quota_list, certificate: bool = True) -> SweepReport:
    """Minimiser vs oracle, direct methods vs minimiser, and the max-norm containment."""
    rep = SweepReport()
    for quotas in quota_list:
        rep.instances += 1
        n, M = quotas.n, quotas.seats
        tag = f'q={[str(q) for q in quotas.quotas]} M={M}'
        for label, err in error_functions(quotas):
            got = minimal_solution(err, n, M, INDEX_ORDER, cap=BIG_CAP).all_minimal
            want = brute_min(err, n, M)
            rep.checks += 1
            if got != want:
                rep.fail(f'minimiser/oracle {label} {tag}: {sorted(got)} != {sorted(want)}')
            if certificate:
                for m in enumerate_lattice(n, M):
                    rep.checks += 1
                    if is_minimal(err, m) != (m in want):
                        rep.fail(f'is_minimal {label} {tag} m={m}')
        for d0 in D0_VALUES[1:]:
            direct = apportion_divisor(quotas, linear(d0), INDEX_ORDER, cap=BIG_CAP).all_minimal
            via = minimal_solution(lindiv_error(quotas, d0), n, M, INDEX_ORDER, cap=BIG_CAP).all_minimal
            rep.checks += 1
            if direct != via:
                rep.fail(f'divisor/minimiser d0={d0} {tag}: {sorted(direct)} != {sorted(via)}')
        for rho in RHO_VALUES:
            direct = apportion_rho(quotas, rho, INDEX_ORDER, cap=BIG_CAP).all_minimal
            adj = rho_adjust(quotas, rho)
            for p in P_VALUES:
                via = minimal_solution(lp_error(adj, p), n, M, INDEX_ORDER, cap=BIG_CAP).all_minimal
                rep.checks += 1
                if direct != via:
                    rep.fail(f'rho/minimiser rho={rho} p={p} {tag}: {sorted(direct)} != {sorted(via)}')
        hare = apportion_rho(quotas, Fraction(1, 2), INDEX_ORDER, cap=BIG_CAP).all_minimal
        rep.checks += 1
        if not hare <= brute_min_norm(rho_adjust(quotas, Fraction(1, 2)), 'inf'):
            rep.fail(f'max-norm containment {tag}')
    return rep


def sweep_quotas(seed: int, trials: int, max_n: int = 4, max_m: int = 12):
    return [exact_quotas(p) for p in random_problems(seed, trials, max_n, max_m)]
