"""Exhaustive ground truth over the lattice of seat vectors.

Every composition of M into n non-negative parts is scored directly from
the error definition. Scoring runs in two stages: a vectorised float pass
over the whole lattice keeps every point within a generous rounding margin
of the float minimum, then those survivors are rescored with exact
fractions. The float pass only narrows the field; the argmin is decided
exactly.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from apportionment.errors import InstanceTooLarge, InputError

DEFAULT_CAP = 10 ** 7


def lattice_size(n: int, M: int) -> int:
    return math.comb(M + n - 1, n - 1)


def _check_cap(n, M, cap):
    if n < 1 or M < 0:
        raise InputError(f'need n >= 1 and M >= 0, got n={n}, M={M}')
    size = lattice_size(n, M)
    if size > cap:
        raise InstanceTooLarge(f'lattice for n={n}, M={M} has {size} points (cap {cap})')
    return size


def enumerate_lattice(n: int, M: int, cap: int = DEFAULT_CAP):
    """Yield every seat vector of length n summing to M (stars and bars)."""
    _check_cap(n, M, cap)
    for bars in itertools.combinations(range(M + n - 1), n - 1):
        prev = -1
        m = []
        for b in bars:
            m.append(b - prev - 1)
            prev = b
        m.append(M + n - 2 - prev)
        yield tuple(m)


@lru_cache(maxsize=32)
def _lattice_array(n: int, M: int) -> np.ndarray:
    if n == 1:
        return np.array([[M]], dtype=np.int32)
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(M + n - 1), n - 1)),
        dtype=np.int32,
    ).reshape(-1, n - 1)
    edges = np.hstack([
        np.full((len(bars), 1), -1, dtype=np.int32),
        bars,
        np.full((len(bars), 1), M + n - 1, dtype=np.int32),
    ])
    out = np.diff(edges, axis=1) - 1
    out.setflags(write=False)
    return out


def _exact_argmin(tables, n, M, cap, combine):
    """Argmin of ``combine(values)`` where values[j] = tables[j][m_j].

    ``tables`` hold exact values (Fraction, int or +inf). ``combine`` is
    ``sum`` or ``max``.
    """
    _check_cap(n, M, cap)
    lattice = _lattice_array(n, M)
    ftables = [np.array([float(v) for v in t], dtype=np.float64) for t in tables]
    gathered = [ft[lattice[:, j]] for j, ft in enumerate(ftables)]
    if combine is sum:
        score = np.sum(gathered, axis=0)
    else:
        score = np.max(gathered, axis=0)
    best = score.min()
    if not np.isfinite(best):
        raise InputError('every seat vector has infinite error')
    scale = sum(float(np.max(np.abs(ft[np.isfinite(ft)]), initial=0.0)) for ft in ftables)
    margin = 1e-9 * (scale + 1.0)
    survivors = lattice[score <= best + margin]

    exact_best = None
    argmin = set()
    for row in survivors:
        m = tuple(int(x) for x in row)
        value = combine(tables[j][mj] for j, mj in enumerate(m))
        if exact_best is None or value < exact_best:
            exact_best, argmin = value, {m}
        elif value == exact_best:
            argmin.add(m)
    return frozenset(argmin)


def _prefix_tables(err, M):
    tables = []
    for j in range(err.n):
        acc = Fraction(0)
        row = [acc]
        for l in range(1, M + 1):
            h = err.H(j, l)
            acc = h if math.isinf(h) or (isinstance(acc, float) and math.isinf(acc)) else acc + h
            row.append(acc)
        tables.append(row)
    return tables


def brute_min(err, n: int, M: int, cap: int = DEFAULT_CAP) -> frozenset:
    """Exact argmin over the lattice of the summed held increments."""
    if err.n != n or err.seats != M:
        raise InputError(f'error function is for n={err.n}, M={err.seats}')
    return _exact_argmin(_prefix_tables(err, M), n, M, cap, sum)


def brute_min_norm(adjusted, norm, cap: int = DEFAULT_CAP) -> frozenset:
    """Argmin over the lattice of ||m - q^rho|| in an l_p norm or the max norm.

    ``norm`` is a positive int p or the string ``'inf'``.
    """
    qs = adjusted.adjusted
    n, M = len(qs), adjusted.seats
    if norm == 'inf':
        tables = [[abs(m - q) for m in range(M + 1)] for q in qs]
        return _exact_argmin(tables, n, M, cap, max)
    if isinstance(norm, bool) or not isinstance(norm, int) or norm < 1:
        raise InputError(f'norm must be a positive integer or "inf", got {norm!r}')
    tables = [[abs(m - q) ** norm for m in range(M + 1)] for q in qs]
    return _exact_argmin(tables, n, M, cap, sum)


def brute_psi_values(err, n, M, cap: int = DEFAULT_CAP) -> dict:
    """Exact summed increments for every lattice point (small instances only)."""
    tables = _prefix_tables(err, M)
    return {m: sum(tables[j][mj] for j, mj in enumerate(m)) for m in enumerate_lattice(n, M, cap)}
