from fractions import Fraction

import pytest

from apportionment.core import ERROR, INDEX_ORDER, LARGEST_VOTES, QuotaVector, build_problem, exact_quotas, seeded
from apportionment.core import quotas_from_decimals
from apportionment.errors import NonMonotoneIncrements, NotMinimal, TieUnderErrorPolicy
from apportionment.minimizer import (
    INF,
    ErrorFunction,
    is_minimal,
    is_unique_minimal,
    lindiv_error,
    lp_error,
    minimal_solution,
    uniqueness,
)
from apportionment.oracle import brute_min, brute_psi_values, enumerate_lattice
from apportionment.rounding import rho_adjust

HALF = Fraction(1, 2)
MAJ = exact_quotas(build_problem([50600, 40650, 9750], 101))


def test_lindiv_increment_spot_value():
    # 2 * (1 + 1/2 - 1) / (253/5) - 2, worked by hand
    assert lindiv_error(MAJ, HALF).H(0, 1) == Fraction(-501, 253)


def test_lindiv_root_and_slope():
    q = quotas_from_decimals(['2.5', '1.5'], 4)
    err = lindiv_error(q, HALF)
    # the increment vanishes at l = q + 1/2
    assert err.H(0, 3) == 0
    assert err.H(1, 2) == 0
    col = [err.H(0, l) for l in range(1, 5)]
    assert all(b - a == Fraction(2) / q.quotas[0] for a, b in zip(col, col[1:]))


def test_lindiv_excludes_zero_quota_party():
    q = QuotaVector((Fraction(3), Fraction(0), Fraction(2)), 5)
    err = lindiv_error(q, HALF)
    assert err.excluded == (1,)
    assert err.H(1, 1) == INF
    assert minimal_solution(err, 3, 5).chosen == (3, 0, 2)


def test_lp_error_abs_value_matches_three_branch_form():
    adj = rho_adjust(quotas_from_decimals(['2.3', '1.7'], 4), HALF)
    err = lp_error(adj, 1)
    for j, q in enumerate(adj.adjusted):
        for l in range(1, 5):
            if l < q:
                want = -1
            elif l <= q + 1:
                want = 2 * l - 2 * q - 1
            else:
                want = 1
            # H(l) = |l - q| - |l - 1 - q|, which on the middle branch is 2l - 2q - 1
            assert err.H(j, l) == want, (j, l)


def test_lp_error_integer_quota():
    adj = rho_adjust(QuotaVector((Fraction(3), Fraction(2)), 5), HALF)
    err = lp_error(adj, 2)
    assert err.H(0, 3) == -1
    assert err.H(0, 4) == 1


def test_lp_error_rejects_bad_p():
    adj = rho_adjust(MAJ, HALF)
    with pytest.raises(ValueError):
        lp_error(adj, 0)
    with pytest.raises(ValueError):
        lp_error(adj, 1.5)


def test_error_function_checks_monotone_columns():
    with pytest.raises(NonMonotoneIncrements):
        ErrorFunction(((Fraction(1), Fraction(0)),), 2)


def test_minimal_solution_instability_example():
    q = quotas_from_decimals(['65.91', '0.53', '0.521', '0.52', '0.519'], 68)
    assert minimal_solution(lindiv_error(q, HALF), 5, 68).chosen == (64, 1, 1, 1, 1)


def test_minimal_solution_hare_l2():
    err = lp_error(rho_adjust(MAJ, HALF), 2)
    res = minimal_solution(err, 3, 101)
    assert res.chosen == (50, 41, 10)
    assert res.all_minimal == {(50, 41, 10)}
    assert not res.tie_occurred


@pytest.mark.parametrize('M', [1, 5, 17])
def test_minimal_solution_single_party(M):
    err = lp_error(rho_adjust(QuotaVector((Fraction(M),), M), HALF), 2)
    assert minimal_solution(err, 1, M).chosen == (M,)


def _symmetric():
    return lp_error(rho_adjust(QuotaVector((Fraction(3, 2), Fraction(3, 2)), 3), HALF), 2)


def test_tie_policies():
    err = _symmetric()
    with pytest.raises(TieUnderErrorPolicy) as info:
        minimal_solution(err, 2, 3, ERROR)
    assert info.value.candidates == {(2, 1), (1, 2)}
    res = minimal_solution(err, 2, 3, INDEX_ORDER)
    assert res.chosen == (2, 1) and res.tie_occurred
    assert res.all_minimal == {(2, 1), (1, 2)}
    assert minimal_solution(err, 2, 3, LARGEST_VOTES, votes=[5, 9]).chosen == (1, 2)
    assert minimal_solution(err, 2, 3, LARGEST_VOTES).chosen == (2, 1)


def test_seeded_policy_is_reproducible_and_covers_both():
    err = _symmetric()
    picks = {minimal_solution(err, 2, 3, seeded(s)).chosen for s in range(30)}
    assert picks == {(2, 1), (1, 2)}
    assert minimal_solution(err, 2, 3, seeded(11)).chosen == minimal_solution(err, 2, 3, seeded(11)).chosen


def test_all_minimal_cap():
    # six equal parties, three seats: C(6, 3) = 20 minima
    q = QuotaVector(tuple(Fraction(1, 2) for _ in range(6)), 3)
    err = lp_error(rho_adjust(q, HALF), 2)
    assert len(minimal_solution(err, 6, 3, INDEX_ORDER).all_minimal) == 20
    res = minimal_solution(err, 6, 3, INDEX_ORDER, cap=10)
    assert res.all_minimal is None and res.tie_occurred
    assert res.chosen == (1, 1, 1, 0, 0, 0)


def test_is_minimal_examples():
    err = lindiv_error(MAJ, HALF)
    assert not is_minimal(err, (51, 40, 10))
    # the exchange argument: the 51st seat of party 1 costs more than the 41st of party 2
    assert err.H(0, 51) == Fraction(-1, 253)
    assert err.H(1, 41) == Fraction(-2, 271)
    assert is_minimal(err, minimal_solution(err, 3, 101).chosen)


def test_is_minimal_boundary_conventions():
    err = ErrorFunction(((Fraction(1),), (Fraction(2),)), 1)
    assert is_minimal(err, (1, 0))
    assert not is_minimal(err, (0, 1))
    # one party holding every seat: its next increment counts as +inf
    err = ErrorFunction(((Fraction(-5), Fraction(-4)), (Fraction(0), Fraction(1))), 2)
    assert is_minimal(err, (2, 0))


def test_is_minimal_agrees_with_oracle_on_small_lattice():
    q = quotas_from_decimals(['1.2', '2.3', '0.5'], 4)
    for err in (lindiv_error(q, Fraction(1, 3)), lp_error(rho_adjust(q, Fraction(1, 4)), 3)):
        values = brute_psi_values(err, 3, 4)
        best = min(values.values())
        for m in enumerate_lattice(3, 4):
            assert is_minimal(err, m) == (values[m] == best)


def test_uniqueness_alabama_certified():
    q = exact_quotas(build_problem([107890192, 197827864, 18986361], 94))
    err = lp_error(rho_adjust(q, HALF), 2)
    assert brute_min(err, 3, 94) == {(31, 57, 6)}
    assert is_unique_minimal(err, (31, 57, 6))
    assert uniqueness(err, (31, 57, 6)) == 'certified'


def test_uniqueness_symmetric_tie():
    err = _symmetric()
    assert not is_unique_minimal(err, (2, 1))
    assert uniqueness(err, (2, 1)) == 'tie-found'
    with pytest.raises(NotMinimal):
        is_unique_minimal(err, (3, 0))


def test_certified_exactly_when_oracle_finds_one_minimum():
    # equality in the strict test always means a feasible equal-cost swap
    q = quotas_from_decimals(['1.5', '1.5', '1'], 4)
    for err in (lindiv_error(q, HALF), lindiv_error(q, Fraction(1)),
                lp_error(rho_adjust(q, HALF), 2), lp_error(rho_adjust(q, Fraction(1, 4)), 1)):
        minima = brute_min(err, 3, 4)
        for m in minima:
            assert is_unique_minimal(err, m) == (len(minima) == 1)
            assert uniqueness(err, m) == ('certified' if len(minima) == 1 else 'tie-found')


def test_prefix_property_on_example():
    q = quotas_from_decimals(['26', '7.96', '5.84', '4.78', '3.72', '1.60', '0.56', '0.54'], 51)
    err = lindiv_error(q, HALF)
    m = minimal_solution(err, 8, 51).chosen
    taken = sorted(err.H(j, l) for j in range(8) for l in range(1, m[j] + 1))
    rest = sorted(err.H(j, l) for j in range(8) for l in range(m[j] + 1, 52))
    assert taken[-1] <= rest[0]
