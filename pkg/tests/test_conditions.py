from fractions import Fraction

import pytest

from apportionment.conditions import (
    FAVOURS_LARGE,
    BiasPartition,
    check_bias,
    check_coalition,
    check_fixpoint,
    check_house_monotony,
    check_lower_quota,
    check_majority,
    check_monotony,
    check_upper_quota,
)
from apportionment.core import QuotaVector, build_problem, exact_quotas, quotas_from_decimals
from apportionment.errors import InvalidPartition, LengthMismatch
from apportionment.methods import parse_method

MAJ = build_problem([50600, 40650, 9750], 101)
ALABAMA = build_problem([107890192, 197827864, 18986361], 94)


def test_majority_violated_by_hare():
    rep = check_majority(MAJ, (50, 41, 10))
    assert rep.holds is False
    assert rep.witness['party'] == 1
    assert check_majority(MAJ, (51, 40, 10)).holds


def test_majority_quota_form():
    q = quotas_from_decimals(['26', '7.96', '5.84', '4.78', '3.72', '1.60', '0.56', '0.54'], 51)
    assert not check_majority(q, (24, 8, 6, 5, 4, 2, 1, 1))
    # 26 of 51 is a majority of the quota sum, and 26 seats is a seat majority
    assert check_majority(q, (26, 8, 6, 5, 3, 2, 1, 0))


def test_coalition_example():
    p = build_problem([49, 48, 3], 2)
    rep = check_coalition(p, (1, 1, 0))
    assert rep.holds is False and rep.witness['party'] == 1
    # one seat of two is not below half either
    assert check_coalition(p, (1, 0, 1)).holds is False
    assert check_coalition(build_problem([49, 48, 3], 3), (1, 1, 1)).holds


def test_quota_checks():
    q = exact_quotas(MAJ)
    assert check_lower_quota(q, (50, 41, 10)).holds
    assert check_upper_quota(q, (50, 41, 10)).holds
    low = check_lower_quota(q, (52, 39, 10))
    assert low.holds is False and low.witness['parties'] == [2]
    up = check_upper_quota(q, (52, 39, 10))
    assert up.holds is False and up.witness['upper_quota'] == [51]


def test_monotony():
    q = exact_quotas(MAJ)
    assert check_monotony(q, (50, 41, 10)).holds
    rep = check_monotony(q, (40, 51, 10))
    assert rep.holds is False and rep.witness['parties'] == [2, 1]


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        check_lower_quota(exact_quotas(MAJ), (50, 51))


def test_bias_directions():
    p = build_problem([253, 237, 28], 33)
    rep = check_bias(p, (17, 15, 1), BiasPartition({0, 1}, {2}))
    assert rep.direction == FAVOURS_LARGE and rep.holds is False
    assert rep.witness == {'large_rate': Fraction(32, 490), 'small_rate': Fraction(1, 28)}
    rep = check_bias(build_problem([2, 1], 3), (2, 1), BiasPartition({0}, {1}))
    assert rep.direction == 'neutral' and rep.holds


def test_bias_partition_validation():
    with pytest.raises(InvalidPartition):
        BiasPartition({0}, {0, 1})
    with pytest.raises(InvalidPartition):
        BiasPartition(set(), {1})
    p = build_problem([253, 237, 28], 33)
    with pytest.raises(InvalidPartition):
        check_bias(p, (17, 15, 1), BiasPartition({2}, {0}))
    with pytest.raises(InvalidPartition):
        check_bias(p, (17, 15, 1), BiasPartition({0}, {5}))


def test_house_monotony_alabama():
    hare = parse_method('hare')
    rep = check_house_monotony(hare, ALABAMA, 94)
    assert rep.holds is False
    assert rep.witness == {'seats': 94, 'before': [31, 57, 6], 'after': [32, 58, 5], 'parties': [3]}
    assert check_house_monotony(parse_method('sainte-lague'), ALABAMA, 94).holds


def test_house_monotony_tie_is_indeterminate():
    rep = check_house_monotony(parse_method('hare'), build_problem([1, 1], 2), 2)
    assert rep.holds is None and 'indeterminate' in rep.note
    assert not rep


@pytest.mark.parametrize('method', ['hare', 'rho:1/4', 'rho:3/4', 'sainte-lague', 'dhondt', 'danish'])
def test_fixpoint_holds(method):
    q = QuotaVector((Fraction(5), Fraction(3), Fraction(0), Fraction(1)), 9)
    assert check_fixpoint(parse_method(method), q).holds


def test_fixpoint_imperiali_on_small_example():
    q = QuotaVector((Fraction(3), Fraction(2), Fraction(0)), 5)
    assert check_fixpoint(parse_method('imperiali'), q).holds


def test_fixpoint_extreme_rho():
    # rho = 0 with quotas (1, 1, 1): q^0 = (2/3, 2/3, 2/3), every party takes its one seat
    q = QuotaVector((Fraction(1),) * 3, 3)
    assert check_fixpoint(parse_method('rho:0'), q).holds
    assert check_fixpoint(parse_method('rho:1'), q).holds


def test_fixpoint_fails_for_imperiali():
    # divisors 2, 3, ...: party 1's sixth quotient 5/7 still beats party 2's first, 1/2
    q = QuotaVector((Fraction(5), Fraction(1)), 6)
    rep = check_fixpoint(parse_method('imperiali'), q)
    assert rep.holds is False
    assert rep.witness == {'quotas': [5, 1], 'results': [[6, 0]]}
    assert check_fixpoint(parse_method('adams'), QuotaVector((Fraction(2), Fraction(0)), 2)).holds
