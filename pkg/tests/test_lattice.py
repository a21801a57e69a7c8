from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import strict_partitions
from isomeric.liealg import ideal_from_component
from isomeric.lattice import (
    EquivariantIdeal,
    I_r,
    g_radical,
    g_spectrum,
    intersect,
    is_g_prime,
    leq,
    parse_antichain,
    principal,
    radical_of_product,
    rank_of_prime,
    sum_ideals,
    zero_ideal,
)
from isomeric.linalg import RowSpace
from isomeric.partitions import StrictPartition, contains, enumerate_strict, staircase
from isomeric.symfunc import component_dim

# every strict partition with parts <= 5: contains all generators drawn below
# and is closed under joins, so up-sets restricted to it decide everything
UNIVERSE = [StrictPartition(sorted(s, reverse=True)) for k in range(6) for s in combinations(range(1, 6), k)]

ideals = st.lists(strict_partitions(max_part=5, max_len=3), max_size=3).map(EquivariantIdeal.from_generators)


def _upset(I):
    return {nu for nu in UNIVERSE if I.has_constituent(nu)}


def test_leq_examples():
    assert leq(principal((3, 1)), principal((2, 1)))
    assert leq(zero_ideal(), principal((5,)))
    assert not leq(principal((3,)), principal((2, 1)))


def test_sum_and_intersection_examples():
    assert sum_ideals(principal((2, 1)), principal((3,))).generators == ((3,), (2, 1))
    assert intersect(principal((2, 1)), principal((3,))) == principal((3, 1))
    assert intersect(principal((2, 1)), zero_ideal()).is_zero


def test_radical_examples():
    assert g_radical(principal((3, 1))) == I_r(1) == principal(staircase(2))
    for r in range(6):
        assert g_radical(I_r(r)) == I_r(r)
    assert g_radical(zero_ideal()).is_zero


def test_prime_examples():
    assert is_g_prime(principal((2, 1)))
    assert not is_g_prime(principal((3, 1)))
    assert is_g_prime(zero_ideal())
    assert rank_of_prime(principal((2, 1))) == 1
    assert rank_of_prime(zero_ideal()) is None


def test_spectrum_chain():
    chain = g_spectrum(2)
    assert [r for r, _ in chain] == [0, 1, 2, None]
    assert [I for _, I in chain] == [I_r(0), I_r(1), I_r(2), zero_ideal()]
    for (_, a), (_, b) in zip(chain, chain[1:]):
        assert leq(b, a) and not leq(a, b)


def test_antichain_validation_and_parsing():
    with pytest.raises(ValueError):
        EquivariantIdeal(((2, 1), (3, 1)))
    assert parse_antichain("3,1;4,2") == principal((3, 1))
    assert parse_antichain("0").is_zero
    assert str(parse_antichain("3;2,1")) == "3;2,1"
    with pytest.raises(ValueError):
        parse_antichain("3,3")


@given(ideals, ideals)
def test_operations_match_upsets(I, J):
    assert leq(I, J) == (_upset(I) <= _upset(J))
    assert _upset(sum_ideals(I, J)) == _upset(I) | _upset(J)
    assert _upset(intersect(I, J)) == _upset(I) & _upset(J)


@given(ideals, ideals, ideals)
def test_lattice_laws(I, J, K):
    assert sum_ideals(I, J) == sum_ideals(J, I)
    assert intersect(I, J) == intersect(J, I)
    assert intersect(I, intersect(J, K)) == intersect(intersect(I, J), K)
    assert sum_ideals(I, intersect(I, J)) == I
    assert intersect(I, sum_ideals(I, J)) == I


@given(ideals, ideals)
def test_radical_laws(I, J):
    R = g_radical(I)
    assert leq(I, R) and g_radical(R) == R
    assert is_g_prime(R) != R.is_unit
    if leq(I, J):
        assert leq(R, g_radical(J))
    assert radical_of_product(I, J) == g_radical(intersect(I, J))
    # a g-prime containing the product contains one factor
    P = radical_of_product(I, J)
    if not P.is_unit:
        assert leq(I, P) or leq(J, P)


@given(ideals)
def test_radical_is_smallest_staircase_above(I):
    if I.is_zero or I.is_unit:
        assert g_radical(I) == I
        return
    r = max(r for r in range(9) if leq(I, I_r(r)))
    assert g_radical(I) == I_r(r)


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (3, 2, 1)])
def test_finite_rank_consistency(lam):
    # graded dimensions of I_lam at rank 2 are the sums over its constituents
    got = ideal_from_component(lam, 2, 6)
    I = principal(lam)
    for d in range(7):
        want = sum(component_dim(mu, 2) for mu in enumerate_strict(d, max_length=2) if I.has_constituent(mu))
        assert got[d].dim == want


def test_finite_rank_containment():
    big = ideal_from_component((2, 1), 2, 5)
    small = ideal_from_component((3, 1), 2, 5)
    assert leq(principal((3, 1)), principal((2, 1)))
    for d in range(6):
        rs = RowSpace()
        rs.extend(p.terms for p in big[d])
        assert all(rs.contains(p.terms) for p in small[d])
    assert all(contains(mu, (2, 1)) for mu in principal((3, 1)).constituents(6))
