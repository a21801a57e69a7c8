from itertools import product

import pytest
from hypothesis import given

from conftest import strict_partitions
from isomeric.partitions import (
    StrictPartition,
    contains,
    enumerate_strict,
    format_partition,
    join,
    length_delta,
    parse_partition,
    staircase,
    strict_count,
)


def test_construction_rejects_non_strict():
    with pytest.raises(ValueError):
        StrictPartition((2, 2))
    with pytest.raises(ValueError):
        StrictPartition((3, 0))
    assert StrictPartition((3, 1)).size == 4
    assert StrictPartition(()).length == 0


def test_contains_examples():
    assert contains((3, 1), (2, 1))
    assert not contains((2, 1), (3, 1))
    for lam in enumerate_strict(5):
        assert contains(lam, ())


def test_staircase_examples():
    assert staircase(3) == (3, 2, 1)
    assert staircase(0) == ()
    assert staircase(1) == (1,)


def test_enumerate_examples():
    assert enumerate_strict(3) == [(3,), (2, 1)]
    assert enumerate_strict(6) == [(6,), (5, 1), (4, 2), (3, 2, 1)]
    assert enumerate_strict(0) == [()]
    assert enumerate_strict(6, max_length=2) == [(6,), (5, 1), (4, 2)]


def test_length_delta_examples():
    assert length_delta((2, 1)) == (2, 0)
    assert length_delta((3,)) == (1, 1)
    assert length_delta(()) == (0, 0)


def _brute_strict(d):
    # every subset of {1..d} summing to d
    out = []
    for bits in product((0, 1), repeat=d):
        parts = [i + 1 for i, b in enumerate(bits) if b]
        if sum(parts) == d:
            out.append(tuple(sorted(parts, reverse=True)))
    return sorted(out, reverse=True)


@pytest.mark.parametrize("d", range(13))
def test_enumeration_against_subsets(d):
    got = enumerate_strict(d)
    assert sorted(got, reverse=True) == _brute_strict(d)
    assert len(set(got)) == len(got) == strict_count(d)


def test_containment_is_partial_order():
    parts = [p for d in range(9) for p in enumerate_strict(d)]
    for a in parts:
        assert contains(a, a)
        for b in parts:
            if contains(a, b) and contains(b, a):
                assert a == b
            for c in parts:
                if contains(a, b) and contains(b, c):
                    assert contains(a, c)


def test_join_is_least_upper_bound():
    parts = [p for d in range(7) for p in enumerate_strict(d)]
    uppers = [p for d in range(13) for p in enumerate_strict(d)]
    for a in parts:
        for b in parts:
            j = join(a, b)
            assert contains(j, a) and contains(j, b)
            for u in uppers:
                if contains(u, a) and contains(u, b):
                    assert contains(u, j)


@given(strict_partitions(), strict_partitions())
def test_join_commutes_and_absorbs(a, b):
    assert join(a, b) == join(b, a)
    assert join(a, join(a, b)) == join(a, b)
    assert join(a, ()) == a


@given(strict_partitions())
def test_format_parse_roundtrip(lam):
    assert parse_partition(format_partition(lam)) == lam


def test_parse_errors():
    for bad in ("2,2", "a,1", "3,-1", "1,2"):
        with pytest.raises(ValueError):
            parse_partition(bad)
