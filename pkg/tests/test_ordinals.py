"""Ordinal labels below omega * Q: ordering, offsets, serialization."""

from __future__ import annotations

import random

import pytest

from covlab import Ordinal, f_offset, ord_compare


def test_offset_reads_the_finite_part():
    assert f_offset(Ordinal(1, 3)) == 3
    assert f_offset(Ordinal(2, 0)) == 0
    assert Ordinal(0, 7).offset == 7


def test_limit_ordinals_have_offset_zero_and_flag():
    assert Ordinal(1, 0).is_limit
    assert Ordinal(3, 0).is_limit
    assert not Ordinal(0, 0).is_limit  # zero is not a limit here
    assert not Ordinal(1, 4).is_limit


def test_compare_is_lexicographic_on_limit_then_offset():
    assert ord_compare(Ordinal(1, 0), Ordinal(0, 5)) == 1
    assert ord_compare(Ordinal(0, 5), Ordinal(1, 0)) == -1
    assert ord_compare(Ordinal(2, 3), Ordinal(2, 3)) == 0
    assert Ordinal(0, 9) < Ordinal(1, 0) < Ordinal(1, 1) < Ordinal(2, 0)


def test_total_order_against_tuple_order():
    rng = random.Random(5)
    pool = [Ordinal(rng.randrange(4), rng.randrange(10)) for _ in range(80)]
    assert sorted(pool) == sorted(pool, key=lambda o: (o.q, o.n))


def test_successor_increments_offset_only():
    assert Ordinal(1, 4).successor() == Ordinal(1, 5)
    assert Ordinal(2, 0).successor() == Ordinal(2, 1)


def test_str_form():
    assert str(Ordinal(0, 4)) == "4"
    assert str(Ordinal(1, 0)) == "w"
    assert str(Ordinal(2, 3)) == "w*2+3"


def test_json_round_trip():
    for o in (Ordinal(0, 0), Ordinal(1, 2), Ordinal(5, 0)):
        assert Ordinal.from_json(o.to_json()) == o
    assert Ordinal.from_json([1, 3]) == Ordinal(1, 3)


@pytest.mark.parametrize("bad", [[1], [1, 2, 3], ["a", 0], [True, 0], [0, -1], 7])
def test_json_rejects_malformed_pairs(bad):
    with pytest.raises(ValueError):
        Ordinal.from_json(bad)


@pytest.mark.parametrize("q,n", [(-1, 0), (0, -2)])
def test_negative_parts_rejected(q, n):
    with pytest.raises(ValueError):
        Ordinal(q, n)
