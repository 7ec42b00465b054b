"""Difference sets and covering numbers against brute-force oracles."""

from __future__ import annotations

import math
import random

import pytest

from covlab import (
    CyclicGroup,
    EmptySet,
    GroupSubset,
    all_subgroups,
    build_group,
    cov_bounds,
    cov_exact,
    cov_greedy,
    difference_set,
    subgroup_generated,
    subset_from_json,
)
from conftest import power_spec
from oracles import naive_cov, naive_cov_value, naive_diffset


def subset(G, elems):
    return GroupSubset.from_elements(G, elems)


def test_difference_set_pinned(z6, z2_4):
    assert sorted(difference_set(subset(z6, [1, 2])).members) == [0, 1, 5]
    assert sorted(difference_set(subset(z6, [4])).members) == [0]
    weight1 = [z2_4.pack(c) for c in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1])]
    diff = difference_set(subset(z2_4, weight1))
    assert diff.size == 7
    weights = sorted(bin(g).count("1") for g in diff.members)
    assert weights == [0, 2, 2, 2, 2, 2, 2]


def test_difference_set_matches_oracle(z6, z8, s3, z12):
    rng = random.Random(3)
    for G in (z6, z8, s3, z12):
        elems = list(G.elements())
        for _ in range(30):
            A = rng.sample(elems, rng.randrange(1, len(elems)))
            got = set(difference_set(subset(G, A)).members)
            assert got == naive_diffset(G, A)


def test_difference_set_shape_properties(s3, z12):
    rng = random.Random(4)
    for G in (s3, z12):
        elems = list(G.elements())
        for _ in range(40):
            A = rng.sample(elems, rng.randrange(1, len(elems)))
            D = difference_set(subset(G, A))
            assert G.identity in D.members
            assert all(G.inv(d) in set(D.members) for d in D.members)
            assert D.size <= len(A) * len(A) - len(A) + 1


def test_cov_exact_subgroup_is_index(z6):
    H = subset(z6, [0, 3])
    res = cov_exact(H)
    assert res.value == 3
    assert res.proven_optimal
    assert res.method == "exact"


def test_cov_extremes(z6):
    assert cov_exact(subset(z6, list(z6.elements()))).value == 1
    assert cov_exact(subset(z6, [0])).value == 6


def test_cov_exact_pinned_z2_4_diffset(z2_4):
    weight1 = [1, 2, 4, 8]
    diff = difference_set(subset(z2_4, weight1))
    res = cov_exact(diff)
    assert res.value == 4
    lo, hi = cov_bounds(diff)
    assert lo == 4
    assert hi >= 4


def test_cov_greedy_pinned(z6):
    res = cov_greedy(subset(z6, [0, 1]))
    assert res.value == 3
    assert tuple(res.witness) == (0, 2, 4)
    assert cov_greedy(subset(z6, list(z6.elements()))).value == 1


def test_witness_actually_covers(z6, s3, z12):
    rng = random.Random(9)
    for G in (z6, s3, z12):
        elems = list(G.elements())
        for _ in range(25):
            A = rng.sample(elems, rng.randrange(1, len(elems)))
            for res in (cov_exact(subset(G, A)), cov_greedy(subset(G, A))):
                covered = {G.op(x, a) for x in res.witness for a in A}
                assert covered == set(elems)
                assert res.value == len(res.witness)


def test_oracle_equivalence_sampled(z6, z8, klein, s3):
    rng = random.Random(17)
    for G in (z6, z8, klein, s3):
        elems = list(G.elements())
        for _ in range(60):
            A = rng.sample(elems, rng.randrange(1, len(elems) + 1))
            want = naive_cov_value(G, A)
            got = cov_exact(subset(G, A))
            assert got.value == want
            assert got.proven_optimal
            assert cov_greedy(subset(G, A)).value >= want


def test_canonical_witness_is_lex_least(z6, z8, klein):
    rng = random.Random(29)
    for G in (z6, z8, klein):
        elems = list(G.elements())
        for _ in range(25):
            A = rng.sample(elems, rng.randrange(1, len(elems) + 1))
            want_value, want_witness = naive_cov(G, A)
            res = cov_exact(subset(G, A), canonical=True)
            assert res.value == want_value
            assert tuple(res.witness) == want_witness


def test_subgroup_index_identity_small(z12, s3, klein):
    for G in (z12, s3, klein):
        for H in all_subgroups(G):
            res = cov_exact(subset(G, H.members))
            assert res.value == G.order // H.order


def test_bounds_sandwich_exact(z6, z8, s3, z12):
    rng = random.Random(31)
    for G in (z6, z8, s3, z12):
        elems = list(G.elements())
        for _ in range(30):
            A = rng.sample(elems, rng.randrange(1, len(elems) + 1))
            lo, hi = cov_bounds(subset(G, A))
            exact = cov_exact(subset(G, A)).value
            greedy = cov_greedy(subset(G, A)).value
            assert lo <= exact <= greedy == hi
            assert math.ceil(G.order / len(A)) <= lo
            assert greedy <= exact * (1 + math.log(G.order))


def test_bounds_pinned(z6):
    assert cov_bounds(subset(z6, [0, 3])) == (3, 3)
    assert cov_bounds(subset(z6, list(z6.elements()))) == (1, 1)


def test_monotone_under_superset(z8, s3):
    rng = random.Random(37)
    for G in (z8, s3):
        elems = list(G.elements())
        for _ in range(20):
            B = rng.sample(elems, rng.randrange(1, len(elems)))
            extra = [g for g in elems if g not in B]
            A = B + rng.sample(extra, rng.randrange(1, len(extra) + 1))
            assert cov_exact(subset(G, A)).value <= cov_exact(subset(G, B)).value


def test_translation_invariance(z8, s3):
    rng = random.Random(41)
    for G in (z8, s3):
        elems = list(G.elements())
        for _ in range(20):
            A = rng.sample(elems, rng.randrange(1, len(elems) + 1))
            base = cov_exact(subset(G, A)).value
            g = rng.choice(elems)
            gA = [G.op(g, a) for a in A]
            assert cov_exact(subset(G, gA)).value == base


def test_budget_exhaustion_is_flagged():
    G = build_group(power_spec(2, 8))
    cell = [G.pack([1 if i == j else 0 for i in range(8)]) for j in range(8)]
    diff = difference_set(subset(G, cell))
    res = cov_exact(diff, budget=200)
    assert not res.proven_optimal
    assert res.value >= 12  # true value 14; any found cover is at least this
    covered = {G.op(x, a) for x in res.witness for a in diff.members}
    assert covered == set(G.elements())


def test_empty_set_rejected_by_ops(z6):
    empty = subset(z6, [])
    with pytest.raises(EmptySet):
        difference_set(empty)
    with pytest.raises(EmptySet):
        cov_exact(empty)
    with pytest.raises(EmptySet):
        cov_greedy(empty)
    with pytest.raises(EmptySet):
        cov_bounds(empty)


def test_subset_json_round_trip(z6, z2_4):
    A = subset(z2_4, [3, 12, 5])
    doc = A.to_json()
    back = subset_from_json(z2_4, doc)
    assert back.members == A.members
    B = subset(z6, [1, 2, 2, 1])
    assert B.members == (1, 2)


def test_exact_on_larger_power_group_fast():
    G = build_group(power_spec(2, 7))
    cell = [G.pack([1 if i == j else 0 for i in range(7)]) for j in range(7)]
    diff = difference_set(subset(G, cell))
    res = cov_exact(diff)
    assert res.value == 8
    assert res.proven_optimal
    assert res.nodes_explored > 0
