"""Support-size partitions, their witnesses, invariant factors."""

from __future__ import annotations

import itertools
import math
import random

import pytest

from covlab import (
    CayleyGroup,
    CyclicGroup,
    InsufficientFactors,
    NotAbelian,
    NotProductBacked,
    Ordinal,
    ProductGroup,
    Region,
    SupportPartition,
    build_group,
    invariant_factors,
    support_of,
    support_partition,
    support_witness,
    verify_support_witness,
)
from conftest import KLEIN_TABLE, cyclic_table, pair_table, power_spec, s3_table, sum_spec
from oracles import naive_order_census


def test_support_pinned(z2_4, sum_2_z2):
    prof = support_of(z2_4, z2_4.pack([0, 1, 1, 0]))
    assert prof.support == (1, 2)
    assert prof.size == 2
    assert support_of(z2_4, 0).size == 0
    z3sq = ProductGroup([CyclicGroup(3), CyclicGroup(3)])
    assert support_of(z3sq, z3sq.pack([1, 2])).size == 2
    g = sum_2_z2.unit(Ordinal(1, 4), 1)
    assert support_of(sum_2_z2, g).support == (Ordinal(1, 4),)


def test_support_needs_coordinates(z6):
    with pytest.raises(NotProductBacked):
        support_of(z6, 3)
    with pytest.raises(NotProductBacked):
        SupportPartition(z6)


def test_cell_sizes_are_binomial(z2_4):
    part = support_partition(z2_4)
    assert part.cell_sizes() == {0: 1, 1: 4, 2: 6, 3: 4, 4: 1}


def test_cell_sizes_z3_squared():
    G = ProductGroup([CyclicGroup(3), CyclicGroup(3)])
    part = SupportPartition(G)
    assert len(part.cell(1)) == 4
    assert part.cell_sizes() == {0: 1, 1: 4, 2: 4}


def test_cells_partition_the_group(z2_4, z2xz4):
    for G in (z2_4, z2xz4):
        part = SupportPartition(G)
        seen = []
        for n in range(part.positions + 1):
            seen.extend(part.cell(n))
        assert sorted(seen) == list(G.elements())


def test_countable_cell_counts(sum_2_z2, sum_3_z3):
    region = Region(tuple(Ordinal(0, k) for k in range(6)), None)
    part2 = SupportPartition(sum_2_z2)
    assert len(part2.cell(2, region)) == math.comb(6, 2)
    part3 = SupportPartition(sum_3_z3)
    assert len(part3.cell(2, region)) == math.comb(6, 2) * 4
    assert part3.cell(0, region) == [sum_3_z3.identity]


def test_key_inequality_exhaustive_small():
    for spec, bound_positions in ((power_spec(2, 6), 6), (power_spec(3, 3), 3)):
        G = build_group(spec)
        part = SupportPartition(G)
        for n in range(bound_positions + 1):
            cell = part.cell(n)
            for a, b in itertools.product(cell, repeat=2):
                assert part.size_of(G.op(a, G.inv(b))) <= 2 * n


def test_witness_pinned_z2_8():
    G = build_group(power_spec(2, 8))
    K = [G.pack([1, 1, 0, 0, 0, 0, 0, 0])]
    h = support_witness(G, K, 1)
    assert G.unpack(h) == (0, 0, 1, 1, 1, 0, 0, 0)
    report = verify_support_witness(G, K, 1, h)
    assert report.passed
    assert report.witness is None


def test_witness_empty_k_n0(z2_4):
    h = support_witness(z2_4, [], 0)
    part = SupportPartition(z2_4)
    assert part.size_of(h) == 1
    report = verify_support_witness(z2_4, [], 0, h)
    assert report.passed


def test_witness_insufficient_factors(z2_4):
    K = [z2_4.pack([1, 1, 0, 0])]
    with pytest.raises(InsufficientFactors) as err:
        support_witness(z2_4, K, 1)
    assert err.value.needed > 4


def test_witness_negative_control_member_of_k():
    G = build_group(power_spec(2, 6))
    K = [G.pack([1, 0, 0, 0, 0, 0])]
    report = verify_support_witness(G, K, 1, K[0])
    assert not report.passed
    k, a, b = report.witness
    assert G.op(k, G.op(a, G.inv(b))) == K[0]


def test_witness_parity_keeps_odd_weights_safe(z2_4):
    # differences of weight-2 vectors stay even weight, so weight 3 passes
    part = SupportPartition(z2_4)
    for h in part.cell(3):
        report = verify_support_witness(z2_4, [0], 2, h)
        assert report.passed


def test_witness_negative_control_saturated():
    # in Z_3^2 the weight-2 differences reach every element, so with
    # e in K no h can escape
    G = ProductGroup([CyclicGroup(3), CyclicGroup(3)])
    for h in G.elements():
        report = verify_support_witness(G, [0], 2, h)
        assert not report.passed


def test_witness_randomized_trials():
    G = build_group(power_spec(2, 9))
    rng = random.Random(19)
    pool = list(range(6))  # keep supports inside the first six positions
    for _ in range(40):
        K = []
        for _ in range(rng.randrange(1, 4)):
            coords = [0] * 9
            for i in pool:
                coords[i] = rng.randrange(2)
            K.append(G.pack(coords))
        n = rng.randrange(0, 2)
        h = support_witness(G, K, n)
        report = verify_support_witness(G, K, n, h, threads=rng.choice([1, 3]))
        assert report.passed


def test_witness_on_countable_sum(sum_2_z2):
    G = sum_2_z2
    K = [G.unit(Ordinal(0, 0), 1)]
    h = support_witness(G, K, 1)
    assert support_of(G, h).size == 3
    region = Region(tuple(Ordinal(q, k) for q in range(2) for k in range(5)), 3)
    report = verify_support_witness(G, K, 1, h, region)
    assert report.passed


def test_invariant_factors_pinned(klein, z2xz4):
    assert invariant_factors(CayleyGroup(cyclic_table(6))).dims == (6,)
    assert invariant_factors(klein).dims == (2, 2)
    assert invariant_factors(CayleyGroup(pair_table([2, 4]))).dims == (2, 4)
    assert invariant_factors(z2xz4).dims == (2, 4)
    assert invariant_factors(CayleyGroup(pair_table([2, 2, 2]))).dims == (2, 2, 2)
    assert invariant_factors(CayleyGroup(pair_table([2, 6]))).dims == (2, 6)
    assert invariant_factors(CyclicGroup(12)).dims == (12,)


def test_invariant_factors_divisibility_chain():
    for orders in ([2, 4], [2, 2, 2], [2, 6], [3, 3], [4, 4]):
        dims = invariant_factors(CayleyGroup(pair_table(orders))).dims
        for a, b in zip(dims, dims[1:]):
            assert b % a == 0


def test_invariant_factors_rejects_nonabelian(s3):
    with pytest.raises(NotAbelian):
        invariant_factors(s3)


def test_relabeling_is_an_isomorphism(klein):
    for G in (CayleyGroup(pair_table([2, 4])), klein, CayleyGroup(cyclic_table(9))):
        dec = invariant_factors(G)
        P = dec.product
        images = [dec.image(g) for g in G.elements()]
        assert sorted(images) == sorted(P.elements())
        for a in G.elements():
            for b in G.elements():
                assert dec.image(G.op(a, b)) == P.op(dec.image(a), dec.image(b))
        assert naive_order_census(G) == naive_order_census(P)


def test_relabeled_group_supports_partition():
    G = CayleyGroup(pair_table([2, 4]))
    dec = invariant_factors(G)
    part = SupportPartition(dec.product)
    assert part.cell_sizes() == {0: 1, 1: 4, 2: 3}
