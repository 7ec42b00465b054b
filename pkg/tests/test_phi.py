"""Partition bound exploration against the full-enumeration oracle."""

from __future__ import annotations

import pytest

from covlab import (
    CyclicGroup,
    InvalidPartition,
    PartitionCandidate,
    min_cell_cov,
    phi_exhaustive,
    phi_random_search,
)
from oracles import naive_phi


def candidate(G, cells):
    return PartitionCandidate(G, tuple(tuple(c) for c in cells))


def test_min_cell_cov_pinned():
    z3 = CyclicGroup(3)
    assert min_cell_cov(candidate(z3, [[0], [1, 2]])) == 1
    assert min_cell_cov(candidate(z3, [[0, 1, 2]])) == 1
    z4 = CyclicGroup(4)
    assert min_cell_cov(candidate(z4, [[0, 1], [2, 3]])) == 2


def test_partition_validation():
    z4 = CyclicGroup(4)
    with pytest.raises(InvalidPartition):
        min_cell_cov(candidate(z4, [[0, 1], [1, 2, 3]]))
    with pytest.raises(InvalidPartition):
        min_cell_cov(candidate(z4, [[0, 1], [2]]))
    with pytest.raises(InvalidPartition):
        min_cell_cov(candidate(z4, [[0, 1, 2, 3], []]))


def test_phi_exhaustive_pinned_values():
    assert phi_exhaustive(CyclicGroup(3), 2).phi_value == 1
    report = phi_exhaustive(CyclicGroup(4), 2)
    assert report.phi_value == 2
    assert sorted(sorted(c) for c in report.partition) == [[0, 1], [2, 3]]
    assert report.complete
    assert not report.exceeds_n


def test_phi_single_cell_is_one():
    for order in (2, 5, 6):
        report = phi_exhaustive(CyclicGroup(order), 1)
        assert report.phi_value == 1


def test_phi_matches_oracle_small():
    for order in (3, 4, 5, 6):
        G = CyclicGroup(order)
        for n in (1, 2, 3):
            assert phi_exhaustive(G, n).phi_value == naive_phi(G, n)


def test_phi_on_klein_matches_oracle(klein):
    for n in (1, 2):
        assert phi_exhaustive(klein, n).phi_value == naive_phi(klein, n)


def test_phi_rejects_impossible_counts():
    from covlab import ConfigInvalid

    with pytest.raises(ConfigInvalid):
        phi_exhaustive(CyclicGroup(3), 4)
    with pytest.raises(ConfigInvalid):
        phi_exhaustive(CyclicGroup(3), 0)


def test_phi_budget_flagging():
    report = phi_exhaustive(CyclicGroup(6), 2, budget=1)
    assert not report.complete
    assert report.partitions_examined == 1
    assert report.phi_value >= 1


def test_random_search_finds_z4_value():
    report = phi_random_search(CyclicGroup(4), 2, iterations=50, seed=1)
    assert report.phi_value == 2
    assert report.mode == "random"
    assert report.seed == 1


def test_random_search_never_beats_exhaustive():
    for order in (4, 5, 6):
        G = CyclicGroup(order)
        for n in (2, 3):
            exact = phi_exhaustive(G, n).phi_value
            for seed in (0, 7):
                assert phi_random_search(G, n, 40, seed).phi_value <= exact


def test_random_search_is_reproducible():
    a = phi_random_search(CyclicGroup(6), 3, iterations=30, seed=5)
    b = phi_random_search(CyclicGroup(6), 3, iterations=30, seed=5)
    assert a == b


def test_random_search_zero_iterations():
    report = phi_random_search(CyclicGroup(5), 2, iterations=0, seed=2)
    assert report.partitions_examined == 1
    assert report.phi_value >= 1


def test_report_json_shape():
    G = CyclicGroup(4)
    doc = phi_exhaustive(G, 2).to_json(G)
    assert doc["phi_value"] == 2
    assert doc["mode"] == "exhaustive"
    assert doc["complete"] is True
    assert doc["exceeds_n"] is False
    assert doc["partition"] == [[0, 1], [2, 3]]
