"""Shared corpus of small groups and spec builders."""

from __future__ import annotations

import itertools

import pytest

from covlab import CayleyGroup, CyclicGroup, ProductGroup, build_group


def cyclic_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


KLEIN_TABLE = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]


def s3_table():
    """Symmetric group on 3 letters, permutations indexed in
    lexicographic order, (p*q)(x) = p(q(x))."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]


def pair_table(orders):
    """Cayley table of a direct product of cyclic groups, elements
    indexed by mixed radix with the first order as the high digit."""
    coords = list(itertools.product(*[range(n) for n in orders]))
    index = {c: i for i, c in enumerate(coords)}
    return [
        [index[tuple((a + b) % n for a, b, n in zip(x, y, orders))] for y in coords]
        for x in coords
    ]


def product_spec(orders):
    return {
        "kind": "product",
        "factors": [{"kind": "cyclic", "order": n} for n in orders],
    }


def power_spec(base: int, m: int):
    return product_spec([base] * m)


def sum_spec(blocks: int, order: int):
    return {
        "kind": "ordinal_sum",
        "blocks": blocks,
        "block_length": "omega",
        "coordinate": {"kind": "cyclic", "order": order},
    }


@pytest.fixture
def z6():
    return CyclicGroup(6)


@pytest.fixture
def z8():
    return CyclicGroup(8)


@pytest.fixture
def z12():
    return CyclicGroup(12)


@pytest.fixture
def klein():
    return CayleyGroup(KLEIN_TABLE)


@pytest.fixture
def s3():
    return CayleyGroup(s3_table())


@pytest.fixture
def z2_4():
    return build_group(power_spec(2, 4))


@pytest.fixture
def z2xz4():
    return ProductGroup([CyclicGroup(2), CyclicGroup(4)])


@pytest.fixture
def sum_2_z2():
    return build_group(sum_spec(2, 2))


@pytest.fixture
def sum_3_z3():
    return build_group(sum_spec(3, 3))
