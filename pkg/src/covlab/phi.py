"""Partition exploration: maximize the minimum cell covering number.

Over partitions of a finite group into exactly n nonempty cells, the
quantity of interest is the largest achievable value of
min over cells of cov(cell * cell^{-1}).  Exhaustive mode enumerates
set partitions through restricted growth assignment (element i joins
an existing cell or opens the next one, which visits each partition
once) and prunes with monotonicity: a difference set only grows with
its cell, so any partial cell already caps its partition's value.

Values here are per group: the searched quantity is a lower bound for
the group-universal bound, never the bound itself, and reports say so.
A partition whose value exceeds n is flagged as a noteworthy finding
but never asserted against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .covering import GroupSubset, cov_exact, difference_set
from .errors import ConfigInvalid, InvalidPartition
from .groups import Group, element_to_json

__all__ = [
    "PartitionCandidate",
    "PhiReport",
    "min_cell_cov",
    "phi_exhaustive",
    "phi_random_search",
]


@dataclass(frozen=True)
class PartitionCandidate:
    """Disjoint nonempty cells covering the whole finite group."""

    group: Group
    cells: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.cells)


def _validate_partition(G: Group, cells) -> PartitionCandidate:
    norm = []
    seen: set = set()
    for cell in cells:
        members = tuple(sorted(G.check_element(g) for g in cell))
        if not members:
            raise InvalidPartition("empty cell")
        overlap = seen.intersection(members)
        if overlap:
            w = min(overlap)
            raise InvalidPartition(f"element {w!r} appears in two cells", witness=w)
        seen.update(members)
        norm.append(members)
    for g in G.elements():
        if g not in seen:
            raise InvalidPartition(f"element {g!r} is in no cell", witness=g)
    return PartitionCandidate(G, tuple(norm))


def min_cell_cov(P: PartitionCandidate) -> int:
    """Minimum over the cells of the exact cover number of cell*cell^{-1}."""
    P = _validate_partition(P.group, P.cells)
    memo: dict[int, int] = {}
    return min(_cell_cov(P.group, cell, memo) for cell in P.cells)


def _cell_cov(G: Group, cell: tuple[int, ...], memo: dict[int, int]) -> int:
    key = 0
    for g in cell:
        key |= 1 << g
    val = memo.get(key)
    if val is None:
        diff = difference_set(GroupSubset.from_elements(G, cell))
        result = cov_exact(diff)
        if not result.proven_optimal:
            raise AssertionError("cell cover search exhausted its budget")
        val = result.value
        memo[key] = val
    return val


@dataclass(frozen=True)
class PhiReport:
    group: str
    n: int
    phi_value: int
    partition: tuple[tuple[int, ...], ...]
    mode: str
    partitions_examined: int
    seed: int | None
    complete: bool

    @property
    def exceeds_n(self) -> bool:
        """True when the value beats the cell count, a noteworthy find."""
        return self.phi_value > self.n

    def to_json(self, G: Group) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "phi_value": self.phi_value,
            "partition": [[element_to_json(G, g) for g in cell] for cell in self.partition],
            "mode": self.mode,
            "partitions_examined": self.partitions_examined,
            "seed": self.seed,
            "complete": self.complete,
            "exceeds_n": self.exceeds_n,
        }


class _Stop(Exception):
    pass


def phi_exhaustive(G: Group, n: int, budget: int | None = None) -> PhiReport:
    """Exact max-min over every partition into n nonempty cells.

    ``budget`` caps the number of complete partitions scored; hitting
    it returns the best so far with ``complete`` false.
    """
    elems = list(G.elements())
    N = len(elems)
    if not 1 <= n <= N:
        raise ConfigInvalid(f"cannot split {N} elements into {n} nonempty cells")
    memo: dict[int, int] = {}
    state = {"examined": 0, "best": 0, "cells": None}

    def assign(i: int, blocks: list[list[int]]):
        if i == N:
            if len(blocks) != n:
                return
            if budget is not None and state["examined"] >= budget:
                raise _Stop
            state["examined"] += 1
            value = min(_cell_cov(G, tuple(b), memo) for b in blocks)
            if value > state["best"] or state["cells"] is None:
                state["best"] = value
                state["cells"] = tuple(tuple(b) for b in blocks)
            return
        if len(blocks) + (N - i) < n:
            return
        for b in range(min(len(blocks) + 1, n)):
            opened = b == len(blocks)
            if opened:
                blocks.append([elems[i]])
            else:
                blocks[b].append(elems[i])
            # a partial cell already bounds the final min from above
            if state["cells"] is None or _cell_cov(G, tuple(blocks[b]), memo) > state["best"]:
                assign(i + 1, blocks)
            if opened:
                blocks.pop()
            else:
                blocks[b].pop()

    complete = True
    try:
        assign(0, [])
    except _Stop:
        complete = False
    return PhiReport(
        group=G.label,
        n=n,
        phi_value=state["best"],
        partition=state["cells"] or (),
        mode="exhaustive",
        partitions_examined=state["examined"],
        seed=None,
        complete=complete,
    )


def phi_random_search(G: Group, n: int, iterations: int, seed: int) -> PhiReport:
    """Seeded random partitions with improving single-element moves.

    A move relocates one element to another cell, is rejected if it
    empties the source, and sticks only when the score strictly
    improves.  Identical seeds give identical reports.
    """
    elems = list(G.elements())
    N = len(elems)
    if not 1 <= n <= N:
        raise ConfigInvalid(f"cannot split {N} elements into {n} nonempty cells")
    rng = random.Random(seed)
    order = elems[:]
    rng.shuffle(order)
    cells = [[g] for g in order[:n]]
    for g in order[n:]:
        cells[rng.randrange(n)].append(g)
    memo: dict[int, int] = {}

    def score(cs) -> int:
        return min(_cell_cov(G, tuple(sorted(c)), memo) for c in cs)

    best = score(cells)
    examined = 1
    for _ in range(iterations):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if src == dst or len(cells[src]) == 1:
            continue
        g = cells[src][rng.randrange(len(cells[src]))]
        cells[src].remove(g)
        cells[dst].append(g)
        examined += 1
        candidate = score(cells)
        if candidate > best:
            best = candidate
        else:
            cells[dst].remove(g)
            cells[src].append(g)
    partition = tuple(tuple(sorted(c)) for c in cells)
    return PhiReport(
        group=G.label,
        n=n,
        phi_value=best,
        partition=partition,
        mode="random",
        partitions_examined=examined,
        seed=seed,
        complete=False,
    )
