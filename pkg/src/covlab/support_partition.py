"""Support-size partitions of product groups and their witness step.

For a direct product (or ordinal sum), the support of an element is
the set of positions carrying a non-identity coordinate.  Partitioning
by support size n gives cells A_n whose difference sets are support
bounded: |supt(a*b^{-1})| <= 2n for a, b in A_n.  Consequently, given
any finite obstacle set K, an element h supported entirely outside
K's positions with |supt(h)| = 2n+1 cannot lie in K*A_n*A_n^{-1},
which is the witness produced and checked here.

Finite abelian Cayley-table groups join the product world through
their invariant-factor decomposition, computed by iteratively
splitting off a maximal-order cyclic factor with a complement; the
result carries an explicit relabeling onto the cyclic product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import Region
from .errors import (
    InsufficientFactors,
    NotAbelian,
    NotProductBacked,
    UnboundedEnumeration,
)
from .groups import (
    CyclicGroup,
    Group,
    OrdinalSumGroup,
    ProductGroup,
    element_to_json,
    is_abelian,
    order_of,
    subgroup_generated,
)
from .ordinals import Ordinal
from .parallel import deterministic_map

__all__ = [
    "SupportProfile",
    "SupportPartition",
    "SupportWitnessReport",
    "InvariantDecomposition",
    "support_of",
    "support_partition",
    "support_witness",
    "verify_support_witness",
    "invariant_factors",
]


@dataclass(frozen=True)
class SupportProfile:
    element: object
    support: tuple
    size: int


def support_of(G: Group, g) -> SupportProfile:
    """Positions of g with non-identity coordinates, and their count."""
    if isinstance(G, ProductGroup):
        coords = G.unpack(g)
        supp = tuple(
            i for i, (c, f) in enumerate(zip(coords, G.factors)) if c != f.identity
        )
        return SupportProfile(g, supp, len(supp))
    if isinstance(G, OrdinalSumGroup):
        G.check_element(g)
        supp = g.support()
        return SupportProfile(g, supp, len(supp))
    raise NotProductBacked(f"{G.label} has no coordinate positions")


class SupportPartition:
    """Cells A_n = elements of support size n; disjoint, exhaustive."""

    def __init__(self, G: Group):
        if not isinstance(G, (ProductGroup, OrdinalSumGroup)):
            raise NotProductBacked(f"{G.label} has no coordinate positions")
        self.group = G

    @property
    def positions(self) -> int | None:
        """Number of factor positions; None when countably many."""
        if isinstance(self.group, ProductGroup):
            return len(self.group.factors)
        return None

    def size_of(self, g) -> int:
        return support_of(self.group, g).size

    def cell(self, n: int, region: Region | None = None) -> list:
        """Members of A_n, over the whole finite group or a region."""
        G = self.group
        if isinstance(G, ProductGroup):
            return [g for g in G.elements() if self.size_of(g) == n]
        if region is None:
            raise UnboundedEnumeration("countable cells need a region")
        if region.max_support is not None and n > region.max_support:
            return []
        co = G.coordinate
        values = [v for v in co.elements() if v != co.identity]
        positions = sorted(region.positions, key=lambda p: (p.q, p.n))
        out = []
        for supp in itertools.combinations(positions, n):
            for vals in itertools.product(values, repeat=n):
                out.append(_assemble(G, supp, vals))
        return out

    def cell_sizes(self, max_n: int | None = None) -> dict[int, int]:
        if not isinstance(self.group, ProductGroup):
            raise UnboundedEnumeration("cell sizes need a finite product")
        top = self.positions if max_n is None else min(max_n, self.positions)
        sizes = dict.fromkeys(range(top + 1), 0)
        for g in self.group.elements():
            n = self.size_of(g)
            if n <= top:
                sizes[n] += 1
        return sizes


def _assemble(G: OrdinalSumGroup, supp, vals):
    g = G.identity
    for p, v in zip(supp, vals):
        g = G.op(g, G.unit(p, v))
    return g


def support_partition(G: Group) -> SupportPartition:
    return SupportPartition(G)


def _position_stream(G: Group):
    if isinstance(G, ProductGroup):
        yield from range(len(G.factors))
    else:
        for q in range(G.blocks):
            n = 0
            while True:
                yield Ordinal(q, n)
                n += 1


def support_witness(G: Group, K, n: int):
    """Canonical h with |supt(h)| = 2n+1 supported away from K.

    S collects every position touched by K; h uses the 2n+1 smallest
    positions outside S with the smallest non-identity value each.
    Raises InsufficientFactors when the group is too narrow, reporting
    the minimum position count that would suffice.
    """
    part = SupportPartition(G)
    K = list(K)
    S = set()
    for k in K:
        S.update(support_of(G, k).support)
    want = 2 * n + 1
    T = []
    for p in _position_stream(G):
        if p not in S:
            T.append(p)
            if len(T) == want:
                break
    if len(T) < want:
        raise InsufficientFactors(
            f"need {len(S) + want} positions, group has {part.positions}",
            needed=len(S) + want,
        )
    if isinstance(G, ProductGroup):
        coords = [f.identity for f in G.factors]
        for i in T[:want]:
            f = G.factors[i]
            coords[i] = next(v for v in f.elements() if v != f.identity)
        return G.pack(coords)
    co = G.coordinate
    value = next(v for v in co.elements() if v != co.identity)
    g = G.identity
    for p in T[:want]:
        g = G.op(g, G.unit(p, value))
    return g


@dataclass(frozen=True)
class SupportWitnessReport:
    passed: bool
    cell_size: int
    products_checked: int
    witness: tuple | None

    def to_json(self, G: Group) -> dict:
        doc = {
            "passed": self.passed,
            "cell_size": self.cell_size,
            "products_checked": self.products_checked,
        }
        if self.witness is not None:
            k, a, b = self.witness
            doc["witness"] = {
                "k": element_to_json(G, k),
                "left": element_to_json(G, a),
                "right": element_to_json(G, b),
            }
        return doc


def verify_support_witness(G: Group, K, n: int, h, region: Region | None = None, threads: int = 1) -> SupportWitnessReport:
    """Check h is outside K*A_n*A_n^{-1} by enumerating the cell.

    On failure the first offending triple (k, a, b) in canonical order
    is reported.  The quotient table shards over cell chunks and the
    report does not depend on the thread count.
    """
    part = SupportPartition(G)
    cell = part.cell(n, region)
    K = sorted(K, key=_sort_key)
    G.check_element(h)

    def quotients(chunk):
        return [(G.op(a, G.inv(b)), a, b) for a in chunk for b in cell]

    table = {}
    chunks = _chunked(cell, threads)
    for part_rows in deterministic_map(quotients, chunks, threads):
        for prod, a, b in part_rows:
            table.setdefault(_sort_key(prod), (a, b))
    witness = None
    for k in K:
        target = G.op(G.inv(k), h)
        hit = table.get(_sort_key(target))
        if hit is not None:
            witness = (k, hit[0], hit[1])
            break
    return SupportWitnessReport(
        passed=witness is None,
        cell_size=len(cell),
        products_checked=len(cell) * len(cell) + len(K),
        witness=witness,
    )


def _sort_key(g):
    return g if isinstance(g, int) else g.sort_key()


def _chunked(items, parts):
    parts = max(1, parts)
    size = max(1, -(-len(items) // parts)) if items else 1
    return [items[i : i + size] for i in range(0, len(items), size)] or [[]]


@dataclass(frozen=True)
class InvariantDecomposition:
    """G as a product of cyclic groups of sizes d_1 | d_2 | ... | d_k."""

    dims: tuple[int, ...]
    product: ProductGroup
    relabeling: dict

    def image(self, g) -> int:
        return self.relabeling[g]


def invariant_factors(G: Group) -> InvariantDecomposition:
    """Invariant factors of a finite abelian group with the isomorphism.

    Splits off a maximal-order cyclic subgroup and a complement at each
    stage; every choice point takes the canonical smallest option, so
    the decomposition and relabeling are reproducible.
    """
    if G.order is None:
        raise UnboundedEnumeration("invariant factors need a finite group")
    ok, pair = is_abelian(G)
    if not ok:
        raise NotAbelian(f"elements {pair[0]} and {pair[1]} do not commute", witness=pair)
    dims, label = _decompose(G, tuple(sorted(G.elements())))
    product = ProductGroup([CyclicGroup(d) for d in dims]) if dims else ProductGroup([CyclicGroup(1)])
    if not dims:
        relabeling = {G.identity: product.identity}
    else:
        relabeling = {g: product.pack(coords) for g, coords in label.items()}
    return InvariantDecomposition(tuple(dims), product, relabeling)


def _decompose(G: Group, members: tuple) -> tuple[list[int], dict]:
    """dims ascending with divisibility, and coords per member."""
    if len(members) == 1:
        return [], {members[0]: ()}
    orders = {g: order_of(G, g) for g in members}
    max_order = max(orders.values())
    x = min(g for g, d in orders.items() if d == max_order)
    cyc = [G.identity]
    while len(cyc) < max_order:
        cyc.append(G.op(cyc[-1], x))
    power_index = {g: i for i, g in enumerate(cyc)}
    if max_order == len(members):
        return [max_order], {g: (i,) for g, i in power_index.items()}
    complement = _find_complement(G, members, set(cyc), len(members) // max_order)
    dims, sub_label = _decompose(G, complement)
    for d in dims:
        if max_order % d:
            raise AssertionError(f"complement factor {d} does not divide {max_order}")
    label = {}
    for i, xi in enumerate(cyc):
        for d in complement:
            label[G.op(xi, d)] = sub_label[d] + (i,)
    return dims + [max_order], label


def _find_complement(G: Group, members: tuple, cyc: set, size: int) -> tuple:
    """Smallest subgroup of the right size meeting the cyclic part trivially."""
    trivial = subgroup_generated([], G)
    found = {trivial.members}
    frontier = [trivial]
    best = None
    while frontier:
        nxt = []
        for H in frontier:
            if H.order == size and len(cyc & H.member_set) == 1:
                if best is None or H.members < best:
                    best = H.members
                continue
            if H.order >= size:
                continue
            for g in members:
                if g in H.member_set:
                    continue
                bigger = subgroup_generated(list(H.members) + [g], G)
                if not set(bigger.members) <= set(members):
                    continue
                if bigger.members not in found:
                    found.add(bigger.members)
                    nxt.append(bigger)
        frontier = nxt
    if best is None:
        raise AssertionError("no complement found; group is not abelian?")
    return best
