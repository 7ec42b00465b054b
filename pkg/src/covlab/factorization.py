"""Unique chain factorization, offset labels, cells, and separation.

Every non-identity element g of a chained group peels uniquely into
coset representatives: the leading factor lives at the predecessor of
the smallest stratum containing g, and the remainder recurses strictly
downward.  Factors are listed with ordinals ascending, so the LAST
factor is the leading one.  Applying each ordinal's finite offset to
the factor list gives the element's label, a finite sequence of
naturals; the label's fiber is its cell.  The cells partition the
group, with the empty label reserved for the identity.

The separation step picks, above a finite obstacle set K, a fresh
representative h whose offset avoids a given label s; translating the
cell of s by K and by h then yields disjoint sets, which is checkable
by bounded enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import Region, enumerate_region
from .errors import NoSuitableLabel, UnboundedEnumeration
from .groups import element_to_json
from .ordinals import Ordinal
from .parallel import deterministic_map

__all__ = [
    "Factorization",
    "SeparationReport",
    "factorize",
    "cell_label",
    "enumerate_cell",
    "separation_witness",
    "verify_separation",
]


@dataclass(frozen=True)
class Factorization:
    """Factors as (ordinal, representative) pairs, ordinals ascending."""

    factors: tuple[tuple[Ordinal, object], ...]

    @property
    def length(self) -> int:
        return len(self.factors)

    def ordinals(self) -> tuple[Ordinal, ...]:
        return tuple(o for o, _ in self.factors)

    def product(self, G):
        g = G.identity
        for _, x in self.factors:
            g = G.op(g, x)
        return g

    def to_json(self, G) -> list:
        return [
            {"ordinal": o.to_json(), "rep": element_to_json(G, x)}
            for o, x in self.factors
        ]


def factorize(g, chain) -> Factorization:
    """Unique representation of g as a product of chain representatives.

    The identity gets the empty factorization.  Otherwise the leading
    coset is peeled off the top repeatedly; ordinals strictly decrease
    during peeling, so the loop terminates, and the listed (ascending)
    order multiplies back to g.
    """
    G = chain.group
    G.check_element(g)
    factors = []
    while g != G.identity:
        top = chain.stratum_of(g)
        gamma = chain.predecessor(top)
        x = chain.rep_matching(g, gamma)
        factors.append((gamma, x))
        g = G.op(g, G.inv(x))
        if len(factors) > 1 and not factors[-1][0] < factors[-2][0]:
            raise AssertionError("peeling failed to descend strictly")
    return Factorization(tuple(reversed(factors)))


def cell_label(g, chain) -> tuple[int, ...]:
    """Offsets of g's factorization ordinals, ascending; () for identity."""
    return tuple(o.offset for o in factorize(g, chain).ordinals())


def enumerate_cell(s, chain, region: Region | None = None) -> list:
    """All elements of the bounded region whose label equals s.

    Built constructively: choose strictly ascending step labels whose
    offsets spell out s, then take every product of one representative
    per chosen label.  Uniqueness of factorization makes each product
    distinct, with label exactly s.
    """
    s = tuple(s)
    G = chain.group
    if chain.is_finite:
        candidates = list(chain.step_labels)
        value_cap = None
    else:
        if region is None:
            raise UnboundedEnumeration("cell enumeration on a countable chain needs a region")
        candidates = sorted(region.positions, key=lambda p: (p.q, p.n))
        value_cap = region.max_support
    if value_cap is not None and len(s) > value_cap:
        return []
    out = []
    for labels in _ascending_choices(candidates, s):
        rep_pools = [chain.reps_at(lab) for lab in labels]
        for reps in itertools.product(*rep_pools):
            g = G.identity
            for x in reps:
                g = G.op(g, x)
            out.append(g)
    if out and not isinstance(out[0], int):
        return sorted(out, key=lambda e: e.sort_key())
    return sorted(out)


def _ascending_choices(candidates, offsets):
    """Strictly ascending label tuples matching the offset sequence."""
    if not offsets:
        yield ()
        return
    for i, lab in enumerate(candidates):
        if lab.offset == offsets[0]:
            for rest in _ascending_choices(candidates[i + 1 :], offsets[1:]):
                yield (lab,) + rest


def separation_witness(K, s, chain):
    """Fresh representative h separating the cell of s from K translates.

    Scans for the smallest step label above every factor ordinal used
    by K whose offset avoids the entries of s, and returns the
    canonical representative there.  On a finite chain the scan can
    exhaust the labels, which raises NoSuitableLabel.
    """
    G = chain.group
    s = tuple(s)
    forbidden = set(s)
    start = None
    for g in K:
        G.check_element(g)
        if g == G.identity:
            continue
        top = chain.predecessor(chain.stratum_of(g))
        if start is None or start < top:
            start = top
    if start is None:
        if chain.is_finite:
            lo = chain.step_labels[0]
        else:
            lo = Ordinal(0, 0)
    else:
        lo = start.successor()
    scanned = 0
    for gamma in chain.labels_from(lo):
        if gamma.offset not in forbidden:
            return chain.reps_at(gamma)[0]
        scanned += 1
        if not chain.is_finite and scanned > len(forbidden) + chain.group.blocks + 2:
            break
    raise NoSuitableLabel(
        f"no step label above {lo} avoids offsets {sorted(forbidden)}"
    )


@dataclass(frozen=True)
class SeparationReport:
    """Outcome of the bounded disjointness check."""

    passed: bool
    cell_size: int
    products_checked: int
    witness: tuple | None

    def to_json(self, G) -> dict:
        doc = {
            "passed": self.passed,
            "cell_size": self.cell_size,
            "products_checked": self.products_checked,
        }
        if self.witness is not None:
            k, a, b = self.witness
            doc["witness"] = {
                "k": element_to_json(G, k),
                "cell_left": element_to_json(G, a),
                "cell_right": element_to_json(G, b),
            }
        return doc


def verify_separation(K, s, h, chain, region: Region | None = None, threads: int = 1) -> SeparationReport:
    """Check K*cell(s) and h*cell(s) are disjoint over the bounded cell.

    Failure reports the first offending triple (k, a, b) with
    k*a = h*b in canonical order.  The enumeration shards cleanly; the
    report is identical for any thread count.
    """
    G = chain.group
    cell = enumerate_cell(s, chain, region)
    K = sorted(K, key=_key)
    for g in K:
        G.check_element(g)
    G.check_element(h)

    def left_products(chunk):
        return [(G.op(k, a), k, a) for k in K for a in chunk]

    chunks = _split(cell, threads)
    left = {}
    for part in deterministic_map(left_products, chunks, threads):
        for prod, k, a in part:
            left.setdefault(_key(prod), (prod, k, a))
    witness = None
    for b in cell:
        hit = left.get(_key(G.op(h, b)))
        if hit is not None:
            witness = (hit[1], hit[2], b)
            break
    return SeparationReport(
        passed=witness is None,
        cell_size=len(cell),
        products_checked=len(K) * len(cell) + len(cell),
        witness=witness,
    )


def _key(g):
    return g if isinstance(g, int) else g.sort_key()


def _split(items, parts):
    parts = max(1, parts)
    size = max(1, -(-len(items) // parts)) if items else 1
    return [items[i : i + size] for i in range(0, len(items), size)] or [[]]
