"""Group backends: cyclic, Cayley table, direct product, ordinal sum.

Finite groups use plain ints as elements.  Cyclic groups are residues,
Cayley groups are table indices, and products pack coordinates into a
single mixed-radix index with position 0 carrying the largest stride
(so Z_2^4 packs the bit string 1100 as 12).  Countable ordinal sums use
:class:`SumElement`, a frozen sorted map from ordinal positions to
non-identity coordinate values.

The fixed element enumeration order (int order; for sum elements, the
lexicographic order on sorted (position, value) coordinate tuples) is
the canonical order used everywhere a "smallest" choice is needed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (
    ElementNotInGroup,
    MalformedSpec,
    NotAGroup,
    NotNested,
    UnboundedEnumeration,
)
from .ordinals import Ordinal

__all__ = [
    "Group",
    "CyclicGroup",
    "CayleyGroup",
    "ProductGroup",
    "OrdinalSumGroup",
    "SumElement",
    "Subgroup",
    "build_group",
    "subgroup_generated",
    "right_coset_representatives",
    "all_subgroups",
    "is_abelian",
    "order_of",
    "element_to_json",
    "element_from_json",
]

EXHAUSTIVE_ASSOC_LIMIT = 256
SAMPLED_ASSOC_TRIPLES = 10**6


class Group:
    """Shared interface: op/inv/identity plus canonical enumeration."""

    kind: str = "abstract"
    order: int | None = None

    @property
    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def elements(self):
        """All elements in canonical order; finite groups only."""
        raise UnboundedEnumeration(f"{self.kind} group has no finite enumeration")

    @property
    def label(self) -> str:
        raise NotImplementedError

    def check_element(self, g):
        if not self.contains(g):
            raise ElementNotInGroup(f"{g!r} is not an element of {self.label}")
        return g

    def conjugate_by(self, *_):
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class CyclicGroup(Group):
    """Z_n under addition mod n; elements are residues 0..n-1."""

    kind = "cyclic"

    def __init__(self, order: int):
        if not isinstance(order, int) or isinstance(order, bool) or order < 1:
            raise MalformedSpec(f"cyclic order must be a positive integer, got {order!r}")
        self.order = order

    @property
    def identity(self) -> int:
        return 0

    def op(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def inv(self, a: int) -> int:
        return (-a) % self.order

    def contains(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order

    def elements(self):
        return iter(range(self.order))

    @property
    def label(self) -> str:
        return f"cyclic({self.order})"


class CayleyGroup(Group):
    """Finite group given by an explicit operation table.

    The table is validated at construction: square shape, entries in
    range, every row and column a permutation, a two-sided identity,
    and associativity (exhaustive up to order 256, a seeded sample of
    10^6 triples above that, or exhaustive on request).
    """

    kind = "cayley"

    def __init__(self, table, exhaustive: bool | None = None):
        self._table = self._normalize(table)
        self.order = len(self._table)
        self._identity = self._find_identity()
        self._check_associativity(exhaustive)
        self._inv = self._build_inverses()

    @staticmethod
    def _normalize(table):
        if not isinstance(table, (list, tuple)) or not table:
            raise MalformedSpec("cayley table must be a nonempty list of rows")
        n = len(table)
        rows = []
        for i, row in enumerate(table):
            if not isinstance(row, (list, tuple)) or len(row) != n:
                raise MalformedSpec(f"row {i} must have length {n}")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise MalformedSpec(f"row {i} entry {x!r} outside 0..{n - 1}")
            rows.append(tuple(row))
        for i in range(n):
            if len(set(rows[i])) != n:
                raise NotAGroup(f"row {i} is not a permutation", witness=(i,))
            col = {rows[j][i] for j in range(n)}
            if len(col) != n:
                raise NotAGroup(f"column {i} is not a permutation", witness=(i,))
        return tuple(rows)

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self._table[e][x] == x and self._table[x][e] == x for x in range(n)):
                return e
        raise NotAGroup("table has no two-sided identity")

    def _check_associativity(self, exhaustive: bool | None):
        n = self.order
        t = self._table
        if exhaustive or (exhaustive is None and n <= EXHAUSTIVE_ASSOC_LIMIT):
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(SAMPLED_ASSOC_TRIPLES)
            )
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAGroup(
                    f"associativity fails at ({a}, {b}, {c})", witness=(a, b, c)
                )

    def _build_inverses(self):
        e = self._identity
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self._table[a][b] == e and self._table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NotAGroup(f"element {a} has no two-sided inverse", witness=(a,))
        return tuple(inv)

    @property
    def identity(self) -> int:
        return self._identity

    def op(self, a: int, b: int) -> int:
        return self._table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def contains(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order

    def elements(self):
        return iter(range(self.order))

    @property
    def label(self) -> str:
        return f"cayley(order={self.order})"


class ProductGroup(Group):
    """Finite direct product; elements are packed mixed-radix indices."""

    kind = "product"

    def __init__(self, factors: list[Group]):
        if not factors:
            raise MalformedSpec("product needs at least one factor")
        for f in factors:
            if f.order is None:
                raise MalformedSpec("product factors must be finite")
        self.factors = tuple(factors)
        self.order = 1
        for f in factors:
            self.order *= f.order
        strides = []
        acc = 1
        for f in reversed(factors):
            strides.append(acc)
            acc *= f.order
        self._strides = tuple(reversed(strides))
        self._identity = self.pack([f.identity for f in factors])

    def pack(self, coords) -> int:
        coords = list(coords)
        if len(coords) != len(self.factors):
            raise ElementNotInGroup(
                f"expected {len(self.factors)} coordinates, got {len(coords)}"
            )
        total = 0
        for c, f, s in zip(coords, self.factors, self._strides):
            f.check_element(c)
            total += c * s
        return total

    def unpack(self, g: int) -> tuple[int, ...]:
        self.check_element(g)
        coords = []
        for f, s in zip(self.factors, self._strides):
            coords.append((g // s) % f.order)
        return tuple(coords)

    @property
    def identity(self) -> int:
        return self._identity

    def op(self, a: int, b: int) -> int:
        ca, cb = self.unpack(a), self.unpack(b)
        return self.pack(f.op(x, y) for f, x, y in zip(self.factors, ca, cb))

    def inv(self, a: int) -> int:
        return self.pack(f.inv(x) for f, x in zip(self.factors, self.unpack(a)))

    def contains(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order

    def elements(self):
        return iter(range(self.order))

    @property
    def label(self) -> str:
        parts = [f.label for f in self.factors]
        if len(set(parts)) == 1 and len(parts) > 1:
            return f"product({parts[0]}^{len(parts)})"
        return f"product({'x'.join(parts)})"


@dataclass(frozen=True)
class SumElement:
    """Finitely supported element of an ordinal sum.

    ``coords`` maps ordinal positions to non-identity values of the
    coordinate group, stored as a tuple of (Ordinal, value) pairs in
    strictly increasing position order.  The identity is the empty
    tuple.
    """

    coords: tuple[tuple[Ordinal, int], ...]

    def support(self) -> tuple[Ordinal, ...]:
        return tuple(p for p, _ in self.coords)

    def value_at(self, position: Ordinal, default: int) -> int:
        for p, v in self.coords:
            if p == position:
                return v
        return default

    def sort_key(self):
        return tuple((p.q, p.n, v) for p, v in self.coords)

    def __str__(self) -> str:
        if not self.coords:
            return "e"
        return "+".join(f"{v}@{p}" for p, v in self.coords)


class OrdinalSumGroup(Group):
    """Direct sum of Q omega-blocks of one finite coordinate group.

    Positions are ordinals below omega*Q; every element has finite
    support, so the group is countable and enumeration always needs an
    explicit position bound.
    """

    kind = "ordinal_sum"

    def __init__(self, blocks: int, coordinate: Group):
        if not isinstance(blocks, int) or isinstance(blocks, bool) or blocks < 1:
            raise MalformedSpec(f"blocks must be a positive integer, got {blocks!r}")
        if coordinate.order is None:
            raise MalformedSpec("coordinate group must be finite")
        if coordinate.order < 2:
            raise MalformedSpec("coordinate group must be nontrivial")
        self.blocks = blocks
        self.coordinate = coordinate
        self.order = None

    @property
    def identity(self) -> SumElement:
        return SumElement(())

    def valid_position(self, p: Ordinal) -> bool:
        return 0 <= p.q < self.blocks

    def unit(self, position: Ordinal, value: int) -> SumElement:
        """Element with a single non-identity coordinate."""
        if not self.valid_position(position):
            raise ElementNotInGroup(f"position {position} outside omega*{self.blocks}")
        self.coordinate.check_element(value)
        if value == self.coordinate.identity:
            return self.identity
        return SumElement(((position, value),))

    def contains(self, g) -> bool:
        if not isinstance(g, SumElement):
            return False
        last = None
        for p, v in g.coords:
            if not isinstance(p, Ordinal) or not self.valid_position(p):
                return False
            if last is not None and not last < p:
                return False
            if not self.coordinate.contains(v) or v == self.coordinate.identity:
                return False
            last = p
        return True

    def op(self, a: SumElement, b: SumElement) -> SumElement:
        co = self.coordinate
        merged: dict[Ordinal, int] = dict(a.coords)
        for p, v in b.coords:
            w = co.op(merged.get(p, co.identity), v)
            if w == co.identity:
                merged.pop(p, None)
            else:
                merged[p] = w
        return SumElement(tuple(sorted(merged.items(), key=lambda pv: (pv[0].q, pv[0].n))))

    def inv(self, a: SumElement) -> SumElement:
        co = self.coordinate
        return SumElement(tuple((p, co.inv(v)) for p, v in a.coords))

    def enumerate_supported(self, positions, max_support: int | None = None):
        """All elements supported inside ``positions``, smallest first.

        Yields by support size, then by support positions, then by
        coordinate values, so the order is canonical.  ``max_support``
        caps the number of non-identity coordinates; without it the
        region has |H|^len(positions) elements.
        """
        positions = sorted(positions, key=lambda p: (p.q, p.n))
        for p in positions:
            if not self.valid_position(p):
                raise ElementNotInGroup(f"position {p} outside omega*{self.blocks}")
        co = self.coordinate
        values = [v for v in co.elements() if v != co.identity]
        top = len(positions) if max_support is None else min(max_support, len(positions))
        for size in range(top + 1):
            for supp in itertools.combinations(positions, size):
                for vals in itertools.product(values, repeat=size):
                    yield SumElement(tuple(zip(supp, vals)))

    @property
    def label(self) -> str:
        return f"ordinal_sum({self.blocks}xomega,{self.coordinate.label})"


def build_group(spec) -> Group:
    """Construct a group from its JSON description.

    Formats: {"kind":"cyclic","order":N}, {"kind":"cayley","table":[[...]]},
    {"kind":"product","factors":[spec,...]}, and
    {"kind":"ordinal_sum","blocks":Q,"block_length":"omega","coordinate":spec}.
    """
    if not isinstance(spec, dict):
        raise MalformedSpec(f"group spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "cyclic":
        _require_keys(spec, {"kind", "order"})
        return CyclicGroup(spec.get("order"))
    if kind == "cayley":
        _require_keys(spec, {"kind", "table"}, optional={"exhaustive"})
        return CayleyGroup(spec.get("table"), exhaustive=spec.get("exhaustive"))
    if kind == "product":
        _require_keys(spec, {"kind", "factors"})
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise MalformedSpec("product factors must be a nonempty list")
        return ProductGroup([build_group(f) for f in factors])
    if kind == "ordinal_sum":
        _require_keys(spec, {"kind", "blocks", "block_length", "coordinate"})
        if spec.get("block_length") != "omega":
            raise MalformedSpec('ordinal_sum block_length must be "omega"')
        coordinate = build_group(spec.get("coordinate"))
        return OrdinalSumGroup(spec.get("blocks"), coordinate)
    raise MalformedSpec(f"unknown group kind {kind!r}")


def _require_keys(spec: dict, required: set, optional: set = frozenset()):
    missing = required - spec.keys()
    if missing:
        raise MalformedSpec(f"group spec missing keys {sorted(missing)}")
    extra = spec.keys() - required - optional
    if extra:
        raise MalformedSpec(f"group spec has unknown keys {sorted(extra)}")


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a finite group, stored as a sorted member tuple."""

    parent: Group
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, g) -> bool:
        return g in self.member_set

    @property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __le__(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set


def subgroup_generated(generators, G: Group) -> Subgroup:
    """Smallest subgroup containing ``generators``, by saturation."""
    if G.order is None:
        raise UnboundedEnumeration("subgroup closure needs a finite group")
    gens = sorted({G.check_element(g) for g in generators})
    gens += [G.inv(g) for g in gens]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.op(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = sorted(nxt)
    return Subgroup(G, tuple(sorted(seen)))


def right_coset_representatives(H: Subgroup, K: Subgroup) -> tuple[int, ...]:
    """Canonical representatives of the right cosets of H inside K minus H.

    Each x is the smallest member of its coset Hx; K is H plus the
    disjoint union of the cosets Hx.  Requires H strictly inside K.
    """
    if H.parent is not K.parent:
        raise NotNested("subgroups belong to different groups")
    if not H.member_set < K.member_set:
        raise NotNested("first subgroup must be strictly contained in the second")
    G = H.parent
    covered = set(H.members)
    reps = []
    for x in K.members:
        if x in covered:
            continue
        reps.append(x)
        coset = {G.op(h, x) for h in H.members}
        if not coset <= K.member_set:
            raise NotNested(f"coset of {x} escapes the larger subgroup")
        covered |= coset
    return tuple(reps)


def all_subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup of a finite group, by closure enumeration.

    Breadth-first over generated subgroups: extend each known subgroup
    by one outside element and close.  Practical for |G| around 100.
    """
    if G.order is None:
        raise UnboundedEnumeration("subgroup listing needs a finite group")
    trivial = subgroup_generated([], G)
    found = {trivial.members: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for g in G.elements():
                if g in H.member_set:
                    continue
                bigger = subgroup_generated(list(H.members) + [g], G)
                if bigger.members not in found:
                    found[bigger.members] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.members))


def is_abelian(G: Group) -> tuple[bool, tuple | None]:
    """Whether a finite group commutes; returns a witness pair if not."""
    elems = list(G.elements())
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            if G.op(a, b) != G.op(b, a):
                return False, (a, b)
    return True, None


def order_of(G: Group, g) -> int:
    """Multiplicative order of an element of a finite group."""
    G.check_element(g)
    n = 1
    x = g
    while x != G.identity:
        x = G.op(x, g)
        n += 1
        if G.order is not None and n > G.order:
            raise NotAGroup(f"element {g!r} never reaches the identity")
    return n


def element_to_json(G: Group, g):
    """JSON value for an element: int index, coordinate list for
    products, or coordinate pairs for sums."""
    if isinstance(G, OrdinalSumGroup):
        G.check_element(g)
        return [[p.to_json(), v] for p, v in g.coords]
    if isinstance(G, ProductGroup):
        return list(G.unpack(G.check_element(g)))
    return G.check_element(g)


def element_from_json(G: Group, value):
    """Parse an element: int index, coordinate list (products), or
    [[q,n], value] pairs (ordinal sums)."""
    if isinstance(G, OrdinalSumGroup):
        if not isinstance(value, list):
            raise MalformedSpec(f"sum element must be a list of pairs, got {value!r}")
        coords = []
        for item in value:
            if not isinstance(item, list) or len(item) != 2:
                raise MalformedSpec(f"sum coordinate must be [[q,n], value], got {item!r}")
            pos = Ordinal.from_json(item[0])
            coords.append((pos, item[1]))
        coords.sort(key=lambda pv: (pv[0].q, pv[0].n))
        g = G.identity
        for pos, v in coords:
            g = G.op(g, G.unit(pos, v))
        return g
    if isinstance(value, list) and isinstance(G, ProductGroup):
        return G.pack(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return G.check_element(value)
    raise MalformedSpec(f"cannot parse element {value!r} for {G.label}")
