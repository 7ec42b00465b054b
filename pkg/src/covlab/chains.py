"""Ordinal-labeled subgroup chains and their validation.

A chain is a strictly increasing family of subgroups indexed by
ordinals, starting at the trivial subgroup and exhausting the group,
continuous at limit labels, with every non-top stratum proper.  Finite
groups use an explicit tower of generator stages; ordinal sums derive
their chain automatically (the stratum at beta holds the elements
supported strictly below beta), which makes continuity definitional.

Each step label gamma carries a canonical representative system for
the right cosets of stratum(gamma) inside the next stratum; these
representatives drive the unique factorization machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ChainConditionViolated,
    ChainDoesNotCover,
    IdentityElement,
    MalformedSpec,
    NotASubgroupTower,
    UnboundedEnumeration,
)
from .groups import (
    Group,
    OrdinalSumGroup,
    Subgroup,
    element_from_json,
    right_coset_representatives,
    subgroup_generated,
)
from .ordinals import Ordinal

__all__ = [
    "FiniteChain",
    "OrdinalSumChain",
    "Region",
    "build_chain",
    "chain_from_json",
    "default_region",
    "enumerate_region",
]


@dataclass(frozen=True)
class Region:
    """Bounded enumeration window for countable groups.

    ``positions`` lists the allowed support positions; ``max_support``
    optionally caps how many of them may be non-identity at once,
    which keeps regions with many positions tractable.
    """

    positions: tuple[Ordinal, ...]
    max_support: int | None = None

    def __post_init__(self):
        seen = set()
        for p in self.positions:
            if p in seen:
                raise MalformedSpec(f"region repeats position {p}")
            seen.add(p)


class FiniteChain:
    """Validated subgroup tower of a finite group with ordinal labels."""

    is_finite = True

    def __init__(self, group: Group, strata: list[Subgroup], labels: list[Ordinal]):
        self.group = group
        self.strata = tuple(strata)
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._validate()
        self.reps_by_label = {
            self.labels[i]: right_coset_representatives(self.strata[i], self.strata[i + 1])
            for i in range(len(self.strata) - 1)
        }

    def _validate(self):
        G = self.group
        if len(self.strata) < 2:
            raise NotASubgroupTower("tower needs at least two stages")
        if len(self.labels) != len(self.strata):
            raise MalformedSpec(
                f"{len(self.labels)} labels for {len(self.strata)} tower stages"
            )
        for a, b in zip(self.labels, self.labels[1:]):
            if not a < b:
                raise MalformedSpec(f"labels must strictly increase, got {a} before {b}")
        if self.strata[0].members != (G.identity,):
            raise ChainConditionViolated(
                1,
                "first stratum must be the trivial subgroup",
                witness=self.strata[0].members,
            )
        for i in range(len(self.strata) - 1):
            lo, hi = self.strata[i], self.strata[i + 1]
            if not lo.member_set <= hi.member_set:
                raise NotASubgroupTower(
                    f"stage {i} is not contained in stage {i + 1}"
                )
            if lo.order == hi.order:
                raise ChainConditionViolated(
                    2,
                    f"stages {i} and {i + 1} are equal; strict growth required",
                    witness=lo.members,
                )
        for i, lab in enumerate(self.labels):
            if i > 0 and lab.is_limit:
                union = set()
                for j in range(i):
                    union |= self.strata[j].member_set
                gap = sorted(self.strata[i].member_set - union)
                raise ChainConditionViolated(
                    3,
                    f"limit label {lab} must equal the union of earlier strata",
                    witness=gap[0] if gap else None,
                )
        if self.strata[-1].order != G.order:
            missing = next(g for g in G.elements() if g not in self.strata[-1].member_set)
            raise ChainConditionViolated(
                1, "strata do not exhaust the group", witness=missing
            )
        for i in range(len(self.strata) - 1):
            if self.strata[i].order >= G.order:
                raise ChainConditionViolated(
                    4, f"non-top stratum {i} is not proper", witness=self.labels[i]
                )

    @property
    def step_labels(self) -> tuple[Ordinal, ...]:
        """Labels that carry coset representatives (all but the top)."""
        return self.labels[:-1]

    def stratum_of(self, g) -> Ordinal:
        """Smallest label whose stratum contains g; a successor in the chain."""
        if g == self.group.identity:
            raise IdentityElement("identity belongs to every stratum")
        self.group.check_element(g)
        for lab, st in zip(self.labels, self.strata):
            if g in st.member_set:
                return lab
        raise ChainDoesNotCover(f"{g!r} escapes every stratum")

    def predecessor(self, label: Ordinal) -> Ordinal:
        i = self._index[label]
        if i == 0:
            raise ChainDoesNotCover(f"{label} has no predecessor in the chain")
        return self.labels[i - 1]

    def reps_at(self, label: Ordinal):
        return self.reps_by_label[label]

    def rep_matching(self, g, label: Ordinal):
        """The unique representative x at ``label`` with g in stratum*x."""
        G = self.group
        st = self.strata[self._index[label]].member_set
        for x in self.reps_by_label[label]:
            if G.op(g, G.inv(x)) in st:
                return x
        raise ChainDoesNotCover(f"{g!r} misses every coset at {label}")

    def in_stratum(self, g, label: Ordinal) -> bool:
        return g in self.strata[self._index[label]].member_set

    def labels_from(self, start: Ordinal):
        """Step labels at or above ``start``, ascending."""
        for lab in self.step_labels:
            if not lab < start:
                yield lab


class OrdinalSumChain:
    """Automatic chain of an ordinal sum: strata are support prefixes."""

    is_finite = False

    def __init__(self, group: OrdinalSumGroup):
        self.group = group
        co = group.coordinate
        self._values = tuple(v for v in co.elements() if v != co.identity)

    def stratum_of(self, g) -> Ordinal:
        if g == self.group.identity:
            raise IdentityElement("identity belongs to every stratum")
        self.group.check_element(g)
        top = g.coords[-1][0]
        return top.successor()

    def predecessor(self, label: Ordinal) -> Ordinal:
        if label.n == 0:
            raise ChainDoesNotCover(f"limit label {label} has no predecessor")
        return Ordinal(label.q, label.n - 1)

    def reps_at(self, position: Ordinal):
        """Single-coordinate representatives at a position, ascending."""
        return tuple(self.group.unit(position, v) for v in self._values)

    def rep_matching(self, g, position: Ordinal):
        v = g.value_at(position, self.group.coordinate.identity)
        if v == self.group.coordinate.identity:
            raise ChainDoesNotCover(f"{g} has no coordinate at {position}")
        return self.group.unit(position, v)

    def in_stratum(self, g, label: Ordinal) -> bool:
        self.group.check_element(g)
        return all(p < label for p, _ in g.coords)

    def labels_from(self, start: Ordinal):
        """Step labels at or above ``start``, ascending (never exhausts)."""
        q, n = start.q, start.n
        while q < self.group.blocks:
            yield Ordinal(q, n)
            n += 1

    @property
    def step_labels(self):
        raise UnboundedEnumeration("ordinal-sum chains have infinitely many labels")


def build_chain(G: Group, tower=None, labels="auto"):
    """Validate and build a chain over G.

    Finite groups need ``tower``, a list of generator lists, one per
    stage; ``labels`` is a matching list of ordinals or "auto" for
    0, 1, ..., m.  Ordinal sums take no tower and auto labels.
    """
    if isinstance(G, OrdinalSumGroup):
        if tower is not None:
            raise MalformedSpec("ordinal sums derive their chain; tower not allowed")
        if labels != "auto":
            raise MalformedSpec('ordinal sums require "auto" labels')
        return OrdinalSumChain(G)
    if G.order is None:
        raise MalformedSpec(f"no chain support for group kind {G.kind!r}")
    if tower is None:
        raise MalformedSpec("finite groups need an explicit tower of generators")
    strata = [subgroup_generated(gens, G) for gens in tower]
    if labels == "auto":
        labels = [Ordinal(0, i) for i in range(len(strata))]
    return FiniteChain(G, strata, list(labels))


def chain_from_json(G: Group, doc) -> FiniteChain | OrdinalSumChain:
    """Parse {"tower":[{"generators":[...]},...],"labels":...} for G."""
    if not isinstance(doc, dict):
        raise MalformedSpec(f"chain spec must be an object, got {type(doc).__name__}")
    extra = doc.keys() - {"tower", "labels"}
    if extra:
        raise MalformedSpec(f"chain spec has unknown keys {sorted(extra)}")
    labels = doc.get("labels", "auto")
    tower_doc = doc.get("tower")
    if isinstance(G, OrdinalSumGroup):
        if tower_doc is not None:
            raise MalformedSpec("ordinal sums take no tower")
        return build_chain(G, None, labels)
    if not isinstance(tower_doc, list) or not tower_doc:
        raise MalformedSpec("chain spec needs a nonempty tower list")
    tower = []
    for i, stage in enumerate(tower_doc):
        if not isinstance(stage, dict) or set(stage.keys()) != {"generators"}:
            raise MalformedSpec(f'tower stage {i} must be {{"generators": [...]}}')
        tower.append([element_from_json(G, v) for v in stage["generators"]])
    if labels != "auto":
        if not isinstance(labels, list):
            raise MalformedSpec('labels must be "auto" or a list of [q, n] pairs')
        labels = [Ordinal.from_json(p) for p in labels]
    return build_chain(G, tower, labels)


def default_region(chain, offset_bound: int = 10, max_support: int | None = None) -> Region:
    """Positions below omega*Q with offset under ``offset_bound`` per block."""
    if chain.is_finite:
        raise MalformedSpec("finite chains need no enumeration region")
    positions = tuple(
        Ordinal(q, n)
        for q in range(chain.group.blocks)
        for n in range(offset_bound)
    )
    return Region(positions, max_support)


def enumerate_region(chain, region: Region | None):
    """Elements of the bounded region (or the whole finite group)."""
    if chain.is_finite:
        return list(chain.group.elements())
    if region is None:
        raise UnboundedEnumeration("countable chain enumeration needs a region")
    return list(chain.group.enumerate_supported(region.positions, region.max_support))
