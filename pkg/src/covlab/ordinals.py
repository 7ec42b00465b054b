"""Ordinals below omega*Q, used as chain labels.

An ordinal here is ``omega*q + n`` for naturals q and n, stored as the
pair ``(q, n)`` and ordered lexicographically.  ``offset`` extracts n,
the distance from the largest limit ordinal below (or equal to) the
value; it is total and unique in this range.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

__all__ = ["Ordinal", "ord_compare", "f_offset"]


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """omega*q + n with lexicographic order on (q, n)."""

    q: int
    n: int

    def __post_init__(self):
        if self.q < 0 or self.n < 0:
            raise ValueError(f"ordinal parts must be naturals, got ({self.q}, {self.n})")

    @property
    def is_limit(self) -> bool:
        """True for omega*q with q > 0; zero counts as a non-limit here."""
        return self.n == 0 and self.q > 0

    @property
    def offset(self) -> int:
        return self.n

    def successor(self) -> Ordinal:
        return Ordinal(self.q, self.n + 1)

    def __lt__(self, other: Ordinal) -> bool:
        return (self.q, self.n) < (other.q, other.n)

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.n)
        head = "w" if self.q == 1 else f"w*{self.q}"
        return head if self.n == 0 else f"{head}+{self.n}"

    def to_json(self) -> list[int]:
        return [self.q, self.n]

    @classmethod
    def from_json(cls, pair) -> Ordinal:
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise ValueError(f"ordinal must be a [q, n] pair of naturals, got {pair!r}")
        return cls(pair[0], pair[1])


def ord_compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0, or 1 as a is below, equal to, or above b."""
    if a < b:
        return -1
    return 0 if a == b else 1


def f_offset(a: Ordinal) -> int:
    """Finite offset n of omega*q + n."""
    return a.offset
