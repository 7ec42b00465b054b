"""Exception hierarchy shared by every covlab module.

Each exception carries ``exit_code``, the process status the CLI reports
when the error escapes to the top level: 1 for malformed input or usage,
2 for mathematical validation failures (bad tables, broken towers, and
similar), 3 is reserved for exhausted budgets and is never raised as an
exception (budget exhaustion is flagged in results instead).
"""

from __future__ import annotations

__all__ = [
    "CovlabError",
    "MalformedSpec",
    "ConfigInvalid",
    "EmptySet",
    "UnboundedEnumeration",
    "ElementNotInGroup",
    "IdentityElement",
    "NotAGroup",
    "NotNested",
    "NotASubgroupTower",
    "ChainConditionViolated",
    "ChainDoesNotCover",
    "NoSuitableLabel",
    "NotProductBacked",
    "InsufficientFactors",
    "NotAbelian",
    "InvalidPartition",
]


class CovlabError(Exception):
    """Base class; ``exit_code`` drives the CLI status on escape."""

    exit_code = 2


class MalformedSpec(CovlabError):
    """Group/chain/config JSON does not have the documented shape."""

    exit_code = 1


class ConfigInvalid(CovlabError):
    """Experiment configuration is malformed or references missing files."""

    exit_code = 1


class EmptySet(CovlabError):
    """An operation requiring a nonempty subset received an empty one."""

    exit_code = 1


class UnboundedEnumeration(CovlabError):
    """Enumeration over a countable group was requested without a bound."""

    exit_code = 1


class ElementNotInGroup(CovlabError):
    """An element value lies outside the group it was used with."""

    exit_code = 1


class IdentityElement(CovlabError):
    """The identity was passed to an operation defined only away from it."""

    exit_code = 1


class NotAGroup(CovlabError):
    """Cayley-table validation failed; carries a witness triple."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class NotNested(CovlabError):
    """Coset decomposition requires a strictly nested subgroup pair."""


class NotASubgroupTower(CovlabError):
    """Supplied generator stages do not form a strictly nested tower."""


class ChainConditionViolated(CovlabError):
    """One of the four chain conditions fails; carries which and a witness."""

    def __init__(self, condition: int, message: str, witness=None):
        super().__init__(f"condition ({condition}): {message}")
        self.condition = condition
        self.witness = witness


class ChainDoesNotCover(CovlabError):
    """Defensive: an element escaped every stratum of a validated chain."""


class NoSuitableLabel(CovlabError):
    """The chain has no label above the constraint set with an admissible offset."""


class NotProductBacked(CovlabError):
    """Coordinate-wise operation requested on a group without coordinates."""

    exit_code = 1


class InsufficientFactors(CovlabError):
    """Witness construction needs more factor positions than the group has."""

    def __init__(self, message: str, needed: int):
        super().__init__(message)
        self.needed = needed


class NotAbelian(CovlabError):
    """Invariant-factor decomposition on a noncommutative group."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class InvalidPartition(CovlabError):
    """Cells fail to partition the group; carries a gap/overlap witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
