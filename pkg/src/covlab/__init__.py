"""covlab: covering numbers, chain factorizations, and support partitions.

A laboratory for finite and countable groups: exact and greedy covering
numbers of subsets, ordinal-labeled subgroup chains with unique
factorization into coset representatives, support-size partitions of
product groups with their separation witnesses, and empirical
exploration of partition covering bounds.
"""

from __future__ import annotations

from .chains import (
    FiniteChain,
    OrdinalSumChain,
    Region,
    build_chain,
    chain_from_json,
    default_region,
    enumerate_region,
)
from .covering import (
    CoverResult,
    GroupSubset,
    cov_bounds,
    cov_exact,
    cov_greedy,
    difference_set,
    subset_from_json,
)
from .errors import (
    ChainConditionViolated,
    ChainDoesNotCover,
    ConfigInvalid,
    CovlabError,
    ElementNotInGroup,
    EmptySet,
    IdentityElement,
    InsufficientFactors,
    InvalidPartition,
    MalformedSpec,
    NoSuitableLabel,
    NotAbelian,
    NotAGroup,
    NotASubgroupTower,
    NotNested,
    NotProductBacked,
    UnboundedEnumeration,
)
from .experiments import CSV_HEADER, ReportRow, emit_report, load_config, run_experiment
from .factorization import (
    Factorization,
    SeparationReport,
    cell_label,
    enumerate_cell,
    factorize,
    separation_witness,
    verify_separation,
)
from .groups import (
    CayleyGroup,
    CyclicGroup,
    Group,
    OrdinalSumGroup,
    ProductGroup,
    Subgroup,
    SumElement,
    all_subgroups,
    build_group,
    element_from_json,
    element_to_json,
    is_abelian,
    order_of,
    right_coset_representatives,
    subgroup_generated,
)
from .ordinals import Ordinal, f_offset, ord_compare
from .phi import PartitionCandidate, PhiReport, min_cell_cov, phi_exhaustive, phi_random_search
from .support_partition import (
    InvariantDecomposition,
    SupportPartition,
    SupportProfile,
    SupportWitnessReport,
    invariant_factors,
    support_of,
    support_partition,
    support_witness,
    verify_support_witness,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteChain",
    "OrdinalSumChain",
    "Region",
    "build_chain",
    "chain_from_json",
    "default_region",
    "enumerate_region",
    "ChainConditionViolated",
    "ChainDoesNotCover",
    "ConfigInvalid",
    "ElementNotInGroup",
    "EmptySet",
    "IdentityElement",
    "InsufficientFactors",
    "InvalidPartition",
    "MalformedSpec",
    "NoSuitableLabel",
    "NotAbelian",
    "NotAGroup",
    "NotASubgroupTower",
    "NotNested",
    "NotProductBacked",
    "UnboundedEnumeration",
    "CSV_HEADER",
    "ReportRow",
    "emit_report",
    "load_config",
    "run_experiment",
    "CoverResult",
    "GroupSubset",
    "cov_bounds",
    "cov_exact",
    "cov_greedy",
    "difference_set",
    "subset_from_json",
    "CovlabError",
    "Factorization",
    "SeparationReport",
    "cell_label",
    "enumerate_cell",
    "factorize",
    "separation_witness",
    "verify_separation",
    "CayleyGroup",
    "CyclicGroup",
    "Group",
    "OrdinalSumGroup",
    "ProductGroup",
    "Subgroup",
    "SumElement",
    "all_subgroups",
    "build_group",
    "element_from_json",
    "element_to_json",
    "is_abelian",
    "order_of",
    "right_coset_representatives",
    "subgroup_generated",
    "Ordinal",
    "f_offset",
    "ord_compare",
    "PartitionCandidate",
    "PhiReport",
    "min_cell_cov",
    "phi_exhaustive",
    "phi_random_search",
    "InvariantDecomposition",
    "SupportPartition",
    "SupportProfile",
    "SupportWitnessReport",
    "invariant_factors",
    "support_of",
    "support_partition",
    "support_witness",
    "verify_support_witness",
    "__version__",
]
