"""k-path partition toolkit for directed graphs.

Three approximation algorithms (singleton elimination, cover-based 2-cycle
elimination, and 2-path reduction for k = 3), exact oracles, seeded
instance generators, a scikit-learn compatible estimator and a CLI.
"""

from .graph import (
    Component,
    DiGraph,
    GraphError,
    PathCycleCover,
    PathPartition,
    ValidationReport,
    cover_components,
    partition_from_edges,
    singletons_of,
    validate_partition,
)
from .cover import max_path_cycle_cover
from .saturation import (
    FactorGadget,
    SaturationInstance,
    build_gadget,
    max_weight_saturating_cover,
    prune_to_minimal,
    weight_of,
)
from .singleton_augment import (
    approx1,
    apply_singleton_augmenting,
    classify_edges,
    find_singleton_augmenting,
)
from .cycle_elim import (
    approx2,
    approx2_report,
    build_saturation_instance,
    build_star_forest,
    improve_cover,
)
from .two_path_augment import (
    AugmentingWalk3,
    approx3,
    apply_two_path_augmenting,
    check_augmenting_walk,
    find_two_path_augmenting,
)
from .generators import GenSpec, generate, tight27, tight27_reference_partitions
from .estimator import KPathPartitioner, as_digraph
from .oracle import (
    OracleBudget,
    OverBudgetError,
    exact_kpp,
    exact_max_cover_weight,
    exact_max_path_cycle_cover_size,
    exact_min_singletons,
)

__all__ = [
    "Component",
    "DiGraph",
    "GraphError",
    "PathCycleCover",
    "PathPartition",
    "ValidationReport",
    "cover_components",
    "partition_from_edges",
    "singletons_of",
    "validate_partition",
    "max_path_cycle_cover",
    "FactorGadget",
    "SaturationInstance",
    "build_gadget",
    "max_weight_saturating_cover",
    "prune_to_minimal",
    "weight_of",
    "approx1",
    "apply_singleton_augmenting",
    "classify_edges",
    "find_singleton_augmenting",
    "approx2",
    "approx2_report",
    "build_saturation_instance",
    "build_star_forest",
    "improve_cover",
    "AugmentingWalk3",
    "approx3",
    "apply_two_path_augmenting",
    "check_augmenting_walk",
    "find_two_path_augmenting",
    "GenSpec",
    "generate",
    "tight27",
    "tight27_reference_partitions",
    "KPathPartitioner",
    "as_digraph",
    "OracleBudget",
    "OverBudgetError",
    "exact_kpp",
    "exact_max_cover_weight",
    "exact_max_path_cycle_cover_size",
    "exact_min_singletons",
]

__version__ = "0.1.0"
