"""Exact conjugacy class counts for wreath products X wr H.

The count k(X wr H) depends on the base group X only through k = k(X), so the
whole API takes an integer k and a permutation group H. Three independent
counting routes (stabilizer sums, brute-force union-find, Burnside orbit
counting) cross-check each other, and a bounds module evaluates the exact
inequalities that govern the census of coloring orbits.
"""

from .actions import (
    BlockDecomposition,
    CycleType,
    ProductActionElement,
    WreathGroup,
    block_decomposition,
    build_wreath_group,
    cycle_type,
    family,
    fix_subsets_direct,
    gamma,
    parse_group_spec,
    product_action_build,
    sigma,
    sigma_prime,
    subset_rank,
    subset_unrank,
    subsets_action_lift,
)
from .bounds import (
    BoundReport,
    ScanRow,
    SemiprimitiveReport,
    count_upper_bound,
    counterexample_scan,
    fixed_subset_fraction_probe,
    large_base_count_bound,
    large_base_match,
    predicates,
    product_orbit_identity,
    semiprimitive_report,
    subset_orbit_bound,
    subset_orbit_count_exact,
)
from .budgets import DEFAULT, Budgets
from .classcount import (
    CountResult,
    OrbitStats,
    auto_count,
    brute_force_count,
    burnside_lower,
    burnside_orbit_count,
    clifford_count,
    coloring_orbit_reps,
    decode_coloring,
    direct_orbit_count,
    encode_coloring,
    nonregular_orbit_stats,
    schmid_cyclic,
    symmetric_closed_form,
)
from .combinatorics import (
    Partition,
    fix_subsets_formula,
    partition_count,
    partition_enum,
    stirling_first,
    tuples_of_partitions_count,
    weak_composition_count,
)
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    DivisibilityViolation,
    Infeasible,
    NotSemiprimitive,
    ParseError,
    UnknownFamily,
    WreathcountError,
)
from .permgroup import (
    NumericInvariants,
    PermGroup,
    Permutation,
    StructureReport,
    class_count,
    closure_elements,
    coloring_stabilizer,
    conjugacy_classes,
    is_primitive,
    is_semiregular,
    is_transitive,
    normal_subgroups,
    numeric_invariants,
    orbits,
    parse_generators,
    parse_permutation,
    point_stabilizer,
    structure_classify,
    subgroups,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition", "BoundReport", "BudgetExceeded", "Budgets", "CountResult",
    "CycleType", "DEFAULT", "DegreeMismatch", "DivisibilityViolation", "Infeasible",
    "NotSemiprimitive", "NumericInvariants", "OrbitStats", "ParseError", "Partition",
    "PermGroup", "Permutation", "ProductActionElement", "ScanRow",
    "SemiprimitiveReport", "StructureReport", "UnknownFamily", "WreathGroup",
    "WreathcountError", "auto_count", "block_decomposition", "brute_force_count",
    "build_wreath_group", "burnside_lower", "burnside_orbit_count", "class_count",
    "clifford_count", "closure_elements", "coloring_orbit_reps", "coloring_stabilizer",
    "conjugacy_classes", "count_upper_bound", "counterexample_scan", "cycle_type",
    "decode_coloring", "direct_orbit_count", "encode_coloring", "family",
    "fix_subsets_direct", "fix_subsets_formula", "fixed_subset_fraction_probe",
    "gamma", "is_primitive", "is_semiregular", "is_transitive",
    "large_base_count_bound", "large_base_match", "nonregular_orbit_stats",
    "normal_subgroups", "numeric_invariants", "orbits", "parse_generators",
    "parse_group_spec", "parse_permutation", "partition_count", "partition_enum",
    "point_stabilizer", "predicates", "product_action_build", "product_orbit_identity",
    "schmid_cyclic", "semiprimitive_report", "sigma", "sigma_prime",
    "stirling_first", "structure_classify", "subgroups", "subset_orbit_bound",
    "subset_orbit_count_exact", "subset_rank", "subset_unrank", "subsets_action_lift",
    "symmetric_closed_form", "tuples_of_partitions_count", "weak_composition_count",
]
