"""Exact non-archimedean invariants of semistable hyperelliptic curves.

Everything downstream of the branch points is computed in exact rational
arithmetic: symmetric roots and discriminants of a branch configuration,
intersection pairings read off leveled residue-class trees, and the
metrized-graph invariants epsilon, phi, delta and chi of reduction graphs,
plus adelic aggregation across places.
"""

from .clustertree import (
    ClusterTree,
    NormalFormReport,
    build_tree,
    check_normal_form,
    pairing_combination,
)
from .invariants import (
    GENUS2_ARITY,
    Genus2Row,
    NodeCounts,
    PlaceReport,
    aggregate_global,
    chi_arch,
    chi_from_pairings,
    chi_nonarch,
    d_from_counts,
    genus2_graph,
    genus2_row,
    node_counts_from_graph,
    noether_consistency,
    place_report_from_graph,
    yamaki_bound,
)
from .metgraph import (
    Measure,
    MetrizedGraph,
    admissible_measure,
    canonical_divisor,
    canonical_measure,
    delta,
    epsilon,
    epsilon_phi,
    green,
    green_diagonal,
    phi,
    resistance,
    scale,
    subdivide,
    verify_admissible,
)
from .rational import INF, format_rat, is_prime, log_abs, parse_rat, val
from .symroots import (
    RootConfig,
    cross_ratio,
    normalize_finite,
    pairing_cross_ratio,
    pairing_difference,
    sym_discriminant,
    symroot_pow,
    symroot_val,
)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "INF",
    "GENUS2_ARITY",
    "SUITES",
    "ClusterTree",
    "Genus2Row",
    "Measure",
    "MetrizedGraph",
    "NodeCounts",
    "NormalFormReport",
    "PlaceReport",
    "RootConfig",
    "admissible_measure",
    "aggregate_global",
    "build_tree",
    "canonical_divisor",
    "canonical_measure",
    "check_normal_form",
    "chi_arch",
    "chi_from_pairings",
    "chi_nonarch",
    "cross_ratio",
    "d_from_counts",
    "delta",
    "epsilon",
    "epsilon_phi",
    "format_rat",
    "genus2_graph",
    "genus2_row",
    "green",
    "green_diagonal",
    "is_prime",
    "log_abs",
    "node_counts_from_graph",
    "noether_consistency",
    "normalize_finite",
    "pairing_combination",
    "pairing_cross_ratio",
    "pairing_difference",
    "parse_rat",
    "phi",
    "place_report_from_graph",
    "resistance",
    "run_suite",
    "scale",
    "subdivide",
    "sym_discriminant",
    "symroot_pow",
    "symroot_val",
    "val",
    "verify_admissible",
    "yamaki_bound",
]
