"""Sandpile groups of wired trees.

Chip-firing dynamics on multigraphs with a sink, exact integer linear
algebra for group structure, and the tree-specific theory: recurrence
tests, branch decompositions, the root subgroup's lexicographic orbit,
and closed-form decompositions with their verification suites.
"""

from .firing import (
    ChipConfig,
    StabilizationResult,
    active_backend,
    add_and_stabilize,
    compiled_available,
    element_order,
    enumerate_recurrent,
    force_backend,
    identity,
    is_recurrent_burning,
    recurrent_rep,
    set_runtime_checks,
    stabilize,
    stabilize_random_order,
)
from .formulas import (
    ClosedFormDecomposition,
    ball_quotient_decomposition,
    ball_root_subgroup_order,
    geometric_sum,
    is_recurrent_form,
    lex_successor,
    modulus_period,
    multiplicative_order,
    root_subgroup_order,
    spanning_tree_path_form,
    spanning_tree_product,
    spanning_tree_recurrence,
    sylow_rank_ball_formula,
    theorem_decomposition,
)
from .graphs import (
    RootedTree,
    SinkedMultigraph,
    build_wired_ball,
    build_wired_regular_tree,
    build_wired_tree,
    reduced_laplacian,
    spanning_tree_count,
)
from .groups import (
    CyclicSummands,
    GroupDecomposition,
    decomposition_equals,
    sandpile_group,
    sylow_rank,
)
from .linalg import IntMatrix, det, invariant_factors, smith_normal_form
from .trees import (
    BranchSplit,
    branch_join,
    branch_split,
    config_to_level_vector,
    counterexample_tree,
    critical_vertices,
    is_recurrent_critical,
    level_automorphism,
    level_vector_to_config,
    principal_branches,
    symmetrize,
    verify_branch_quotient,
)

__version__ = "0.1.0"

__all__ = [
    "ChipConfig",
    "StabilizationResult",
    "active_backend",
    "add_and_stabilize",
    "compiled_available",
    "element_order",
    "enumerate_recurrent",
    "force_backend",
    "identity",
    "is_recurrent_burning",
    "recurrent_rep",
    "set_runtime_checks",
    "stabilize",
    "stabilize_random_order",
    "ClosedFormDecomposition",
    "ball_quotient_decomposition",
    "ball_root_subgroup_order",
    "geometric_sum",
    "is_recurrent_form",
    "lex_successor",
    "modulus_period",
    "multiplicative_order",
    "root_subgroup_order",
    "spanning_tree_path_form",
    "spanning_tree_product",
    "spanning_tree_recurrence",
    "sylow_rank_ball_formula",
    "theorem_decomposition",
    "RootedTree",
    "SinkedMultigraph",
    "build_wired_ball",
    "build_wired_regular_tree",
    "build_wired_tree",
    "reduced_laplacian",
    "spanning_tree_count",
    "CyclicSummands",
    "GroupDecomposition",
    "decomposition_equals",
    "sandpile_group",
    "sylow_rank",
    "IntMatrix",
    "det",
    "invariant_factors",
    "smith_normal_form",
    "BranchSplit",
    "branch_join",
    "branch_split",
    "config_to_level_vector",
    "counterexample_tree",
    "critical_vertices",
    "is_recurrent_critical",
    "level_automorphism",
    "level_vector_to_config",
    "principal_branches",
    "symmetrize",
    "verify_branch_quotient",
]
