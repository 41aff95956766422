"""λ-graph systems for subshifts with exact K-theoretic invariants."""

__version__ = "0.1.0"

from .alphabet import Alphabet, Word, ascii_alphabet, bracket_alphabet
from .analysis import (
    check_condition_I,
    check_iota_irreducible,
    check_lambda_irreducible,
    check_synchronizingly_transitive,
    follower_equal,
    is_lambda_synchronizing_system,
    launching_vertex,
    simplicity_prediction,
    succ_relation,
)
from .flow import (
    ExpansionPlan,
    apply_plan,
    contract_word,
    expand_labeled_graph,
    expand_sft,
    expand_spec,
    expand_word,
    plan_for,
)
from .invariants import (
    InvariantReport,
    LevelGroups,
    compare_reports,
    connecting_map_check,
    invariant_report,
    level_groups,
)
from .labeled_graph import LabeledGraph, from_names
from .linalg import (
    AbelianGroup,
    cokernel,
    groups_isomorphic,
    kernel_group,
    smith_normal_form,
)
from .subshift import (
    Budget,
    BudgetExceeded,
    DEFAULT_BUDGET,
    DyckN,
    Expanded,
    FullShift,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    SubshiftSpec,
    blocks,
    follower_words,
    is_admissible,
    is_synchronizing,
    predecessor_words,
    synchronizing_classes,
)
from .system import (
    ConstructionError,
    LambdaGraphSystem,
    TransitionMatrices,
    VertexLevel,
    build_cantor_horizon_dyck,
    build_cantor_horizon_markov_dyck,
    build_from_finite_graph,
    build_lambda_synchronizing,
    canonical_form,
    level_isomorphic,
    transition_matrices,
    verify_all,
)
from .serialize import export_dot, spec_dumps, spec_loads, system_dumps, system_loads
from .verdict import Verdict
