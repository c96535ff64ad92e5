"""Sign-restricted matrices (SRMs): validation, enumeration, interchanges,
the Bruhat lattice, digraph incidence orderings, polytopes and decompositions.

An SRM is a (0,+-1)-matrix whose column prefix sums (top down) lie in {0,1}
and whose row prefix sums (left to right) are nonnegative.  Positions and
indices in the public API are 1-based.
"""

from .bruhat import (
    BruhatOp,
    HasseDiagram,
    IrreducibleProfile,
    apply_bruhat_op,
    bruhat_interchange_sequence,
    bruhat_join,
    bruhat_leq,
    bruhat_meet,
    bruhat_op_sequence,
    covers,
    hasse_diagram,
    irreducible_profile,
    is_plus_sum_matrix,
    lower_cover_moves,
    meet_irreducible_decomposition,
)
from .classes import gale_ryser, realize_01
from .core import (
    MarginPair,
    Multichain,
    SignMatrix,
    Srm,
    Verdict,
    Violation,
    canonical_staircase,
    extremal_column_counts,
    extremal_srm,
    inverse_sum_matrix,
    is_srm,
    margins,
    max_nonzeros,
    multichain_of,
    parse_matrices,
    parse_matrix,
    realizable_margins,
    srm_of_multichain,
    sum_matrix,
    validate_srm,
)
from .decompose import (
    JointRealization,
    SignedDecomposition,
    check_anstee_condition,
    find_joint_realization,
    signed_subperm_decomposition,
    split_pm,
)
from .digraph import LoopedDigraph, generalized_incidence, parse_digraph, srm_orderable, srm_ordering
from .enumeration import (
    ALL,
    PLUS,
    ClassFilter,
    brute_force_max_nonzeros,
    count_srms,
    enumerate_pm_class,
    enumerate_srms,
)
from .errors import CapExceeded, DomainError, HypothesisError, SrmError
from .interchange import (
    InterchangeStep,
    InterchangeTrace,
    a012_nonempty,
    class_equality,
    eliminate_minus_ones,
    pm_interchange_path,
    pm_nonempty,
    random_srm,
    srm_interchange_path,
)
from .polytope import (
    PmHullSpec,
    PolytopeSpec,
    alternating_extreme_check,
    is_vertex,
    pm_hull_contains,
    polytope_contains,
    verify_polytope,
)

__version__ = "0.1.0"
