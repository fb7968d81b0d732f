"""Exact H-rank computations and structural rank checks for mixed graphs."""

from __future__ import annotations

from .algebra import (
    CharPoly,
    GaussianInt,
    GaussianIntMatrix,
    charpoly_exact,
    hermitian_adjacency,
    hermitian_charpoly,
    hermitian_rank,
    rank_exact,
    skew_adjacency,
)
from .checkers import (
    BoundReport,
    Family,
    FamilyLabel,
    NotApplicable,
    bound_report,
    check_theorem_1_1,
    check_theorem_1_3,
    check_theorem_1_4,
    check_theorem_1_5,
    classify_component,
    fig3_family,
)
from .graph import (
    ARC,
    UNDIRECTED,
    Cycle,
    EdgeKind,
    EdgeRecord,
    MixedGraph,
    canonical_form,
    components,
    construct_cycle,
    construct_infinity,
    construct_path,
    construct_theta,
    contract_cycles,
    crucial_subgraphs,
    cycles,
    cycles_pairwise_disjoint,
    disjoint_union,
    identify_vertex,
    pendant_cycles,
    pendant_k2_delete,
    signature,
    structure_summary,
)
from .matching import (
    fractional_matching_number,
    fractional_matching_number_doubled,
    matching_number,
    max_matching,
    optimal_fractional_matchings,
)
from .mg1 import emit_mg1, parse_mg1
from .sachs import (
    cycle_rank_formula,
    enumerate_basic_subgraphs,
    identification_rank,
    sachs_coefficient,
    sachs_coefficients,
)

__version__ = "0.1.0"
