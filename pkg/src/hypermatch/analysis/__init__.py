"""Bi-uniform discount analysis and exhaustive oracles."""

from hypermatch.analysis.biuniform import (
    BiUniformParams,
    LemmaReport,
    MaxQResult,
    biuniform_inequality_holds,
    biuniform_T,
    cleared_polynomial,
    k_plus_one_q,
    lemma_conditions,
    max_q,
)
from hypermatch.analysis.oracles import (
    brute_force_max_matching,
    enumerate_polytope_vertices,
    fks_factor,
    fks_primal_check,
    fks_primal_value,
    reduced_vertices,
    search_stuck,
)

__all__ = [
    "BiUniformParams",
    "LemmaReport",
    "MaxQResult",
    "biuniform_T",
    "biuniform_inequality_holds",
    "brute_force_max_matching",
    "cleared_polynomial",
    "enumerate_polytope_vertices",
    "fks_factor",
    "fks_primal_check",
    "fks_primal_value",
    "k_plus_one_q",
    "lemma_conditions",
    "max_q",
    "reduced_vertices",
    "search_stuck",
]
