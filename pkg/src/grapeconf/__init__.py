"""Exact Betti numbers and Hilbert polynomials of graph configuration spaces,
for graphs whose cycles are vertex-disjoint loops (topological circumference
at most one), cross-verified by an independent chain-complex oracle."""
from __future__ import annotations

from . import binpoly, configs, corpus, exactla, hilbert, swiatkowski
from .binpoly import BinPoly, conv, evaluate, from_monomial, shift_plus, to_monomial
from .exactla import QQ, FieldSpec, PrimeField, Rationals, SparseMatrix, rank, rank_of_span_mod
from .graphs import (
    CanonicalLabeling,
    Classification,
    GrapeGraph,
    VertexLocalData,
    canonical_labeling,
    classify,
    decompose_along_stem,
    essential_vertices,
    load_grape,
    local_data,
    one_bridge_decompose,
    parse_grape,
    parse_grape_json,
    ramos_delta,
)
from .hilbert import (
    HilbertTable,
    b_coeff,
    betti_recurrence_check,
    coefficient,
    disjoint_union_table,
    elementary_p1,
    hilbert_table,
    leading_term,
    one_bridge_table,
    poincare_truncation,
    recover_local_data,
)
from .swiatkowski import (
    Chain,
    Complex,
    PreparedGraph,
    basis_rank_check,
    betti,
    he_to_chain,
    prepare,
    relation_fixtures,
    stabilization_rank,
)

__version__ = "0.1.0"

__all__ = [
    "BinPoly", "CanonicalLabeling", "Chain", "Classification", "Complex",
    "FieldSpec", "GrapeGraph", "HilbertTable", "PreparedGraph", "PrimeField",
    "QQ", "Rationals", "SparseMatrix", "VertexLocalData", "b_coeff",
    "basis_rank_check", "betti", "betti_recurrence_check", "binpoly",
    "canonical_labeling", "classify", "coefficient", "configs", "conv",
    "corpus", "decompose_along_stem", "disjoint_union_table", "elementary_p1",
    "essential_vertices", "evaluate", "exactla", "from_monomial",
    "he_to_chain", "hilbert", "hilbert_table", "leading_term", "load_grape",
    "local_data", "one_bridge_decompose", "one_bridge_table", "parse_grape",
    "parse_grape_json", "poincare_truncation", "prepare", "ramos_delta",
    "rank", "rank_of_span_mod", "recover_local_data", "relation_fixtures",
    "shift_plus", "stabilization_rank", "swiatkowski", "to_monomial",
]
