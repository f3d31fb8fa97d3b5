"""Exact tropical hyperplane arrangements and the toric edge ideals they resolve."""

from .covector import (
    TypeGraph,
    bounded_complex,
    cell_feasible,
    coarse_type,
    enumerate_cells,
    is_sufficiently_generic,
    random_generic_lift,
    type_at_point,
    witness_point,
)
from .graphcore import (
    INF,
    BipartiteGraph,
    TropicalMatrix,
    degree_vectors,
    matching_number,
    recession_connectivity,
    recession_graph,
    is_strongly_connected,
    support_graph,
    transpose,
)
from .homalg import cellular_betti, hochster_betti, regularity
from .ideals import (
    alexander_dual,
    fine_cotype_ideal,
    monomial_initial_ideal,
    toric_edge_ideal,
)

__all__ = [
    "INF",
    "BipartiteGraph",
    "TropicalMatrix",
    "TypeGraph",
    "alexander_dual",
    "bounded_complex",
    "cell_feasible",
    "cellular_betti",
    "coarse_type",
    "degree_vectors",
    "enumerate_cells",
    "fine_cotype_ideal",
    "hochster_betti",
    "is_strongly_connected",
    "is_sufficiently_generic",
    "matching_number",
    "monomial_initial_ideal",
    "random_generic_lift",
    "recession_connectivity",
    "recession_graph",
    "regularity",
    "support_graph",
    "toric_edge_ideal",
    "transpose",
    "type_at_point",
    "witness_point",
]

__version__ = "0.1.0"
