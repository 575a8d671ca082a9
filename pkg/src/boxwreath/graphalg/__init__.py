from .dot import bcv_to_dot, graph_to_dot
from .ends import Ends, EndsVerdict, ends_estimate, verdict_from_counts
from .gamma import (
    CartesianLemmaReport,
    ConnOneReport,
    conn_one_primitivity_check,
    gamma_graph,
    orbital_cartesian_lemma_check,
)
from .graphs import (
    GRAPH_VERTEX_CAP,
    Digraph,
    Graph,
    cartesian_graph_product,
    cartesian_power,
    complete_graph,
    cycle_graph,
    directed_cycle,
    double_ray_truncation,
    orbital_digraph,
    orbital_graph,
    path_graph,
    path_truncation,
)
from .lobes import (
    ConnOneDecomposition,
    are_isomorphic,
    automorphism_group,
    connectivity_small,
    find_isomorphism,
    is_directed_cycle,
    isomorphisms,
    lobes_and_bcv_tree,
)

__all__ = [
    "GRAPH_VERTEX_CAP",
    "CartesianLemmaReport",
    "ConnOneDecomposition",
    "ConnOneReport",
    "Digraph",
    "Ends",
    "EndsVerdict",
    "Graph",
    "are_isomorphic",
    "automorphism_group",
    "bcv_to_dot",
    "cartesian_graph_product",
    "cartesian_power",
    "complete_graph",
    "conn_one_primitivity_check",
    "connectivity_small",
    "cycle_graph",
    "directed_cycle",
    "double_ray_truncation",
    "ends_estimate",
    "find_isomorphism",
    "gamma_graph",
    "graph_to_dot",
    "is_directed_cycle",
    "isomorphisms",
    "lobes_and_bcv_tree",
    "orbital_cartesian_lemma_check",
    "orbital_digraph",
    "orbital_graph",
    "path_graph",
    "path_truncation",
    "verdict_from_counts",
]
