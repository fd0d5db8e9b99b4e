from .loader import Graph, load_edge_list, largest_connected_component, erdos_renyi, complete_graph
from .triangles import transition_matrix, pair_triangle_counts, triangle_tensor, operator_one_norm_diff
from .pagerank import pagerank, TrianglePageRank, blend_operator, triangle_mlpr

__all__ = [
    "Graph",
    "load_edge_list",
    "largest_connected_component",
    "erdos_renyi",
    "complete_graph",
    "transition_matrix",
    "pair_triangle_counts",
    "triangle_tensor",
    "operator_one_norm_diff",
    "pagerank",
    "TrianglePageRank",
    "blend_operator",
    "triangle_mlpr",
]
