"""Antibandwidth toolkit: labelings that keep adjacent vertices' labels far apart.

Structural upper bounds, construction heuristics with local search, an exact
decision search driven by an iterative solve loop, and LP-format exports of
integer programming models for external solvers.
"""
from .bounds import (BoundsReport, best_upper_bound, coloring_bound, degree_bound,
                     size_bound, stability_bound)
from .exact import Decision, SolveResult, brute_force, decide, solve
from .graph import (Graph, GraphError, ParseError, antibandwidth, bfs_layers, parse_edge_list,
                    parse_matrix_market, read_graph, vertex_antibandwidth)
from .heuristics import (bfs_layer_heuristic, bound_guided_heuristic,
                         incumbent_guided_heuristic, local_search, multi_start)
from .mip_export import export, export_f, export_f_e_k, export_f_lit, export_gcp, export_ssp
from .npsolvers import NpResult, chromatic_number, max_stable_set

__version__ = "0.1.0"

__all__ = [
    "BoundsReport", "Decision", "Graph", "GraphError", "NpResult", "ParseError", "SolveResult",
    "antibandwidth", "best_upper_bound", "bfs_layer_heuristic", "bfs_layers",
    "bound_guided_heuristic", "brute_force", "chromatic_number", "coloring_bound", "decide",
    "degree_bound", "export", "export_f", "export_f_e_k", "export_f_lit", "export_gcp",
    "export_ssp", "incumbent_guided_heuristic", "local_search", "max_stable_set", "multi_start",
    "parse_edge_list", "parse_matrix_market", "read_graph", "size_bound", "solve",
    "stability_bound", "vertex_antibandwidth",
]
