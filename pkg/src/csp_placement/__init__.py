"""Minimum monitor placement for localizing a single node failure when
probes may follow any simple path between two monitors."""
from ._accel import BACKEND
from .decomposition import decompose, is_tandem
from .graph import Graph, parse_edge_list, random_connected_graph, to_dot, to_edge_list
from .oracle import identifiable_fast, is_one_identifiable, min_monitors_bruteforce
from .placement import monitors_in_biconnected, monitors_in_polygonless, omp_csp

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Graph",
    "decompose",
    "identifiable_fast",
    "is_one_identifiable",
    "is_tandem",
    "min_monitors_bruteforce",
    "monitors_in_biconnected",
    "monitors_in_polygonless",
    "omp_csp",
    "parse_edge_list",
    "random_connected_graph",
    "to_dot",
    "to_edge_list",
]
