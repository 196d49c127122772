"""Exact Wiener index and average distance, extremal constructions, bounds and proof certificates."""

from .bounds import BoundParams, evaluate_bound
from .constructions import bipartite_chain, c4_chain, clique_chain, modified_polarity_graph, polarity_graph
from .graph import INF, Graph, build_graph
from .metrics import WeightFunction, average_distance, weighted_average_distance, weighted_wiener, wiener_index
from .pipeline import Certificate, certify

__all__ = [
    "INF", "BoundParams", "Certificate", "Graph", "WeightFunction", "average_distance",
    "bipartite_chain", "build_graph", "c4_chain", "certify", "clique_chain", "evaluate_bound",
    "modified_polarity_graph", "polarity_graph", "weighted_average_distance", "weighted_wiener",
    "wiener_index",
]
