"""Distance-generalized (k,h)-core decomposition and its applications."""

from .clubs import ClubCertificate, exact_h_club, is_h_club, max_h_club
from .coloring import Coloring, greedy_distance_h_coloring
from .decomposition import (ALGORITHMS, BucketQueue, CoreResult, PartitionPlan, bound_error,
                            compute_lb1, compute_lb2, compute_ub, core_decomp_interval, decompose,
                            decompose_hbz, decompose_hlb, decompose_hlbub, improve_lb)
from .dense import Community, DensestResult, NoSolutionError, cocktail_party, densest_h_core
from .graph import (AliveMask, EmptyGraphError, Graph, GraphError, HNeighborhood, ParseError,
                    h_bfs, h_degree, induced_diameter_leq, load_edge_list)
from .landmarks import LandmarkIndex, estimate_distance, select_landmarks
from .oracle import naive_oracle

__all__ = [
    "ALGORITHMS", "AliveMask", "BucketQueue", "ClubCertificate", "Coloring", "Community",
    "CoreResult", "DensestResult", "EmptyGraphError", "Graph", "GraphError", "HNeighborhood",
    "LandmarkIndex", "NoSolutionError", "ParseError", "PartitionPlan", "bound_error",
    "cocktail_party", "compute_lb1", "compute_lb2", "compute_ub", "core_decomp_interval",
    "decompose", "decompose_hbz", "decompose_hlb", "decompose_hlbub", "densest_h_core",
    "estimate_distance", "exact_h_club", "greedy_distance_h_coloring", "h_bfs", "h_degree",
    "improve_lb", "induced_diameter_leq", "is_h_club", "load_edge_list", "max_h_club",
    "naive_oracle", "select_landmarks",
]
