"""Octahedral small-world graphs: construction, greedy routing, C3 census, bounds."""

from .bounds import BoundsReport, bounds_report
from .census import CensusReport, c3_census, exact_c3_expectation_n1, rooted_events
from .errors import OswError, ParameterError, UnknownVertexError
from .geometry import central_angle, max_edge_sphere_report, radius_bound, sphere_distance
from .octagraph import OctahedralGraph, bfs_distances, build_octahedral_graph, neighbors, ring
from .oswmodel import OswGraph, long_range_distribution, normalizing_factor, sample_osw
from .routing import RoutePath, greedy_route, phase_decomposition, routing_experiment

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "CensusReport",
    "OctahedralGraph",
    "OswError",
    "OswGraph",
    "ParameterError",
    "RoutePath",
    "UnknownVertexError",
    "bfs_distances",
    "bounds_report",
    "build_octahedral_graph",
    "c3_census",
    "central_angle",
    "exact_c3_expectation_n1",
    "greedy_route",
    "long_range_distribution",
    "max_edge_sphere_report",
    "neighbors",
    "normalizing_factor",
    "phase_decomposition",
    "radius_bound",
    "ring",
    "rooted_events",
    "routing_experiment",
    "sample_osw",
    "sphere_distance",
]
