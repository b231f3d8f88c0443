"""Exact analysis of the localization game on graphs.

Cops probe vertices each round and learn their distances to an invisible
robber, who then moves to a neighbour or stays.  This package computes exact
capture times and localization numbers, evaluates fixed cop strategies
against a worst-case robber, and checks decompositions and designs used by
those strategies.
"""
from .decomposition import TreeDecomposition, interval_clique_path, minfill_td, td_stats, validate_td
from .designs import ProjectivePlane, build_pg2, incidence_graph, validate_plane
from .game import CAPTURED, KnowledgeState, partition_by_distance, spread, step
from .generators import gen_family
from .graph import Graph, build_graph, parse_edge_list, read_edge_list, write_edge_list
from .solver import (ABORTED, FINITE, ROBBER_WINS, Budget, SolveResult, is_resolving,
                     localization_number, metric_dimension, solve_capture_time)
from .strategies import CopStrategy, EvalReport, build_strategy, evaluate_strategy

__version__ = "0.1.0"

__all__ = [
    "ABORTED", "CAPTURED", "FINITE", "ROBBER_WINS",
    "Budget", "CopStrategy", "EvalReport", "Graph", "KnowledgeState", "ProjectivePlane",
    "SolveResult", "TreeDecomposition",
    "build_graph", "build_pg2", "build_strategy", "evaluate_strategy", "gen_family",
    "incidence_graph", "interval_clique_path", "is_resolving", "localization_number",
    "metric_dimension", "minfill_td", "parse_edge_list", "partition_by_distance",
    "read_edge_list", "solve_capture_time", "spread", "step", "td_stats", "validate_plane",
    "validate_td", "write_edge_list",
]
