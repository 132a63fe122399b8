"""Exact vector, total and multiple domination via branch decompositions."""

__version__ = "0.1.0"

from .graph import (
    DemandVector,
    Graph,
    GraphError,
    Instance,
    ProblemKind,
    build_graph,
    check_domination,
)
from .decomposition import (
    BranchDecomposition,
    branchwidth_exact,
    construct,
    construct_exact,
    construct_heuristic,
    root_decomposition,
    validate,
)
from .dp import run_dp, solve_vector
from .variants import solve_multiple, solve_total
from .oracle import brute_decide, brute_min
from .solver import Solution, solve
from .planar import bstar, decide, kernelize, remove_irrelevant
from .io import parse_instance, parse_text, emit_instance

__all__ = [
    "BranchDecomposition", "DemandVector", "Graph", "GraphError", "Instance",
    "ProblemKind", "Solution", "branchwidth_exact", "brute_decide", "brute_min",
    "bstar", "build_graph", "check_domination", "construct", "construct_exact",
    "construct_heuristic", "decide", "emit_instance", "kernelize", "parse_instance",
    "parse_text", "remove_irrelevant", "root_decomposition", "run_dp", "solve",
    "solve_multiple", "solve_total", "solve_vector", "validate",
]
