"""Total vector domination and multiple domination over a rooted decomposition.

Both run the shared engine in :mod:`vecdom.dp` with pair colorings; multiple
domination additionally lets a chosen vertex count towards its own demand.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .decomposition import RootedDecomposition
from .dp import DPResult, run_dp
from .graph import DemandVector, Graph, ProblemKind


def solve_total(
    graph: Graph,
    demands: DemandVector | Sequence[int],
    rooted: RootedDecomposition,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> DPResult:
    return run_dp(graph, demands, rooted, ProblemKind.TOTAL, budget, backend)


def solve_multiple(
    graph: Graph,
    demands: DemandVector | Sequence[int],
    rooted: RootedDecomposition,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> DPResult:
    return run_dp(graph, demands, rooted, ProblemKind.MULTIPLE, budget, backend)
