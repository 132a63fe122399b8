"""Front end for the exact solvers: isolated vertices, tiny graphs, decomposition choice."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .decomposition import (
    EXACT_THRESHOLD,
    BranchDecomposition,
    construct,
    root_decomposition,
)
from .dp import DPTable, leaf_table, run_dp
from .graph import DemandVector, Graph, Instance, ProblemKind, check_domination
from .kernels import INF, backend_name, get_backend


@dataclass(frozen=True)
class Stripped:
    graph: Graph
    demands: DemandVector
    kept: list[int]
    forced: frozenset[int]
    infeasible: bool


def strip_isolated(graph: Graph, demands: DemandVector, kind: ProblemKind) -> Stripped:
    """Drop isolated vertices, committing or rejecting them as their demand requires.

    An isolated vertex has no neighbours, so it can only be served by itself:
    vector domination takes it when ``d > 0``; multiple domination takes it
    when ``d == 1`` and fails when ``d >= 2``; total domination fails when
    ``d > 0``.
    """
    forced = set()
    infeasible = False
    iso = graph.isolated()
    for v in iso:
        d = demands[v]
        if d == 0:
            continue
        if kind is ProblemKind.VECTOR or (kind is ProblemKind.MULTIPLE and d == 1):
            forced.add(v)
        else:
            infeasible = True
    if not iso:
        return Stripped(graph, demands, list(range(graph.n)), frozenset(), False)
    keep = [v for v in range(graph.n) if graph.degree(v) > 0]
    sub, kept = graph.induced(keep)
    return Stripped(sub, DemandVector.of(demands[v] for v in kept), kept,
                    frozenset(forced), infeasible)


@dataclass
class CoreResult:
    optimum: Optional[int]
    witness: Optional[frozenset[int]]
    width: Optional[int] = None
    certified: bool = False
    decomposition: Optional[BranchDecomposition] = None
    tables: dict[int, DPTable] = field(default_factory=dict, repr=False)
    pairs: int = 0
    max_table: int = 0


def solve_core(
    graph: Graph,
    demands: DemandVector | Sequence[int],
    kind: ProblemKind,
    budget: Optional[int] = None,
    decomposition: Optional[BranchDecomposition] = None,
    certified: bool = False,
    exact_threshold: int = EXACT_THRESHOLD,
    seed: int = 0,
    backend: Optional[str] = None,
) -> CoreResult:
    """Solve a graph without isolated vertices.

    Graphs with fewer than two edges have no branch decomposition; a single
    edge is solved by its own leaf table with an empty order set.
    """
    if graph.isolated():
        raise ValueError("solve_core needs a graph without isolated vertices")
    if budget is not None and budget < 0:
        return CoreResult(None, None)
    if graph.m == 0:
        return CoreResult(0, frozenset())
    if graph.m == 1:
        t = leaf_table(0, graph.edges[0], (), demands, kind, budget)
        best = int(t.values[0])
        if best >= INF:
            return CoreResult(None, None, width=0, certified=True, tables={0: t}, max_table=1)
        return CoreResult(best, frozenset(t.leaf_choice[0]), width=0, certified=True,
                          tables={0: t}, max_table=1)
    if decomposition is None:
        decomposition, certified = construct(graph, exact_threshold, seed, backend)
    rooted = root_decomposition(decomposition)
    res = run_dp(graph, demands, rooted, kind, budget, backend)
    return CoreResult(
        res.optimum,
        res.witness,
        width=decomposition.width,
        certified=certified,
        decomposition=decomposition,
        tables=res.tables,
        pairs=sum(t.pairs for t in res.tables.values()),
        max_table=max(t.size for t in res.tables.values()),
    )


@dataclass
class Solution:
    kind: ProblemKind
    optimum: Optional[int]
    witness: Optional[frozenset[int]]
    width: Optional[int]
    certified: bool
    backend: str
    seconds: float
    pairs: int = 0
    max_table: int = 0

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def solve(
    instance: Instance,
    budget: Optional[int] = None,
    exact_threshold: int = EXACT_THRESHOLD,
    seed: int = 0,
    backend: Optional[str] = None,
    decomposition: Optional[BranchDecomposition] = None,
) -> Solution:
    """Optimum and witness for any instance; ``optimum is None`` means infeasible.

    ``budget`` prunes partial solutions larger than it, so a returned optimum
    is exact whenever it is at most the budget.  A ``decomposition`` is only
    used when the graph has no isolated vertices.
    """
    kern = get_backend(backend)
    t0 = time.perf_counter()
    kind = instance.kind
    st = strip_isolated(instance.graph, instance.demands, kind)
    name = backend_name(kern)
    if st.infeasible:
        return Solution(kind, None, None, None, False, name, time.perf_counter() - t0)
    inner_budget = None if budget is None else budget - len(st.forced)
    if st.kept != list(range(instance.graph.n)):
        decomposition = None
    core = solve_core(
        st.graph, st.demands, kind, inner_budget, decomposition,
        exact_threshold=exact_threshold, seed=seed, backend=backend,
    )
    dt = time.perf_counter() - t0
    if core.optimum is None:
        return Solution(kind, None, None, core.width, core.certified, name, dt,
                        core.pairs, core.max_table)
    witness = frozenset(st.kept[v] for v in core.witness) | st.forced
    if not check_domination(instance, witness):
        raise AssertionError("solver produced an infeasible witness")
    return Solution(kind, len(witness), witness, core.width, core.certified, name, dt,
                    core.pairs, core.max_table)
