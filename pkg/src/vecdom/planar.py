"""Fixed-parameter decision pipeline for planar instances.

``decide`` reduces the instance (isolated vertices, irrelevant zero-demand
vertices, high-demand kernelization), bounds the branchwidth of a YES
instance by ``bstar``, and runs the exact DP with the budget as a pruning
bound.  Planarity is taken on trust; the DP answer never depends on it.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .decomposition import EXACT_THRESHOLD, construct
from .graph import DemandVector, Graph, Instance, ProblemKind, check_domination
from .solver import solve_core, strip_isolated


@dataclass(frozen=True)
class Reduction:
    graph: Graph
    demands: DemandVector
    kept: list[int]
    removed: list[int]


def remove_irrelevant(graph: Graph, demands: DemandVector) -> Reduction:
    """Delete zero-demand vertices whose neighbours all have zero demand, to a fixpoint.

    Such a vertex needs nothing and serves nobody, so the optimum of every
    variant is unchanged.
    """
    alive = set(range(graph.n))
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if demands[v] == 0 and all(demands[u] == 0 for u in graph.adjacency[v] if u in alive):
                alive.discard(v)
                removed.append(v)
                changed = True
    if not removed:
        return Reduction(graph, demands, list(range(graph.n)), [])
    sub, kept = graph.induced(alive)
    return Reduction(sub, DemandVector.of(demands[v] for v in kept), kept, removed)


@dataclass
class KernelResult:
    """Outcome of the high-demand reduction; ids in ``forced`` refer to the input graph."""

    graph: Graph
    demands: DemandVector
    budget: int
    kept: list[int]
    forced: frozenset[int]
    verdict: Optional[bool] = None
    rounds: int = 0

    @property
    def z(self) -> int:
        return self.demands.zero_count()


def kernelize(
    graph: Graph, demands: DemandVector, k: int, kind: ProblemKind = ProblemKind.VECTOR
) -> KernelResult:
    """Commit every vertex whose demand exceeds the budget until ``d* <= k``.

    Only valid for vector domination: a committed vertex is never required
    to be dominated itself.
    """
    if kind is not ProblemKind.VECTOR:
        raise ValueError("kernelization applies to vector domination only")
    if k < 0:
        raise ValueError("budget must be non-negative")
    g, d, kk = graph, demands, k
    kept = list(range(graph.n))
    forced: set[int] = set()
    rounds = 0
    while kk < d.d_star:
        rounds += 1
        top = d.d_star
        vmax = [v for v in range(g.n) if d[v] == top]
        if kk < len(vmax):
            return KernelResult(g, d, kk, kept, frozenset(forced), False, rounds)
        if len(vmax) == g.n:
            forced |= {kept[v] for v in vmax}
            return KernelResult(g, d, kk - len(vmax), kept, frozenset(forced), True, rounds)
        vset = set(vmax)
        forced |= {kept[v] for v in vmax}
        rest = [v for v in range(g.n) if v not in vset]
        new_d = [max(0, d[v] - sum(1 for u in g.adjacency[v] if u in vset)) for v in rest]
        g, local = g.induced(rest)
        kept = [kept[v] for v in local]
        d = DemandVector.of(new_d)
        kk = max(0, kk - len(vmax))
    return KernelResult(g, d, kk, kept, frozenset(forced), None, rounds)


def bstar(k: int, z: int) -> int:
    """Floor of ``min(12*sqrt(k+z) + 9, 20*sqrt(k) + 17)``, in exact integer arithmetic."""
    if k < 0 or z < 0:
        raise ValueError("k and z must be non-negative")
    return min(9 + math.isqrt(144 * (k + z)), 17 + math.isqrt(400 * k))


@dataclass
class Diagnostics:
    kind: str
    k: int
    forced: list[int] = field(default_factory=list)
    removed_irrelevant: list[int] = field(default_factory=list)
    kernel_rounds: int = 0
    kernel_budget: Optional[int] = None
    reduced_n: Optional[int] = None
    reduced_m: Optional[int] = None
    z: Optional[int] = None
    d_star: Optional[int] = None
    bstar: Optional[int] = None
    width: Optional[int] = None
    width_certified: bool = False
    gate: str = "not reached"
    decided_by: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Verdict:
    answer: bool
    witness: Optional[frozenset[int]]
    diagnostics: Diagnostics

    def __bool__(self) -> bool:
        return self.answer


def decide(
    instance: Instance,
    k: Optional[int] = None,
    exact_threshold: int = EXACT_THRESHOLD,
    seed: int = 0,
    backend: Optional[str] = None,
    width_bound: Optional[int] = None,
    assume_planar: bool = True,
) -> Verdict:
    """Is there a dominating set of at most ``k`` vertices?

    YES carries a witness that passes :func:`check_domination` and has at
    most ``k`` vertices.  ``width_bound`` overrides the computed ``bstar``
    (for exercising the width gate).  With ``assume_planar=False`` the gate
    never rejects, since the width bound only holds for planar graphs.
    """
    t0 = time.perf_counter()
    if k is None:
        k = instance.budget
    if k is None or k < 0:
        raise ValueError("decide needs a non-negative budget k")
    kind = instance.kind
    diag = Diagnostics(kind=kind.value, k=k)

    def finish(answer: bool, witness=None, by: str = "") -> Verdict:
        diag.decided_by = by
        diag.seconds = time.perf_counter() - t0
        if answer:
            if not check_domination(instance, witness) or len(witness) > k:
                raise AssertionError("pipeline produced an invalid witness")
            return Verdict(True, frozenset(witness), diag)
        return Verdict(False, None, diag)

    forced: set[int] = set()
    g, d = instance.graph, instance.demands
    ids = list(range(g.n))
    budget = k

    def strip_and_clean(g, d, ids, budget):
        st = strip_isolated(g, d, kind)
        if st.infeasible:
            return None
        forced.update(ids[v] for v in st.forced)
        ids = [ids[v] for v in st.kept]
        red = remove_irrelevant(st.graph, st.demands)
        diag.removed_irrelevant.extend(ids[v] for v in red.removed)
        ids = [ids[v] for v in red.kept]
        return red.graph, red.demands, ids, budget - len(st.forced)

    out = strip_and_clean(g, d, ids, budget)
    if out is None:
        return finish(False, by="isolated vertex with unmeetable demand")
    g, d, ids, budget = out
    if budget < 0:
        return finish(False, by="isolated vertices exceed the budget")

    if kind is ProblemKind.VECTOR:
        kr = kernelize(g, d, budget)
        diag.kernel_rounds = kr.rounds
        forced.update(ids[v] for v in kr.forced)
        if kr.verdict is False:
            diag.forced = sorted(forced)
            return finish(False, by="kernel: more maximum-demand vertices than budget")
        if kr.verdict is True:
            diag.forced = sorted(forced)
            return finish(True, forced, by="kernel: every remaining vertex committed")
        ids = [ids[v] for v in kr.kept]
        g, d, budget = kr.graph, kr.demands, kr.budget
        out = strip_and_clean(g, d, ids, budget)
        assert out is not None
        g, d, ids, budget = out
        if budget < 0:
            diag.forced = sorted(forced)
            return finish(False, by="isolated vertices exceed the budget")
    elif d.d_star > budget:
        return finish(False, by="maximum demand exceeds the budget")

    diag.forced = sorted(forced)
    diag.kernel_budget = budget
    diag.reduced_n, diag.reduced_m = g.n, g.m
    diag.z = d.zero_count()
    diag.d_star = d.d_star
    diag.bstar = bstar(budget, diag.z) if width_bound is None else width_bound

    decomposition = None
    certified = False
    if g.m >= 2:
        decomposition, certified = construct(g, exact_threshold, seed, backend)
        diag.width = decomposition.width
        diag.width_certified = certified
        if decomposition.width <= diag.bstar:
            diag.gate = "pass"
        elif certified and assume_planar:
            diag.gate = "reject"
            return finish(False, by="certified branchwidth exceeds bstar")
        else:
            diag.gate = "uncertified width above bstar; ran the DP anyway"
    else:
        diag.width = 0
        diag.width_certified = True
        diag.gate = "pass"

    core = solve_core(g, d, kind, budget, decomposition, certified,
                      exact_threshold=exact_threshold, seed=seed, backend=backend)
    if core.optimum is None or core.optimum > budget:
        return finish(False, by="dynamic program")
    witness = forced | {ids[v] for v in core.witness}
    return finish(True, witness, by="dynamic program")
