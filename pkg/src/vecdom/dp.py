"""Bottom-up dynamic program over a rooted branch decomposition.

Every tree edge ``f`` gets a table indexed by colorings of ``w(f)``.  In
vector mode a vertex ``v`` takes one of ``d(v)+2`` colors: a residual demand
``0..d(v)`` (``v`` outside the partial solution and at least ``d(v)-i`` of its
chosen neighbours already inside the subgraph below ``f``) or ``TOP``
(``v`` chosen).  For total vector and multiple domination a color is a pair
``(chosen, residual)`` with ``2(d(v)+1)`` values, because chosen vertices
also have to meet their demand.

Tables are dense ``int64`` arrays over a mixed-radix index, first vertex most
significant; color ``col`` of vertex ``v`` encodes residual ``col`` when
``col <= d(v)`` and a chosen vertex with residual ``col - d(v) - 1``
otherwise.  ``INF`` marks colorings with no partial solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .decomposition import DecompositionError, RootedDecomposition
from .graph import DemandVector, Graph, GraphError, ProblemKind
from .kernels import INF, get_backend


class _Top:
    __slots__ = ()

    def __repr__(self) -> str:
        return "TOP"


TOP = _Top()


def radix(demand: int, kind: ProblemKind) -> int:
    return 2 * (demand + 1) if kind.members_dominated else demand + 2


def strides(radices: Sequence[int]) -> list[int]:
    out = [1] * len(radices)
    for p in range(len(radices) - 2, -1, -1):
        out[p] = out[p + 1] * radices[p + 1]
    return out


def encode_color(color, demand: int, kind: ProblemKind) -> int:
    """Map a color to its digit: ``TOP``/``int`` in vector mode, ``(chosen, residual)`` otherwise."""
    if kind.members_dominated:
        chosen, resid = color
        if not 0 <= resid <= demand:
            raise ValueError(f"residual {resid} outside [0, {demand}]")
        return (demand + 1 if chosen else 0) + resid
    if color is TOP:
        return demand + 1
    if not 0 <= color <= demand:
        raise ValueError(f"color {color} outside [0, {demand}]")
    return int(color)


def decode_color(col: int, demand: int, kind: ProblemKind):
    if kind.members_dominated:
        return (col > demand, col - demand - 1 if col > demand else col)
    return TOP if col > demand else col


@dataclass
class DPTable:
    """Table ``A_f`` for the tree edge above ``node``.

    Merge tables carry back-pointers into the child tables.  Leaf tables
    record, per coloring, which endpoints outside ``w(f)`` were chosen.
    """

    node: int
    vertices: tuple[int, ...]
    demands: tuple[int, ...]
    kind: ProblemKind
    values: np.ndarray
    back1: Optional[np.ndarray] = None
    back2: Optional[np.ndarray] = None
    leaf_choice: Optional[list[tuple[int, ...]]] = None
    pairs: int = 0
    children: tuple[int, ...] = ()
    radices: tuple[int, ...] = field(init=False)
    strides: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        self.radices = tuple(radix(d, self.kind) for d in self.demands)
        self.strides = tuple(strides(self.radices))

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def is_leaf(self) -> bool:
        return self.leaf_choice is not None

    def index(self, coloring: Mapping[int, object]) -> int:
        if set(coloring) != set(self.vertices):
            raise KeyError(f"coloring must cover exactly {self.vertices}")
        return sum(
            encode_color(coloring[v], d, self.kind) * s
            for v, d, s in zip(self.vertices, self.demands, self.strides)
        )

    def coloring(self, index: int) -> dict[int, object]:
        out = {}
        for v, d, s in zip(self.vertices, self.demands, self.strides):
            col, index = divmod(index, s)
            out[v] = decode_color(col, d, self.kind)
        return out

    def chosen(self, index: int) -> list[int]:
        out = []
        for v, d, s in zip(self.vertices, self.demands, self.strides):
            col, index = divmod(index, s)
            if col > d:
                out.append(v)
        return out

    def value(self, coloring: Mapping[int, object]) -> Optional[int]:
        """``A_f(c)``, or ``None`` when infeasible."""
        x = int(self.values[self.index(coloring)])
        return None if x >= INF else x


@dataclass(frozen=True)
class PartitionX:
    x1: frozenset[int]
    x2: frozenset[int]
    x3: frozenset[int]
    x4: frozenset[int]


def partition_sets(w: Iterable[int], w1: Iterable[int], w2: Iterable[int]) -> PartitionX:
    """Split the order sets at an internal node into the four disjoint classes."""
    w, w1, w2 = frozenset(w), frozenset(w1), frozenset(w2)
    if not (w <= w1 | w2 and w1 <= w | w2 and w2 <= w | w1):
        raise DecompositionError(
            f"order sets {sorted(w)}, {sorted(w1)}, {sorted(w2)} violate three-way containment"
        )
    return PartitionX(x1=w - w2, x2=w - w1, x3=w & w1 & w2, x4=w1 - w)


def leaf_table(
    node: int,
    edge: tuple[int, int],
    w: Iterable[int],
    demands: DemandVector | Sequence[int],
    kind: ProblemKind = ProblemKind.VECTOR,
    budget: Optional[int] = None,
) -> DPTable:
    """Table for a tree edge whose subgraph is the single graph edge ``edge``.

    Endpoints outside ``w`` get no color; for each coloring the cheapest
    choice of their membership that satisfies their demand is taken.
    """
    verts = tuple(sorted(w))
    u, v = edge
    if not set(verts) <= {u, v}:
        raise DecompositionError(f"leaf order set {verts} not within edge {edge}")
    dem = tuple(demands[x] for x in verts)
    table = DPTable(node, verts, dem, kind, np.empty(0, dtype=np.int64))
    size = prod(table.radices)
    hidden = [x for x in (u, v) if x not in verts]
    limit = INF if budget is None else budget
    values = np.full(size, INF, dtype=np.int64)
    choice: list[tuple[int, ...]] = [()] * size
    for idx in range(size):
        cols = table.coloring(idx)
        base = set(table.chosen(idx))
        best = None
        for mask in range(1 << len(hidden)):
            extra = tuple(x for j, x in enumerate(hidden) if mask >> j & 1)
            D = base | set(extra)
            if _leaf_ok(u, v, D, cols, demands, kind) and (best is None or len(D) < best[0]):
                best = (len(D), extra)
        if best is not None and best[0] <= limit:
            values[idx] = best[0]
            choice[idx] = best[1]
    table.values = values
    table.leaf_choice = choice
    return table


def _leaf_ok(u, v, D, cols, demands, kind: ProblemKind) -> bool:
    for x, y in ((u, v), (v, u)):
        member = x in D
        if member and not kind.members_dominated:
            continue
        have = (1 if y in D else 0) + (1 if kind.closed and member else 0)
        need = demands[x]
        if x in cols:
            c = cols[x]
            need -= c[1] if kind.members_dominated else c
        if have < need:
            return False
    return True


def merge_tables(
    node: int,
    table1: DPTable,
    table2: DPTable,
    w: Iterable[int],
    graph: Graph,
    demands: DemandVector | Sequence[int],
    kind: ProblemKind = ProblemKind.VECTOR,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> DPTable:
    """Combine two child tables into the table of the parent edge."""
    part = partition_sets(w, table1.vertices, table2.vertices)
    verts = tuple(sorted(w))
    leaving = tuple(sorted(part.x4))
    local = verts + leaving
    cls = {}
    for x in part.x1:
        cls[x] = 1
    for x in part.x2:
        cls[x] = 2
    for x in part.x3:
        cls[x] = 3
    for x in part.x4:
        cls[x] = 4
    dem_local = [demands[x] for x in local]
    pos1 = dict(zip(table1.vertices, table1.strides))
    pos2 = dict(zip(table2.vertices, table2.strides))
    nv = len(local)
    adj = np.zeros((nv, nv), dtype=np.int64)
    for i, x in enumerate(local):
        for j, y in enumerate(local):
            if i != j and graph.has_edge(x, y):
                adj[i, j] = 1
    out = DPTable(node, verts, tuple(dem_local[: len(verts)]), kind,
                  np.empty(0, dtype=np.int64), children=(table1.node, table2.node))
    size = prod(out.radices)
    kern = get_backend(backend)
    values, back1, back2, pairs = kern.merge(
        np.array([cls[x] for x in local], dtype=np.int64),
        np.array(dem_local, dtype=np.int64),
        np.array(out.strides, dtype=np.int64),
        np.array([pos1.get(x, -1) for x in local], dtype=np.int64),
        np.array([pos2.get(x, -1) for x in local], dtype=np.int64),
        adj,
        kind.members_dominated,
        kind.closed,
        np.ascontiguousarray(table1.values, dtype=np.int64),
        np.ascontiguousarray(table2.values, dtype=np.int64),
        size,
        INF - 1 if budget is None else budget,
    )
    out.values = values
    out.back1 = back1
    out.back2 = back2
    out.pairs = int(pairs)
    return out


def pair_bound(part: PartitionX, d_star: int, kind: ProblemKind) -> int:
    """Upper bound on forming pairs enumerated at one merge, summed over parent colorings."""
    a = len(part.x1) + len(part.x2)
    b = len(part.x3) + len(part.x4)
    if kind.members_dominated:
        return (2 * (d_star + 1)) ** a * (2 * (d_star + 1) ** 2) ** b
    return (d_star + 2) ** a * ((d_star + 1) ** 2 + 1) ** b


@dataclass
class DPResult:
    kind: ProblemKind
    optimum: Optional[int]
    witness: Optional[frozenset[int]]
    tables: dict[int, DPTable]
    rooted: RootedDecomposition

    @property
    def feasible(self) -> bool:
        return self.optimum is not None

    @property
    def root_table(self) -> DPTable:
        return self.tables[self.rooted.top]


def _check_inputs(graph: Graph, demands, rooted: RootedDecomposition) -> None:
    dg = rooted.graph
    if dg.n != graph.n or dg.edges != graph.edges:
        raise DecompositionError("decomposition was built for a different graph")
    if len(demands) != graph.n:
        raise GraphError("demand vector length does not match the graph")
    iso = graph.isolated()
    if iso:
        raise GraphError(f"isolated vertices {iso} must be handled before the DP")


def run_dp(
    graph: Graph,
    demands: DemandVector | Sequence[int],
    rooted: RootedDecomposition,
    kind: ProblemKind = ProblemKind.VECTOR,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> DPResult:
    _check_inputs(graph, demands, rooted)
    tables: dict[int, DPTable] = {}
    for y in rooted.postorder():
        if y == rooted.root:
            continue
        if y in rooted.leaf_edge:
            e = rooted.leaf_edge[y]
            tables[y] = leaf_table(y, graph.edges[e], rooted.order[y], demands, kind, budget)
        else:
            c1, c2 = rooted.children[y]
            tables[y] = merge_tables(
                y, tables[c1], tables[c2], rooted.order[y], graph, demands,
                kind, budget, backend,
            )
    root = tables[rooted.top]
    assert root.size == 1
    best = int(root.values[0])
    if best >= INF:
        return DPResult(kind, None, None, tables, rooted)
    witness = reconstruct_solution(rooted, tables)
    if len(witness) != best:
        raise AssertionError(f"reconstructed {len(witness)} vertices for optimum {best}")
    return DPResult(kind, best, witness, tables, rooted)


def reconstruct_solution(
    rooted: RootedDecomposition, tables: Mapping[int, DPTable], index: int = 0
) -> frozenset[int]:
    """Follow back-pointers from the root entry down to the leaves."""
    chosen: set[int] = set()
    stack = [(rooted.top, index)]
    while stack:
        y, idx = stack.pop()
        t = tables[y]
        if idx < 0 or t.values[idx] >= INF:
            raise RuntimeError(f"dangling back-pointer at node {y}, index {idx}")
        chosen.update(t.chosen(idx))
        if t.is_leaf:
            chosen.update(t.leaf_choice[idx])
        else:
            c1, c2 = t.children
            stack.append((c1, int(t.back1[idx])))
            stack.append((c2, int(t.back2[idx])))
    return frozenset(chosen)


def solve_vector(
    graph: Graph,
    demands: DemandVector | Sequence[int],
    rooted: RootedDecomposition,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
) -> DPResult:
    """Minimum vector dominating set; ``optimum`` is ``None`` only when pruned by ``budget``."""
    return run_dp(graph, demands, rooted, ProblemKind.VECTOR, budget, backend)
