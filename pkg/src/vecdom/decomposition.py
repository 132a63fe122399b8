"""Branch decompositions: order function, validation, rooting and construction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .graph import Graph
from .kernels import get_backend

TreeEdge = tuple[int, int]

EXACT_THRESHOLD = 14


class DecompositionError(ValueError):
    """Structurally invalid decomposition or an unsupported construction request."""


def _norm(a: int, b: int) -> TreeEdge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Violation:
    kind: str
    location: object
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind} at {self.location}: {self.detail}"


@dataclass(frozen=True)
class BranchDecomposition:
    """Unrooted ternary tree whose leaves are in bijection with graph edges.

    Tree nodes are ``0..num_nodes-1``; ``leaf_of[e]`` is the leaf holding
    graph edge ``e`` (an index into ``graph.edges``) and ``order`` maps each
    normalised tree edge to its vertex set ``w(f)``.
    """

    graph: Graph
    num_nodes: int
    tree_edges: tuple[TreeEdge, ...]
    leaf_of: tuple[int, ...]
    order: dict = field(compare=False, repr=False)

    @property
    def width(self) -> int:
        return max((len(w) for w in self.order.values()), default=0)

    def tree_adjacency(self) -> list[list[int]]:
        return _tree_adjacency(self.num_nodes, self.tree_edges)


def _tree_adjacency(num_nodes: int, tree_edges: Iterable[TreeEdge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(num_nodes)]
    for a, b in tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _structure_violation(
    num_nodes: int, tree_edges: Sequence[TreeEdge], leaf_of: Sequence[int], m: int
) -> Optional[Violation]:
    if m < 2:
        return Violation("too few edges", None, f"graph has {m} edges, need at least 2")
    if len(set(_norm(a, b) for a, b in tree_edges)) != len(tree_edges):
        return Violation("not a tree", None, "repeated tree edge")
    for a, b in tree_edges:
        if not (0 <= a < num_nodes and 0 <= b < num_nodes) or a == b:
            return Violation("not a tree", (a, b), "bad tree edge endpoints")
    if len(tree_edges) != num_nodes - 1:
        return Violation("not a tree", None, f"{num_nodes} nodes but {len(tree_edges)} edges")
    adj = _tree_adjacency(num_nodes, tree_edges)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != num_nodes:
        return Violation("not a tree", None, "tree is disconnected")
    for x in range(num_nodes):
        if len(adj[x]) not in (1, 3):
            return Violation("internal degree", x, f"node {x} has degree {len(adj[x])}")
    leaves = [x for x in range(num_nodes) if len(adj[x]) == 1]
    if len(leaves) != m:
        return Violation("leaf count", None, f"{len(leaves)} leaves for {m} graph edges")
    if len(leaf_of) != m or set(leaf_of) != set(leaves):
        return Violation("leaf map", None, "leaf map is not a bijection onto the leaves")
    return None


def _order_masks(
    graph: Graph, num_nodes: int, tree_edges: Sequence[TreeEdge], leaf_of: Sequence[int]
) -> dict[TreeEdge, int]:
    """Order function as vertex bitmasks, via one bottom-up and one top-down pass."""
    adj = _tree_adjacency(num_nodes, tree_edges)
    own = [0] * num_nodes
    for e, x in enumerate(leaf_of):
        u, v = graph.edges[e]
        own[x] = (1 << u) | (1 << v)
    root = 0
    parent = [-1] * num_nodes
    seq = [root]
    parent[root] = root
    for x in seq:
        for y in adj[x]:
            if parent[y] == -1:
                parent[y] = x
                seq.append(y)
    sub = list(own)
    for x in reversed(seq[1:]):
        sub[parent[x]] |= sub[x]
    up = [0] * num_nodes
    for x in seq:
        kids = [y for y in adj[x] if parent[y] == x and y != x]
        for y in kids:
            acc = up[x] | own[x]
            for z in kids:
                if z != y:
                    acc |= sub[z]
            up[y] = acc
    return {_norm(parent[y], y): sub[y] & up[y] for y in seq[1:]}


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def order_function(
    graph: Graph, num_nodes: int, tree_edges: Sequence[TreeEdge], leaf_of: Sequence[int]
) -> dict[TreeEdge, frozenset[int]]:
    """Map each tree edge to the vertices with incident graph edges on both sides."""
    bad = _structure_violation(num_nodes, tree_edges, leaf_of, graph.m)
    if bad is not None:
        raise DecompositionError(str(bad))
    masks = _order_masks(graph, num_nodes, tree_edges, leaf_of)
    return {f: _mask_to_set(mk) for f, mk in masks.items()}


def make_decomposition(
    graph: Graph, num_nodes: int, tree_edges: Iterable[TreeEdge], leaf_of: Sequence[int]
) -> BranchDecomposition:
    edges = tuple(_norm(a, b) for a, b in tree_edges)
    leaf_of = tuple(leaf_of)
    order = order_function(graph, num_nodes, edges, leaf_of)
    return BranchDecomposition(graph, num_nodes, edges, leaf_of, order)


def width(decomp: BranchDecomposition) -> int:
    return decomp.width


def _edge_sides(decomp: BranchDecomposition) -> dict[TreeEdge, tuple[frozenset, frozenset]]:
    """For every tree edge, the graph-edge indices on each side (keyed by side node)."""
    adj = decomp.tree_adjacency()
    edge_at = {x: e for e, x in enumerate(decomp.leaf_of)}
    out = {}
    everything = frozenset(range(decomp.graph.m))
    for a, b in decomp.tree_edges:
        seen = {a, b}
        stack = [b]
        side = set()
        while stack:
            x = stack.pop()
            if x in edge_at:
                side.add(edge_at[x])
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        side_b = frozenset(side)
        out[(a, b)] = (everything - side_b, side_b)
    return out


def validate(decomp: BranchDecomposition, graph: Optional[Graph] = None) -> Optional[Violation]:
    """Return the first violated property, or ``None`` when the decomposition is sound."""
    g = graph if graph is not None else decomp.graph
    if graph is not None and (graph.edges != decomp.graph.edges or graph.n != decomp.graph.n):
        return Violation("graph mismatch", None, "decomposition was built for another graph")
    bad = _structure_violation(decomp.num_nodes, decomp.tree_edges, decomp.leaf_of, g.m)
    if bad is not None:
        return bad
    fresh = {f: _mask_to_set(mk) for f, mk in
             _order_masks(g, decomp.num_nodes, decomp.tree_edges, decomp.leaf_of).items()}
    for f in decomp.tree_edges:
        stored = decomp.order.get(f)
        if stored is None or frozenset(stored) != fresh[f]:
            return Violation(
                "order function mismatch", f,
                f"stored {sorted(stored or ())} != computed {sorted(fresh[f])}",
            )
    adj = decomp.tree_adjacency()
    for x in range(decomp.num_nodes):
        if len(adj[x]) != 3:
            continue
        ws = [fresh[_norm(x, y)] for y in adj[x]]
        for i in range(3):
            if not ws[i] <= ws[(i + 1) % 3] | ws[(i + 2) % 3]:
                return Violation(
                    "containment", x,
                    f"w of edge to {adj[x][i]} is not covered by the other two",
                )
    for f, (left, right) in _edge_sides(decomp).items():
        w = fresh[f]
        v1 = {u for e in left for u in g.edges[e]} - w
        v2 = {u for e in right for u in g.edges[e]} - w
        if v1 & v2:
            return Violation("separation", f, f"vertices {sorted(v1 & v2)} on both sides")
        for u, v in g.edges:
            if (u in v1 and v in v2) or (u in v2 and v in v1):
                return Violation("separation", f, f"graph edge ({u}, {v}) crosses the cut")
    return None


@dataclass(frozen=True)
class RootedDecomposition:
    """A decomposition rooted at a new node ``root`` whose only child is ``top``.

    Each non-root tree node ``y`` stands for the tree edge to its parent, so
    ``order[y]`` is ``w`` of that edge and ``edge_sets[y]`` the graph edges
    below it.  ``leaf_edge`` maps leaf nodes to their graph edge index.
    """

    decomposition: BranchDecomposition
    root: int
    top: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[frozenset[int], ...]
    edge_sets: tuple[frozenset[int], ...]
    leaf_edge: dict

    @property
    def graph(self) -> Graph:
        return self.decomposition.graph

    def subgraph_vertices(self, y: int) -> frozenset[int]:
        g = self.graph
        return frozenset(u for e in self.edge_sets[y] for u in g.edges[e])

    def postorder(self) -> list[int]:
        out = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for y in reversed(self.children[x]):
                stack.append((y, False))
        return out


def root_decomposition(
    decomp: BranchDecomposition, split_edge: Optional[TreeEdge] = None
) -> RootedDecomposition:
    """Subdivide ``split_edge`` with a new node and hang the tree from a new root above it."""
    if decomp.graph.m < 2:
        raise DecompositionError("rooting needs at least two graph edges")
    if split_edge is None:
        split_edge = decomp.tree_edges[0]
    x1, x2 = _norm(*split_edge)
    if (x1, x2) not in decomp.order:
        raise DecompositionError(f"split edge {split_edge} is not a tree edge")
    n0 = decomp.num_nodes
    r1, r2 = n0, n0 + 1
    adj = [[] for _ in range(n0 + 2)]
    for a, b in decomp.tree_edges:
        if (a, b) == (x1, x2):
            continue
        adj[a].append(b)
        adj[b].append(a)
    for a, b in ((r1, r2), (r2, x1), (r2, x2)):
        adj[a].append(b)
        adj[b].append(a)

    parent = [-1] * (n0 + 2)
    children: list[list[int]] = [[] for _ in range(n0 + 2)]
    parent[r1] = r1
    seq = [r1]
    for x in seq:
        for y in adj[x]:
            if parent[y] == -1:
                parent[y] = x
                children[x].append(y)
                seq.append(y)
    parent[r1] = -1

    w_split = decomp.order[(x1, x2)]
    order: list[frozenset[int]] = [frozenset()] * (n0 + 2)
    for y in seq[1:]:
        p = parent[y]
        if y == r2:
            order[y] = frozenset()
        elif p == r2:
            order[y] = w_split
        else:
            order[y] = decomp.order[_norm(p, y)]

    leaf_edge = {x: e for e, x in enumerate(decomp.leaf_of)}
    edge_sets: list[frozenset[int]] = [frozenset()] * (n0 + 2)
    for y in reversed(seq):
        if y in leaf_edge:
            edge_sets[y] = frozenset((leaf_edge[y],))
        else:
            acc: set[int] = set()
            for z in children[y]:
                acc |= edge_sets[z]
            edge_sets[y] = frozenset(acc)
    return RootedDecomposition(
        decomposition=decomp,
        root=r1,
        top=r2,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        order=tuple(order),
        edge_sets=tuple(edge_sets),
        leaf_edge=leaf_edge,
    )


# ---------------------------------------------------------------------------
# construction


def _from_binary(
    m: int, kids: dict[int, tuple[int, int]], root: int, num_nodes: int
) -> tuple[int, list[TreeEdge]]:
    """Turn a rooted binary tree over leaves ``0..m-1`` into an unrooted ternary tree.

    The root is dropped and its two children joined directly; remaining node
    ids are compacted.
    """
    a, b = kids[root]
    edges = [(a, b)]
    for x, (c1, c2) in kids.items():
        if x == root:
            continue
        edges.append((x, c1))
        edges.append((x, c2))
    used = sorted({u for e in edges for u in e} | set(range(m)))
    remap = {u: i for i, u in enumerate(used)}
    assert all(remap[i] == i for i in range(m))
    return len(used), [(remap[p], remap[q]) for p, q in edges]


def _incidence_masks(graph: Graph, edge_ids: Sequence[int]) -> dict[int, int]:
    inc: dict[int, int] = {}
    for j, e in enumerate(edge_ids):
        for u in graph.edges[e]:
            inc[u] = inc.get(u, 0) | (1 << j)
    return inc


def _exact_partition(
    graph: Graph, edge_ids: Sequence[int], outside: set[int], backend=None
) -> tuple[int, list[int]]:
    """Run the subset DP over ``edge_ids``; returns the cost of the full set and ``split``."""
    inc = _incidence_masks(graph, edge_ids)
    verts = sorted(inc)
    kern = get_backend(backend)
    cost, split = kern.subset_dp(
        len(edge_ids), [inc[v] for v in verts], [1 if v in outside else 0 for v in verts]
    )
    full = (1 << len(edge_ids)) - 1
    return int(cost[full]), split.tolist()


def construct_exact(
    graph: Graph, threshold: int = EXACT_THRESHOLD, backend: Optional[str] = None
) -> BranchDecomposition:
    """Minimum-width decomposition by dynamic programming over edge subsets."""
    m = graph.m
    if m < 2:
        raise DecompositionError(f"exact construction needs at least 2 edges, got {m}")
    if m > threshold:
        raise DecompositionError(f"{m} edges exceeds the exact threshold {threshold}")
    _, split = _exact_partition(graph, list(range(m)), set(), backend)
    full = (1 << m) - 1
    kids: dict[int, tuple[int, int]] = {}
    counter = [m]

    def build(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        a = split[mask]
        left, right = build(a), build(mask ^ a)
        node = counter[0]
        counter[0] += 1
        kids[node] = (left, right)
        return node

    root = build(full)
    num_nodes, edges = _from_binary(m, kids, root, counter[0])
    return make_decomposition(graph, num_nodes, edges, list(range(m)))


def branchwidth_exact(
    graph: Graph, threshold: int = EXACT_THRESHOLD, backend: Optional[str] = None
) -> int:
    m = graph.m
    if m < 2:
        raise DecompositionError(f"exact construction needs at least 2 edges, got {m}")
    if m > threshold:
        raise DecompositionError(f"{m} edges exceeds the exact threshold {threshold}")
    cost, _ = _exact_partition(graph, list(range(m)), set(), backend)
    return cost


def _elimination_order(graph: Graph, rng: random.Random, strategy: str, jitter: bool) -> list[int]:
    nb = [set(a) for a in graph.adjacency]
    alive = set(range(graph.n))
    order = []
    while alive:
        best_key = None
        cands: list[int] = []
        for v in alive:
            if strategy == "min_fill":
                s = list(nb[v])
                key = sum(1 for i in range(len(s)) for j in range(i + 1, len(s))
                          if s[j] not in nb[s[i]])
            else:
                key = len(nb[v])
            if best_key is None or key < best_key:
                best_key, cands = key, [v]
            elif key == best_key:
                cands.append(v)
        v = rng.choice(sorted(cands)) if jitter else min(cands)
        for a in nb[v]:
            nb[a] |= nb[v] - {a}
            nb[a].discard(v)
        alive.discard(v)
        order.append(v)
    return order


def _from_elimination(graph: Graph, order: Sequence[int]) -> BranchDecomposition:
    """Tree decomposition from an elimination order, then bags to a branch decomposition."""
    pos = {v: i for i, v in enumerate(order)}
    nb = [set(a) for a in graph.adjacency]
    td_parent: dict[int, Optional[int]] = {}
    for v in order:
        higher = nb[v]
        td_parent[v] = min(higher, key=pos.__getitem__) if higher else None
        for a in higher:
            nb[a] |= higher - {a}
            nb[a].discard(v)
    owned: dict[int, list[int]] = {v: [] for v in order}
    for e, (u, v) in enumerate(graph.edges):
        owned[u if pos[u] < pos[v] else v].append(e)
    td_children: dict[int, list[int]] = {v: [] for v in order}
    roots = []
    for v in order:
        p = td_parent[v]
        if p is None:
            roots.append(v)
        else:
            td_children[p].append(v)

    m = graph.m
    kids: dict[int, tuple[int, int]] = {}
    counter = [m]

    def chain(items: list[int]) -> Optional[int]:
        if not items:
            return None
        cur = items[0]
        for it in items[1:]:
            node = counter[0]
            counter[0] += 1
            kids[node] = (cur, it)
            cur = node
        return cur

    built: dict[int, Optional[int]] = {}
    # bag parents are eliminated later, so the elimination order is a valid post-order
    for v in order:
        items = list(owned[v])
        items += [built[c] for c in td_children[v] if built[c] is not None]
        built[v] = chain(items)
    top = chain([built[r] for r in roots if built[r] is not None])
    assert top is not None and top in kids
    num_nodes, edges = _from_binary(m, kids, top, counter[0])
    return make_decomposition(graph, num_nodes, edges, list(range(m)))


def _score(masks: dict[TreeEdge, int]) -> tuple[int, int, int]:
    sizes = [bin(mk).count("1") for mk in masks.values()]
    w = max(sizes, default=0)
    return (w, sizes.count(w), sum(s * s for s in sizes))


def _local_search(
    decomp: BranchDecomposition, rng: random.Random, iterations: int
) -> BranchDecomposition:
    g = decomp.graph
    leaf_of = list(decomp.leaf_of)
    edges = decomp.tree_edges
    score = _score(_order_masks(g, decomp.num_nodes, edges, leaf_of))
    m = g.m
    for _ in range(iterations):
        i, j = rng.randrange(m), rng.randrange(m)
        if i == j:
            continue
        leaf_of[i], leaf_of[j] = leaf_of[j], leaf_of[i]
        s = _score(_order_masks(g, decomp.num_nodes, edges, leaf_of))
        if s < score:
            score = s
        else:
            leaf_of[i], leaf_of[j] = leaf_of[j], leaf_of[i]
    if tuple(leaf_of) == decomp.leaf_of:
        return decomp
    return make_decomposition(g, decomp.num_nodes, edges, leaf_of)


def construct_heuristic(
    graph: Graph, seed: int = 0, tries: int = 4, iterations: Optional[int] = None
) -> BranchDecomposition:
    """Best-effort decomposition from elimination orderings plus random leaf swaps.

    Deterministic for a fixed ``seed``.
    """
    if graph.m < 2:
        raise DecompositionError(f"decomposition needs at least 2 edges, got {graph.m}")
    rng = random.Random(seed)
    if iterations is None:
        iterations = min(400, 8 * graph.m)
    best: Optional[BranchDecomposition] = None
    best_score = None
    for t in range(max(1, tries)):
        strategy = "min_fill" if t % 2 == 0 else "min_degree"
        order = _elimination_order(graph, rng, strategy, jitter=t >= 2)
        cand = _local_search(_from_elimination(graph, order), rng, iterations)
        s = _score(_order_masks(graph, cand.num_nodes, cand.tree_edges, cand.leaf_of))
        if best_score is None or s < best_score:
            best, best_score = cand, s
    assert best is not None
    return best


def construct(
    graph: Graph,
    exact_threshold: int = EXACT_THRESHOLD,
    seed: int = 0,
    backend: Optional[str] = None,
) -> tuple[BranchDecomposition, bool]:
    """Exact decomposition when the edge count allows it, otherwise the heuristic.

    Returns the decomposition and whether its width is certified optimal.
    """
    if graph.m <= exact_threshold:
        return construct_exact(graph, exact_threshold, backend), True
    return construct_heuristic(graph, seed=seed), False


def to_dot(decomp: BranchDecomposition, one_based: bool = True) -> str:
    """Graphviz rendering with graph edges on leaves and ``w(f)`` on tree edges."""
    off = 1 if one_based else 0
    g = decomp.graph
    edge_at = {x: e for e, x in enumerate(decomp.leaf_of)}
    lines = ["graph decomposition {"]
    for x in range(decomp.num_nodes):
        if x in edge_at:
            u, v = g.edges[edge_at[x]]
            lines.append(f'  n{x} [shape=box, label="{u + off}-{v + off}"];')
        else:
            lines.append(f'  n{x} [shape=point];')
    for f in decomp.tree_edges:
        label = ",".join(str(v + off) for v in sorted(decomp.order[f]))
        lines.append(f'  n{f[0]} -- n{f[1]} [label="{{{label}}}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
