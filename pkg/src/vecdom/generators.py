"""Small graph families used by tests, the benchmark and the CLI."""

from __future__ import annotations

import random
from typing import Optional

from .graph import Graph, build_graph


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Centre is vertex 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(rows: int, cols: Optional[int] = None) -> Graph:
    cols = rows if cols is None else cols
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return build_graph(rows * cols, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    return build_graph(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected_graph(n: int, extra: int, rng: random.Random) -> Graph:
    """A random spanning tree plus up to ``extra`` further random edges."""
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    slots = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(slots)
    edges |= set(slots[:extra])
    return build_graph(n, sorted(edges))


def random_grid_subgraph(rows: int, cols: int, keep: float, rng: random.Random) -> Graph:
    """Connected planar graph: a random spanning tree of the grid plus kept grid edges."""
    g = grid_graph(rows, cols)
    n = g.n
    order = list(g.edges)
    rng.shuffle(order)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
        elif rng.random() < keep:
            chosen.append((u, v))
    return build_graph(n, chosen)
