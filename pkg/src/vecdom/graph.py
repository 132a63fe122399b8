"""Graphs, demand vectors, and the feasibility predicate for the three domination variants."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised when a graph or an instance fails validation."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class ProblemKind(enum.Enum):
    VECTOR = "vector"
    TOTAL = "total"
    MULTIPLE = "multiple"

    @property
    def members_dominated(self) -> bool:
        """Whether chosen vertices must meet their own demand."""
        return self is not ProblemKind.VECTOR

    @property
    def closed(self) -> bool:
        """Whether a chosen vertex counts towards its own demand."""
        return self is ProblemKind.MULTIPLE

    @classmethod
    def parse(cls, value: "str | ProblemKind") -> "ProblemKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown problem kind {value!r}") from None


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the dense vertex set ``0..n-1``.

    ``edges`` is sorted and every pair is stored as ``(u, v)`` with ``u < v``;
    the position of a pair in ``edges`` is its edge index.  ``adjacency[v]``
    is the sorted tuple of neighbours of ``v``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        # neighbour tuples are short; a linear scan beats bisect at desk scale
        return v in a

    def isolated(self) -> list[int]:
        return [v for v in range(self.vertex_count) if not self.adjacency[v]]

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the subgraph induced by ``keep`` and the new-to-old id map."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [
            (new_id[u], new_id[v])
            for u, v in self.edges
            if u in new_id and v in new_id
        ]
        return build_graph(len(old), edges), old


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph, rejecting self-loops, duplicates and bad endpoints."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[tuple[int, int]] = set()
    neigh: list[list[int]] = [[] for _ in range(n)]
    for pair in edge_list:
        u, v = (int(x) for x in pair)
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexRangeError(f"endpoint {x} out of range [0, {n})")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        neigh[u].append(v)
        neigh[v].append(u)
    return Graph(
        vertex_count=n,
        edges=tuple(sorted(seen)),
        adjacency=tuple(tuple(sorted(a)) for a in neigh),
    )


@dataclass(frozen=True)
class DemandVector:
    demands: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d < 0 for d in self.demands):
            raise GraphError("demands must be non-negative")

    @classmethod
    def of(cls, values: Iterable[int]) -> "DemandVector":
        return cls(tuple(int(x) for x in values))

    @classmethod
    def uniform(cls, n: int, value: int) -> "DemandVector":
        return cls((value,) * n)

    @property
    def d_star(self) -> int:
        return max(self.demands, default=0)

    def __len__(self) -> int:
        return len(self.demands)

    def __getitem__(self, v: int) -> int:
        return self.demands[v]

    def __iter__(self):
        return iter(self.demands)

    def zero_count(self) -> int:
        return sum(1 for d in self.demands if d == 0)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    demands: DemandVector
    kind: ProblemKind = ProblemKind.VECTOR
    budget: Optional[int] = None

    def __post_init__(self) -> None:
        if not isinstance(self.kind, ProblemKind):
            object.__setattr__(self, "kind", ProblemKind.parse(self.kind))
        if len(self.demands) != self.graph.vertex_count:
            raise GraphError(
                f"demand vector has length {len(self.demands)}, "
                f"graph has {self.graph.vertex_count} vertices"
            )
        if self.budget is not None and self.budget < 0:
            raise GraphError("budget must be non-negative")

    @classmethod
    def make(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        demands: "Iterable[int] | int" = 1,
        kind: "ProblemKind | str" = ProblemKind.VECTOR,
        budget: Optional[int] = None,
    ) -> "Instance":
        g = build_graph(n, edges)
        if isinstance(demands, int):
            dv = DemandVector.uniform(n, demands)
        else:
            dv = DemandVector.of(demands)
        return cls(g, dv, ProblemKind.parse(kind), budget)

    def with_kind(self, kind: "ProblemKind | str") -> "Instance":
        return Instance(self.graph, self.demands, ProblemKind.parse(kind), self.budget)


def check_domination(instance: Instance, S: Iterable[int]) -> bool:
    """True iff ``S`` is a dominating set of the instance's kind."""
    g = instance.graph
    chosen = set(S)
    for v in chosen:
        if not 0 <= v < g.vertex_count:
            raise VertexRangeError(f"vertex {v} out of range [0, {g.vertex_count})")
    kind = instance.kind
    for v in range(g.vertex_count):
        member = v in chosen
        if member and not kind.members_dominated:
            continue
        count = sum(1 for u in g.adjacency[v] if u in chosen)
        if kind.closed and member:
            count += 1
        if count < instance.demands[v]:
            return False
    return True
