"""Scaling harness: runtime against decomposition width on grids and cycles."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from .dp import run_dp
from .decomposition import construct, root_decomposition
from .generators import cycle_graph, grid_graph
from .graph import DemandVector, Graph, ProblemKind
from .kernels import backend_name, compiled_available, get_backend

FIELDS = ("instance", "n", "m", "width", "d_star", "kind", "backend",
          "runtime", "optimum", "pairs", "max_table")


@dataclass
class BenchRow:
    instance: str
    n: int
    m: int
    width: int
    d_star: int
    kind: str
    backend: str
    runtime: float
    optimum: Optional[int]
    pairs: int
    max_table: int


def bench_instances(grids: Sequence[int], cycles: Sequence[int]) -> list[tuple[str, Graph]]:
    out = [(f"grid{g}x{g}", grid_graph(g)) for g in grids]
    out += [(f"cycle{c}", cycle_graph(c)) for c in cycles]
    return out


def run_bench(
    grids: Sequence[int] = (3, 4),
    cycles: Sequence[int] = (),
    demand_levels: Sequence[int] = (1, 2),
    kinds: Iterable[ProblemKind] = (ProblemKind.VECTOR,),
    backends: Sequence[str] = ("auto",),
    seed: int = 0,
    repeat: int = 1,
) -> list[BenchRow]:
    """Time the DP alone (decomposition construction excluded) per instance and backend."""
    kinds = list(kinds)
    rows = []
    for name, g in bench_instances(grids, cycles):
        decomp, _ = construct(g, seed=seed)
        rooted = root_decomposition(decomp)
        for level in demand_levels:
            dv = DemandVector.uniform(g.n, level)
            for kind in kinds:
                for b in backends:
                    if b == "compiled" and not compiled_available():
                        continue
                    kern = get_backend(b)
                    best_t = None
                    res = None
                    for _ in range(max(1, repeat)):
                        t0 = time.perf_counter()
                        res = run_dp(g, dv, rooted, kind, backend=backend_name(kern))
                        dt = time.perf_counter() - t0
                        best_t = dt if best_t is None else min(best_t, dt)
                    rows.append(BenchRow(
                        instance=name, n=g.n, m=g.m, width=decomp.width, d_star=level,
                        kind=kind.value, backend=backend_name(kern), runtime=best_t,
                        optimum=res.optimum,
                        pairs=sum(t.pairs for t in res.tables.values()),
                        max_table=max(t.size for t in res.tables.values()),
                    ))
    return rows


def to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        d["runtime"] = f"{r.runtime:.6f}"
        w.writerow(d)
    return buf.getvalue()
