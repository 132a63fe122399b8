"""Instance files and JSON result documents.

Instance files are DIMACS-style ASCII::

    c comment
    p vecdom <n> <m>
    e <u> <v>
    d <v> <demand>

Vertices are 1-based in files and 0-based in memory.  Vertices without a
``d`` line have demand 1, so plain dominating-set instances load as-is.
"""

from __future__ import annotations

import io
import json
import os
from pathlib import Path
from typing import IO, Any, Iterable, Optional, Union

from .graph import (
    DemandVector,
    DuplicateEdgeError,
    GraphError,
    Instance,
    ProblemKind,
    SelfLoopError,
    build_graph,
    check_domination,
)

SCHEMA = "vecdom-result/1"
DEFAULT_DEMAND = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _int(tok: str, what: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", line) from None


def parse_text(text: str, kind: Union[ProblemKind, str] = ProblemKind.VECTOR,
               budget: Optional[int] = None) -> Instance:
    header = None
    edges: list[tuple[int, int]] = []
    edge_lines: dict[tuple[int, int], int] = {}
    demands: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        tag = tok[0]
        if tag == "p":
            if header is not None:
                raise ParseError("second problem line", lineno)
            if len(tok) != 4 or tok[1] != "vecdom":
                raise ParseError("malformed header, expected 'p vecdom <n> <m>'", lineno)
            n = _int(tok[2], "vertex count", lineno)
            m = _int(tok[3], "edge count", lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size in header", lineno)
            header = (n, m)
            continue
        if header is None:
            raise ParseError(f"{tag!r} line before the problem line", lineno)
        n = header[0]
        if tag == "e":
            if len(tok) != 3:
                raise ParseError("edge line needs two endpoints", lineno)
            u = _int(tok[1], "endpoint", lineno)
            v = _int(tok[2], "endpoint", lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"endpoint {x} out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in edge_lines:
                raise ParseError(f"duplicate edge {u} {v} (first at line {edge_lines[key]})",
                                 lineno)
            edge_lines[key] = lineno
            edges.append((u - 1, v - 1))
        elif tag == "d":
            if len(tok) != 3:
                raise ParseError("demand line needs a vertex and a value", lineno)
            v = _int(tok[1], "vertex", lineno)
            val = _int(tok[2], "demand", lineno)
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            if val < 0:
                raise ParseError(f"negative demand {val}", lineno)
            if v - 1 in demands:
                raise ParseError(f"second demand for vertex {v}", lineno)
            demands[v - 1] = val
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing problem line 'p vecdom <n> <m>'")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    try:
        g = build_graph(n, edges)
    except (SelfLoopError, DuplicateEdgeError) as exc:  # pragma: no cover - caught above
        raise ParseError(str(exc)) from exc
    dv = DemandVector.of(demands.get(v, DEFAULT_DEMAND) for v in range(n))
    return Instance(g, dv, ProblemKind.parse(kind), budget)


def parse_instance(source: Union[str, os.PathLike, IO[str]],
                   kind: Union[ProblemKind, str] = ProblemKind.VECTOR,
                   budget: Optional[int] = None) -> Instance:
    """Read an instance from a path or an open text stream."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="ascii", newline="") as fh:
            text = fh.read()
    if isinstance(text, bytes):
        text = text.decode("ascii")
    return parse_text(text, kind, budget)


def emit_instance(instance: Instance, comments: Iterable[str] = ()) -> str:
    """Serialise ``instance``; demands equal to the default are omitted."""
    g = instance.graph
    out = io.StringIO()
    for c in comments:
        out.write(f"c {c}\n")
    out.write(f"p vecdom {g.n} {g.m}\n")
    for u, v in g.edges:
        out.write(f"e {u + 1} {v + 1}\n")
    for v, d in enumerate(instance.demands):
        if d != DEFAULT_DEMAND:
            out.write(f"d {v + 1} {d}\n")
    return out.getvalue()


def write_instance(instance: Instance, path: Union[str, os.PathLike]) -> None:
    Path(path).write_text(emit_instance(instance), encoding="ascii")


def result_document(
    command: str,
    instance: Instance,
    *,
    k: Optional[int] = None,
    verdict: Optional[bool] = None,
    optimum: Optional[int] = None,
    witness: Optional[Iterable[int]] = None,
    width: Optional[int] = None,
    bstar: Optional[int] = None,
    kernel: Optional[dict] = None,
    seconds: Optional[float] = None,
    extra: Optional[dict] = None,
) -> dict[str, Any]:
    """Build the JSON-ready record, re-checking any witness before it is emitted."""
    wl = None
    if witness is not None:
        ws = sorted(set(witness))
        if not check_domination(instance, ws):
            raise GraphError("refusing to emit a witness that fails re-verification")
        if k is not None and verdict and len(ws) > k:
            raise GraphError("witness exceeds the budget")
        wl = [v + 1 for v in ws]
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "command": command,
        "kind": instance.kind.value,
        "n": instance.graph.n,
        "m": instance.graph.m,
        "d_star": instance.demands.d_star,
        "z": instance.demands.zero_count(),
        "k": k,
        "verdict": None if verdict is None else ("YES" if verdict else "NO"),
        "optimum": optimum,
        "witness": wl,
        "width": width,
        "bstar": bstar,
        "kernel": kernel,
        "wall_time": seconds,
    }
    if extra:
        doc.update(extra)
    return doc


def dump_document(doc: dict, stream: IO[str]) -> None:
    json.dump(doc, stream, indent=2, sort_keys=False)
    stream.write("\n")
