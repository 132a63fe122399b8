"""Command-line interface.

Exit status: 0 on success or YES, 1 on NO (or a failed cross-check), 2 on
errors.  Result documents go to stdout as JSON; everything else to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bench import run_bench, to_csv
from .decomposition import (
    EXACT_THRESHOLD,
    DecompositionError,
    branchwidth_exact,
    construct_exact,
    construct_heuristic,
    to_dot,
)
from .graph import GraphError, Instance, ProblemKind
from .io import ParseError, dump_document, emit_instance, parse_instance, result_document
from .oracle import DEFAULT_CAP, OracleCapExceeded, brute_min
from .planar import decide, kernelize, remove_irrelevant
from .solver import solve, strip_isolated

log = logging.getLogger("vecdom")

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
SEED_ENV = "VECDOM_SEED"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(SEED_ENV, "0"))


def _load(args, budget: Optional[int] = None) -> Instance:
    return parse_instance(args.file, kind=args.kind, budget=budget)


def cmd_solve(args) -> int:
    inst = _load(args)
    sol = solve(inst, budget=args.budget, exact_threshold=args.exact_threshold,
                seed=_seed(args), backend=args.backend)
    doc = result_document(
        "solve", inst, k=args.budget, optimum=sol.optimum, witness=sol.witness,
        width=sol.width, seconds=sol.seconds,
        extra={"feasible": sol.feasible, "width_certified": sol.certified,
               "backend": sol.backend},
    )
    dump_document(doc, sys.stdout)
    if sol.feasible:
        log.info("optimum %d", sol.optimum)
        return EXIT_OK
    log.info("infeasible")
    return EXIT_NO


def cmd_decide(args) -> int:
    inst = _load(args, budget=args.k)
    v = decide(inst, args.k, exact_threshold=args.exact_threshold, seed=_seed(args),
               backend=args.backend, assume_planar=not args.not_planar)
    diag = v.diagnostics
    doc = result_document(
        "decide", inst, k=args.k, verdict=v.answer, witness=v.witness,
        optimum=None, width=diag.width, bstar=diag.bstar,
        kernel=diag.to_dict(), seconds=diag.seconds,
    )
    dump_document(doc, sys.stdout)
    log.info("%s (%s)", "YES" if v.answer else "NO", diag.decided_by)
    return EXIT_OK if v.answer else EXIT_NO


def cmd_bw(args) -> int:
    inst = _load(args)
    st = strip_isolated(inst.graph, inst.demands, ProblemKind.VECTOR)
    g = st.graph
    t0 = time.perf_counter()
    if g.m < 2:
        width, exact, dec = 0, True, None
    elif args.exact:
        dec = construct_exact(g, args.exact_threshold, args.backend)
        width, exact = dec.width, True
        assert width == branchwidth_exact(g, args.exact_threshold, args.backend)
    else:
        dec = construct_heuristic(g, seed=_seed(args))
        width, exact = dec.width, False
    if args.dot and dec is not None:
        Path(args.dot).write_text(to_dot(dec), encoding="ascii")
    doc = result_document("bw", inst, width=width, seconds=time.perf_counter() - t0,
                          extra={"width_certified": exact})
    dump_document(doc, sys.stdout)
    return EXIT_OK


def cmd_kernelize(args) -> int:
    inst = _load(args, budget=args.k)
    if inst.kind is not ProblemKind.VECTOR:
        raise GraphError("kernelize applies to --kind vector only")
    t0 = time.perf_counter()
    red = remove_irrelevant(inst.graph, inst.demands)
    kr = kernelize(red.graph, red.demands, args.k)
    forced = sorted(red.kept[v] for v in kr.forced)
    reduced = Instance(kr.graph, kr.demands, inst.kind, kr.budget)
    kept = [red.kept[v] + 1 for v in kr.kept]
    text = emit_instance(reduced, comments=[f"reduced budget {kr.budget}",
                                            "original ids " + " ".join(map(str, kept))])
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    verdict = kr.verdict
    witness = forced if verdict else None
    doc = result_document(
        "kernelize", inst, k=args.k, verdict=verdict, witness=witness,
        kernel={"rounds": kr.rounds, "forced": [v + 1 for v in forced],
                "removed_irrelevant": [v + 1 for v in red.removed],
                "reduced_budget": kr.budget, "z": kr.z, "kept": kept},
        seconds=time.perf_counter() - t0,
        extra={"reduced_instance": text},
    )
    dump_document(doc, sys.stdout)
    return EXIT_NO if verdict is False else EXIT_OK


def _verify_one(path: str, kinds: Sequence[str], cap: int, seed: int,
                backend: Optional[str]) -> dict:
    inst = parse_instance(path)
    rows = []
    for kname in kinds:
        ki = inst.with_kind(kname)
        ref = brute_min(ki, cap=cap)
        sol = solve(ki, seed=seed, backend=backend)
        rows.append({"kind": kname, "oracle": ref.optimum, "solver": sol.optimum,
                     "agree": ref.optimum == sol.optimum,
                     "witness": None if sol.witness is None else [v + 1 for v in sorted(sol.witness)]})
    return {"file": str(path), "n": inst.graph.n, "m": inst.graph.m, "checks": rows,
            "agree": all(r["agree"] for r in rows)}


def cmd_verify(args) -> int:
    files: list[str] = []
    if args.file:
        files.append(args.file)
    if args.dir:
        files += sorted(str(p) for p in Path(args.dir).iterdir()
                        if p.is_file() and p.suffix in (".vd", ".txt", ".dimacs", ".gr"))
    if not files:
        raise GraphError("verify needs a file or --dir")
    kinds = [k.value for k in ProblemKind] if args.kind_all else [args.kind]
    t0 = time.perf_counter()
    if len(files) > 1 and args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            results = list(ex.map(_verify_one, files, [kinds] * len(files),
                                  [args.cap] * len(files), [_seed(args)] * len(files),
                                  [args.backend] * len(files)))
    else:
        results = [_verify_one(f, kinds, args.cap, _seed(args), args.backend) for f in files]
    ok = all(r["agree"] for r in results)
    doc = {"schema": "vecdom-verify/1", "command": "verify", "agree": ok,
           "results": results, "wall_time": time.perf_counter() - t0}
    dump_document(doc, sys.stdout)
    for r in results:
        if not r["agree"]:
            log.error("mismatch in %s: %s", r["file"], r["checks"])
    return EXIT_OK if ok else EXIT_NO


def cmd_bench(args) -> int:
    backends = ["python", "compiled"] if args.backend == "both" else [args.backend or "auto"]
    kinds = list(ProblemKind) if args.kind_all else [ProblemKind.parse(args.kind)]
    rows = run_bench(grids=args.grids, cycles=args.cycles, demand_levels=args.demands,
                     kinds=kinds, backends=backends, seed=_seed(args), repeat=args.repeat)
    text = to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text, encoding="ascii")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vecdom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", default="vector", choices=[k.value for k in ProblemKind])
    common.add_argument("--seed", type=int, default=None,
                        help=f"heuristic RNG seed (default ${SEED_ENV} or 0)")
    common.add_argument("--backend", default=None, choices=["auto", "compiled", "python"])
    common.add_argument("--threads", type=int, default=1, help="concurrency hint")
    common.add_argument("--exact-threshold", type=int, default=EXACT_THRESHOLD,
                        help="largest edge count for exact decompositions")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="minimum dominating set")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=None, help="prune solutions above this size")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("decide", parents=[common], help="is there a solution of size <= k")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--not-planar", action="store_true",
                   help="never reject on the planar width bound")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("bw", parents=[common], help="branch decomposition width")
    s.add_argument("file")
    s.add_argument("--exact", action="store_true")
    s.add_argument("--dot", help="write the decomposition tree as Graphviz")
    s.set_defaults(func=cmd_bw)

    s = sub.add_parser("kernelize", parents=[common], help="reduce a vector instance")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--output", "-o", help="write the reduced instance here")
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("verify", parents=[common], help="cross-check against brute force")
    s.add_argument("file", nargs="?")
    s.add_argument("--dir", help="verify every instance file in a directory")
    s.add_argument("--all-kinds", dest="kind_all", action="store_true")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle vertex cap")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", parents=[common], help="runtime against width on grids/cycles")
    s.add_argument("--grids", type=int, nargs="*", default=[3, 4])
    s.add_argument("--cycles", type=int, nargs="*", default=[])
    s.add_argument("--demands", type=int, nargs="*", default=[1, 2])
    s.add_argument("--all-kinds", dest="kind_all", action="store_true")
    s.add_argument("--repeat", type=int, default=1)
    s.add_argument("--csv", help="also write the CSV here")
    s.set_defaults(func=cmd_bench)
    # bench compares both backends on request
    s._option_string_actions["--backend"].choices = ["auto", "compiled", "python", "both"]
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, GraphError, DecompositionError, OracleCapExceeded,
            FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
