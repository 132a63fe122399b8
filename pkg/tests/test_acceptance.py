"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""

import random
import time
from contextlib import contextmanager

import networkx as nx

from conftest import ACCEPTANCE_LINES, from_nx, random_demands
from vecdom.bench import run_bench, to_csv
from vecdom.decomposition import (
    EXACT_THRESHOLD,
    branchwidth_exact,
    construct,
    construct_exact,
    construct_heuristic,
    root_decomposition,
    validate,
)
from vecdom.dp import pair_bound, partition_sets, radix, run_dp, solve_vector
from vecdom.generators import (
    cycle_graph,
    path_graph,
    random_connected_graph,
    random_graph,
    random_grid_subgraph,
    random_tree,
    star_graph,
)
from vecdom.graph import DemandVector, Instance, ProblemKind, check_domination
from vecdom.oracle import brute_decide, brute_min
from vecdom.planar import bstar, decide, remove_irrelevant
from vecdom.solver import solve
from vecdom.variants import solve_multiple, solve_total

VECTOR, TOTAL, MULTIPLE = ProblemKind.VECTOR, ProblemKind.TOTAL, ProblemKind.MULTIPLE

# witnesses checked across the whole suite, for criterion 9
WITNESS_LOG = {"checked": 0, "bad": 0, "over_budget": 0}


def record_witness(instance, witness, k=None):
    WITNESS_LOG["checked"] += 1
    if not check_domination(instance, witness):
        WITNESS_LOG["bad"] += 1
    if k is not None and len(witness) > k:
        WITNESS_LOG["over_budget"] += 1


@contextmanager
def criterion(num, title):
    t0 = time.perf_counter()
    line = f"FAIL {num}: {title}"
    try:
        yield
        line = f"PASS {num}: {title} ({time.perf_counter() - t0:.1f}s)"
    except BaseException as exc:
        line = f"FAIL {num}: {title}: {exc}"
        raise
    finally:
        print(line)
        ACCEPTANCE_LINES[num] = line


def _check_oracle(corpus, kind, heuristic_too=True):
    mismatches, infeasible = [], 0
    for g, d in corpus:
        inst = Instance(g, d, kind)
        ref = brute_min(inst)
        sol = solve(inst)
        got = [sol.optimum]
        if sol.witness is not None:
            record_witness(inst, sol.witness)
            assert len(sol.witness) == sol.optimum
        if heuristic_too and g.m >= 2:
            rooted = root_decomposition(construct_heuristic(g, seed=g.m))
            run = {VECTOR: solve_vector, TOTAL: solve_total, MULTIPLE: solve_multiple}[kind]
            res = run(g, d, rooted)
            got.append(res.optimum)
            if res.witness is not None:
                record_witness(inst, res.witness)
        if ref.optimum is None:
            infeasible += 1
        if any(x != ref.optimum for x in got):
            mismatches.append((g.edges, tuple(d), ref.optimum, got))
    return mismatches, infeasible


def test_criterion_1_vector_oracle(corpus):
    with criterion(1, f"vector optimum equals brute force on {len(corpus)} instances"):
        t0 = time.perf_counter()
        mismatches, _ = _check_oracle(corpus, VECTOR)
        assert not mismatches, f"{len(mismatches)} mismatches, first {mismatches[0]}"
        assert time.perf_counter() - t0 < 300


def test_criterion_2_variant_oracle(corpus):
    with criterion(2, f"total and multiple optimum equal brute force on {len(corpus)} instances"):
        t0 = time.perf_counter()
        for kind in (TOTAL, MULTIPLE):
            mismatches, infeasible = _check_oracle(corpus, kind)
            assert not mismatches, f"{kind.value}: {len(mismatches)} mismatches, first {mismatches[0]}"
            assert infeasible > 0, f"{kind.value}: corpus has no infeasible case"
        assert time.perf_counter() - t0 < 600


def _sides(rooted, y):
    """Vertices touched by edges below tree node y, and by all other edges."""
    below = rooted.subgraph_vertices(y)
    g = rooted.graph
    inside = rooted.edge_sets[y]
    rest = set()
    for e, (u, v) in enumerate(g.edges):
        if e not in inside:
            rest |= {u, v}
    return below, rest


def _check_decomposition(dec, g):
    assert validate(dec, g) is None, validate(dec, g)
    # three order sets around every internal node satisfy the containment rule
    adj = dec.tree_adjacency()
    for x in range(dec.num_nodes):
        if len(adj[x]) == 3:
            sets = [dec.order[tuple(sorted((x, y)))] for y in adj[x]]
            for i in range(3):
                assert sets[i] <= sets[(i + 1) % 3] | sets[(i + 2) % 3]
    # order set of each tree edge separates the two edge sets it induces
    rooted = root_decomposition(dec)
    for y in range(len(rooted.order)):
        if y == rooted.root:
            continue
        below, rest = _sides(rooted, y)
        assert rooted.order[y] == below & rest
    # the partition helper agrees at every merge
    for y, kids in enumerate(rooted.children):
        if y != rooted.root and len(kids) == 2:
            c1, c2 = kids
            partition_sets(rooted.order[y], rooted.order[c1], rooted.order[c2])


def test_criterion_3_decomposition_invariants():
    with criterion(3, "decompositions valid on 500 random graphs, exact <= heuristic, known widths"):
        rng = random.Random(3)
        compared = 0
        done = 0
        while done < 500:
            n = rng.randint(3, 12)
            g = random_graph(n, rng.uniform(0.15, 0.6), rng)
            if g.m < 2:
                continue
            done += 1
            heur = construct_heuristic(g, seed=done)
            _check_decomposition(heur, g)
            if g.m <= EXACT_THRESHOLD:
                ex = construct_exact(g)
                _check_decomposition(ex, g)
                assert ex.width <= heur.width, (g.edges, ex.width, heur.width)
                assert ex.width == branchwidth_exact(g)
                compared += 1
        assert compared >= 200, compared
        for n in range(3, 9):
            assert branchwidth_exact(cycle_graph(n)) == 2
        for t in range(2, 10):
            assert branchwidth_exact(star_graph(t)) == 1
        assert branchwidth_exact(path_graph(4)) == 2


def test_criterion_4_kernelization():
    with criterion(4, "decide matches brute_decide on 200 instances with d* > k"):
        rng = random.Random(4)
        paths = {"kernel": 0, "reduced then solved": 0, "yes": 0, "no": 0}
        for _ in range(200):
            n = rng.randint(4, 9)
            g = random_connected_graph(n, rng.randint(0, n), rng)
            # a few high-demand vertices so the loop commits some and hands the rest on
            vals = [rng.randint(0, 2) for _ in range(n)]
            for v in rng.sample(range(n), rng.randint(1, 3)):
                vals[v] = rng.randint(3, 6)
            d = DemandVector.of(vals)
            k = rng.randint(0, d.d_star - 1)
            inst = Instance(g, d, VECTOR)
            v = decide(inst, k)
            assert v.answer == brute_decide(inst, k), (g.edges, tuple(d), k)
            if v.answer:
                record_witness(inst, v.witness, k)
            diag = v.diagnostics
            paths["yes" if v.answer else "no"] += 1
            if diag.decided_by.startswith("kernel"):
                paths["kernel"] += 1
            elif diag.kernel_rounds > 0:
                paths["reduced then solved"] += 1
        assert min(paths.values()) >= 20, paths
        p3 = Instance.make(3, [(0, 1), (1, 2)], 5)
        no, yes = decide(p3, 2), decide(p3, 3)
        assert not no.answer and no.diagnostics.decided_by.startswith("kernel")
        assert yes.answer and yes.witness == frozenset({0, 1, 2})
        assert yes.diagnostics.decided_by.startswith("kernel")


def test_criterion_5_irrelevant_removal():
    with criterion(5, "irrelevant-vertex removal preserves the optimum on 200 instances, all kinds"):
        rng = random.Random(5)
        done, removed_any = 0, 0
        while done < 200:
            n = rng.randint(4, 10)
            g = random_connected_graph(n, rng.randint(0, n), rng)
            zeros = set(rng.sample(range(n), max(1, -(-3 * n // 10) + rng.randint(0, n // 3))))
            d = DemandVector.of(0 if v in zeros else rng.randint(1, 3) for v in range(n))
            if d.zero_count() < 0.3 * n:
                continue
            red = remove_irrelevant(g, d)
            removed_any += bool(red.removed)
            for kind in (VECTOR, TOTAL, MULTIPLE):
                before = brute_min(Instance(g, d, kind)).optimum
                after_inst = Instance(red.graph, red.demands, kind)
                after = brute_min(after_inst).optimum
                assert before == after, (g.edges, tuple(d), kind.value)
                sol = solve(after_inst)
                assert sol.optimum == after
                if sol.witness is not None:
                    record_witness(after_inst, sol.witness)
                    lifted = {red.kept[v] for v in sol.witness}
                    record_witness(Instance(g, d, kind), lifted)
            done += 1
        assert removed_any > 20, removed_any


def test_criterion_6_bstar():
    with criterion(6, "bstar values and monotonicity on k, z in [0, 100]"):
        assert bstar(4, 0) == 33
        assert bstar(0, 0) == 9
        assert bstar(1, 5) == 37
        for k in range(101):
            for z in range(101):
                b = bstar(k, z)
                if k < 100:
                    assert bstar(k + 1, z) >= b
                if z < 100:
                    assert bstar(k, z + 1) >= b


def _planar_corpus(rng):
    out = []
    for n in range(3, 9):
        out.append(cycle_graph(n))
        for _ in range(4):
            out.append(random_tree(n, rng))
    for rows, cols in ((2, 2), (2, 3), (2, 4)):
        for _ in range(12):
            out.append(random_grid_subgraph(rows, cols, rng.uniform(0.0, 1.0), rng))
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= 6 and nx.is_connected(h) and nx.check_planarity(h)[0]:
            out.append(from_nx(h))
    return out


def test_criterion_7_width_bound_on_planar():
    with criterion(7, "exact branchwidth at most bstar for every feasible k on planar graphs"):
        rng = random.Random(7)
        checks = 0
        for g in _planar_corpus(rng):
            assert nx.check_planarity(nx.Graph(list(g.edges)))[0] or g.m == 0
            for _ in range(2):
                d = random_demands(g.n, rng)
                red = remove_irrelevant(g, d)
                opt = brute_min(Instance(red.graph, red.demands, VECTOR)).optimum
                bw = branchwidth_exact(red.graph) if red.graph.m >= 2 else 0
                z = red.demands.zero_count()
                for k in range(opt, g.n + 1):
                    assert bw <= bstar(k, z), (g.edges, tuple(d), k, bw)
                    checks += 1
        assert checks > 500, checks


def test_criterion_8_complexity_shape():
    with criterion(8, "table sizes, merge-pair bounds, grid bench under 2 minutes"):
        rng = random.Random(8)
        merges = 0
        for _ in range(60):
            n = rng.randint(4, 9)
            g = random_connected_graph(n, rng.randint(1, n), rng)
            d = random_demands(n, rng)
            dec, _ = construct(g, seed=1)
            rooted = root_decomposition(dec)
            for kind in (VECTOR, TOTAL, MULTIPLE):
                res = solve(Instance(g, d, kind), decomposition=dec)
                tables = run_dp(g, d, rooted, kind).tables
                for y, t in tables.items():
                    expect = 1
                    for v in rooted.order[y]:
                        expect *= d[v] + 2 if kind is VECTOR else 2 * (d[v] + 1)
                    assert t.size == expect
                    assert all(radix(d[v], kind) == r for v, r in zip(t.vertices, t.radices))
                    if not t.is_leaf:
                        c1, c2 = t.children
                        part = partition_sets(rooted.order[y], rooted.order[c1], rooted.order[c2])
                        assert t.pairs <= pair_bound(part, d.d_star, kind), (y, t.pairs)
                        merges += 1
                assert res.optimum == brute_min(Instance(g, d, kind)).optimum
        assert merges > 100

        t0 = time.perf_counter()
        rows = run_bench(grids=(3, 4), demand_levels=(1, 2),
                         kinds=(VECTOR, TOTAL, MULTIPLE), repeat=3)
        elapsed = time.perf_counter() - t0
        csv_text = to_csv(rows)
        assert csv_text.splitlines()[0].startswith("instance,n,m,width,d_star")
        assert len(csv_text.splitlines()) == 1 + len(rows) == 13
        assert elapsed < 120, elapsed
        by = {(r.instance, r.d_star, r.kind): r for r in rows}
        small = [r for r in rows if r.instance == "grid3x3"]
        for r in small:
            big = by[("grid4x4", r.d_star, r.kind)]
            assert big.width > r.width
            assert big.pairs > r.pairs
            assert big.max_table > r.max_table
        t_small = sum(r.runtime for r in small)
        t_big = sum(r.runtime for r in rows if r.instance == "grid4x4")
        assert t_big > t_small, (t_small, t_big)
        # more demand means larger tables at the same width
        for inst in ("grid3x3", "grid4x4"):
            for kind in ("vector", "total", "multiple"):
                assert by[(inst, 2, kind)].pairs > by[(inst, 1, kind)].pairs


def test_criterion_9_witness_integrity():
    with criterion(9, "every witness re-verifies and YES witnesses fit the budget"):
        rng = random.Random(9)
        for _ in range(150):
            n = rng.randint(2, 9)
            g = random_grid_subgraph(2, (n + 1) // 2, rng.random(), rng)
            d = random_demands(g.n, rng)
            for kind in (VECTOR, TOTAL, MULTIPLE):
                inst = Instance(g, d, kind)
                ref = brute_min(inst).optimum
                sol = solve(inst)
                assert sol.optimum == ref
                if sol.witness is not None:
                    record_witness(inst, sol.witness)
                for k in range(0, g.n + 1):
                    v = decide(inst, k)
                    assert v.answer == (ref is not None and ref <= k)
                    if v.answer:
                        record_witness(inst, v.witness, k)
        assert WITNESS_LOG["bad"] == 0
        assert WITNESS_LOG["over_budget"] == 0
        assert WITNESS_LOG["checked"] > 1000
