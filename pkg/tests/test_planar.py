import random

import pytest

from vecdom.generators import cycle_graph, path_graph, random_grid_subgraph, star_graph
from vecdom.graph import DemandVector, Instance, ProblemKind, build_graph, check_domination
from vecdom.oracle import brute_decide, brute_min
from vecdom.planar import bstar, decide, kernelize, remove_irrelevant


def test_irrelevant_path_example():
    g = path_graph(4)
    red = remove_irrelevant(g, DemandVector.of([0, 0, 1, 0]))
    assert red.removed == [0]
    assert red.kept == [1, 2, 3]
    assert red.graph.edges == ((0, 1), (1, 2))


def test_irrelevant_extremes():
    g = cycle_graph(5)
    red = remove_irrelevant(g, DemandVector.uniform(5, 1))
    assert red.removed == [] and red.graph is g
    red = remove_irrelevant(g, DemandVector.uniform(5, 0))
    assert red.graph.n == 0
    assert brute_min(Instance(red.graph, red.demands)).optimum == 0


def test_kernel_p3_shortcuts():
    g = path_graph(3)
    d = DemandVector.uniform(3, 5)
    no = kernelize(g, d, 2)
    assert no.verdict is False
    yes = kernelize(g, d, 3)
    assert yes.verdict is True and yes.forced == {0, 1, 2} and yes.budget == 0


def test_kernel_star_example():
    g = star_graph(3)
    kr = kernelize(g, DemandVector.of([5, 1, 1, 1]), 2)
    assert kr.verdict is None
    assert kr.forced == {0}
    assert kr.budget == 1
    assert kr.kept == [1, 2, 3]
    assert tuple(kr.demands) == (0, 0, 0)
    v = decide(Instance(g, DemandVector.of([5, 1, 1, 1])), 2)
    assert v.answer and v.witness == {0}


def test_kernel_vector_only():
    with pytest.raises(ValueError):
        kernelize(path_graph(3), DemandVector.uniform(3, 1), 1, ProblemKind.TOTAL)


def test_bstar_values():
    assert bstar(4, 0) == 33
    assert bstar(0, 0) == 9
    assert bstar(1, 5) == 37
    with pytest.raises(ValueError):
        bstar(-1, 0)


def test_decide_examples():
    c4 = cycle_graph(4)
    yes = decide(Instance(c4, DemandVector.uniform(4, 1)), 2)
    assert yes.answer and len(yes.witness) == 2
    assert not decide(Instance(c4, DemandVector.uniform(4, 1)), 1).answer
    assert not decide(Instance(c4, DemandVector.uniform(4, 2), ProblemKind.TOTAL), 3).answer
    assert decide(Instance(c4, DemandVector.uniform(4, 2), ProblemKind.TOTAL), 4).answer


def test_width_gate():
    inst = Instance(cycle_graph(4), DemandVector.uniform(4, 1))
    gated = decide(inst, 2, width_bound=1)
    assert not gated.answer and gated.diagnostics.gate == "reject"
    open_ = decide(inst, 2, width_bound=1, assume_planar=False)
    assert open_.answer and open_.diagnostics.gate.startswith("uncertified")


def test_diagnostics_populated():
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4)])
    v = decide(Instance(g, DemandVector.of([0, 0, 1, 1, 0, 1])), 3)
    assert v.answer
    diag = v.diagnostics.to_dict()
    assert diag["removed_irrelevant"] == [0]
    assert 5 in diag["forced"]
    assert diag["bstar"] == bstar(diag["kernel_budget"], diag["z"])


@pytest.mark.parametrize("kind", list(ProblemKind))
def test_decide_random(kind):
    rng = random.Random(kind.value)
    for _ in range(40):
        g = random_grid_subgraph(2, rng.randint(2, 4), rng.random(), rng)
        d = DemandVector.of(rng.randint(0, 3) for _ in range(g.n))
        inst = Instance(g, d, kind)
        for k in range(g.n + 1):
            v = decide(inst, k)
            assert v.answer == brute_decide(inst, k)
            if v.answer:
                assert check_domination(inst, v.witness) and len(v.witness) <= k
