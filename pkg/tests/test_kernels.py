import random

import numpy as np
import pytest

from vecdom import kernels
from vecdom.decomposition import construct_heuristic, root_decomposition
from vecdom.dp import run_dp
from vecdom.generators import grid_graph, random_connected_graph
from vecdom.graph import DemandVector, ProblemKind

needs_ext = pytest.mark.skipif(not kernels.compiled_available(), reason="extension not built")


def test_python_backend_always_available():
    assert kernels.backend_name(kernels.get_backend("python")) == "python"
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_env_selects_backend(monkeypatch):
    monkeypatch.setenv("VECDOM_BACKEND", "python")
    assert kernels.backend_name(kernels.get_backend()) == "python"


@needs_ext
def test_auto_prefers_compiled(monkeypatch):
    monkeypatch.delenv("VECDOM_BACKEND", raising=False)
    assert kernels.backend_name(kernels.get_backend()) == "compiled"


@needs_ext
@pytest.mark.parametrize("kind", list(ProblemKind))
def test_backends_agree_entrywise(kind):
    rng = random.Random(kind.value)
    graphs = [grid_graph(3)] + [random_connected_graph(8, 5, rng) for _ in range(6)]
    for g in graphs:
        d = DemandVector.of(rng.randint(0, 2) for _ in range(g.n))
        r = root_decomposition(construct_heuristic(g))
        a = run_dp(g, d, r, kind, backend="python")
        b = run_dp(g, d, r, kind, backend="compiled")
        assert a.optimum == b.optimum and a.witness == b.witness
        for y in a.tables:
            ta, tb = a.tables[y], b.tables[y]
            assert np.array_equal(ta.values, tb.values)
            assert ta.pairs == tb.pairs
            if not ta.is_leaf:
                assert np.array_equal(ta.back1, tb.back1)
                assert np.array_equal(ta.back2, tb.back2)


@needs_ext
def test_subset_dp_agree():
    from vecdom import _kernels, _pykernels

    inc = [0b0011, 0b0110, 0b1100, 0b1001]
    for outside in ([0, 0, 0, 0], [1, 0, 0, 1]):
        c1, s1 = _pykernels.subset_dp(4, inc, outside)
        c2, s2 = _kernels.subset_dp(4, inc, outside)
        assert np.array_equal(np.asarray(c1), np.asarray(c2))
        assert np.array_equal(np.asarray(s1), np.asarray(s2))
