import pytest

from vecdom.graph import (
    DemandVector,
    DuplicateEdgeError,
    GraphError,
    Instance,
    ProblemKind,
    SelfLoopError,
    VertexRangeError,
    build_graph,
    check_domination,
)

P3 = [(0, 1), (1, 2)]


def test_build_path_and_cycle():
    g = build_graph(3, P3)
    assert (g.n, g.m) == (3, 2)
    assert g.neighbors(1) == (0, 2)
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4.m == 4 and all(c4.degree(v) == 2 for v in range(4))
    assert c4.has_edge(0, 3) and c4.has_edge(3, 0) and not c4.has_edge(0, 2)


def test_build_rejects_bad_input():
    with pytest.raises(SelfLoopError):
        build_graph(2, [(0, 0)])
    with pytest.raises(DuplicateEdgeError):
        build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(VertexRangeError):
        build_graph(2, [(0, 2)])
    assert issubclass(SelfLoopError, GraphError)


def test_induced_and_isolated():
    g = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    sub, kept = g.induced([1, 2, 4])
    assert kept == [1, 2, 4]
    assert sub.edges == ((0, 1),)
    assert sub.isolated() == [2]


def test_demands():
    d = DemandVector.of([0, 2, 1, 0])
    assert d.d_star == 2 and d.zero_count() == 2 and len(d) == 4 and d[1] == 2
    assert tuple(DemandVector.uniform(3, 1)) == (1, 1, 1)
    with pytest.raises(GraphError):
        DemandVector.of([1, -1])
    with pytest.raises(GraphError):
        Instance.make(3, P3, [1, 1])


@pytest.mark.parametrize("kind,expected", [("vector", True), ("total", False), ("multiple", True)])
def test_check_domination_p3_centre(kind, expected):
    inst = Instance.make(3, P3, 1, kind)
    assert check_domination(inst, {1}) is expected


def test_check_domination_details():
    total = Instance.make(3, P3, 1, "total")
    assert check_domination(total, {0, 1})
    vec = Instance.make(3, P3, [2, 0, 2], "vector")
    assert not check_domination(vec, {1})
    assert check_domination(vec, {0, 2})
    with pytest.raises(VertexRangeError):
        check_domination(vec, {7})


def test_kind_parse():
    assert ProblemKind.parse("Total") is ProblemKind.TOTAL
    assert ProblemKind.parse(ProblemKind.VECTOR) is ProblemKind.VECTOR
    assert ProblemKind.MULTIPLE.closed and ProblemKind.TOTAL.members_dominated
    assert not ProblemKind.VECTOR.members_dominated
    with pytest.raises(ValueError):
        ProblemKind.parse("weighted")
