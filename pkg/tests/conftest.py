import random

import networkx as nx
import pytest

from vecdom.generators import random_connected_graph
from vecdom.graph import DemandVector, Graph, Instance, ProblemKind, build_graph

ACCEPTANCE_LINES: dict[int, str] = {}


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), list(h.edges()))


def atlas_connected(max_n: int = 6) -> list[Graph]:
    """Every connected graph on 1..max_n vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(from_nx(h))
    return out


def random_demands(n: int, rng: random.Random, lo: int = 0, hi: int = 3) -> DemandVector:
    return DemandVector.of(rng.randint(lo, hi) for _ in range(n))


def oracle_corpus(seed: int = 2024, per_graph: int = 3, random_count: int = 200):
    """(graph, demands) pairs: the atlas with random demands plus random graphs on 7-8 vertices."""
    rng = random.Random(seed)
    cases = []
    for g in atlas_connected(6):
        for _ in range(per_graph):
            cases.append((g, random_demands(g.n, rng)))
    for _ in range(random_count):
        n = rng.choice((7, 8))
        g = random_connected_graph(n, rng.randint(0, n), rng)
        cases.append((g, random_demands(n, rng)))
    return cases


@pytest.fixture(scope="session")
def corpus():
    return oracle_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
