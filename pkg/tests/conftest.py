import itertools

import networkx as nx
import pytest

from vimc.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def integrity_by_enumeration(g: Graph) -> int:
    """Independent oracle: every subset, components from networkx."""
    h = to_nx(g)
    best = g.n
    for r in range(g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            rest = h.subgraph(set(range(g.n)) - set(s))
            biggest = max((len(c) for c in nx.connected_components(rest)), default=0)
            best = min(best, r + biggest)
    return best


@pytest.fixture
def apex_graph():
    """Apex 0 joined to one end of each of ten disjoint edges."""
    edges = [(0, 2 * i + 1) for i in range(10)] + [(2 * i + 1, 2 * i + 2) for i in range(10)]
    return Graph(21, edges)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
