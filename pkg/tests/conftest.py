import networkx as nx
import pytest

from etsurf.graph import CubicGraph, read_corpus

_RESULTS = {}


def record_criterion(number, ok, detail=""):
    _RESULTS[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def from_nx(G, name=None):
    G = nx.convert_node_labels_to_integers(G)
    return CubicGraph.from_edges(G.number_of_nodes(), list(G.edges()), name=name)


@pytest.fixture(scope="session")
def corpus():
    return dict(read_corpus())


@pytest.fixture
def k4():
    return from_nx(nx.complete_graph(4), "K4")


@pytest.fixture
def q3():
    return from_nx(nx.hypercube_graph(3), "Q3")


@pytest.fixture
def heawood():
    return from_nx(nx.heawood_graph(), "Heawood")
