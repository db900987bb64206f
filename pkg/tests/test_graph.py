import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from etsurf.errors import DisconnectedGraphError, InputError, NotCubicError
from etsurf.graph import (
    CubicGraph,
    are_isomorphic,
    find_isomorphism,
    is_bipartite,
    is_edge_transitive,
    parse_corpus,
    parse_graph6,
    relabel,
    write_graph6,
)
from etsurf.perm import Permutation

from conftest import from_nx

AUT_ORDERS = {
    "K4": 24, "K3,3": 72, "cube Q3": 48, "Petersen": 120, "Heawood": 336,
    "Mobius-Kantor": 96, "Pappus": 216, "Desargues": 240, "Dyck": 192, "Tutte-Coxeter": 1440,
}


def nx_graph(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def test_bundled_corpus(corpus):
    assert set(AUT_ORDERS) <= set(corpus)
    for g in corpus.values():
        assert g.n % 2 == 0 and len(g.edges) == 3 * g.n // 2


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_graph6_matches_networkx(corpus, name):
    g = corpus[name]
    assert write_graph6(g) == nx.to_graph6_bytes(nx_graph(g), header=False).decode().strip()
    assert parse_graph6(write_graph6(g)) == g


def test_graph6_large(corpus):
    g = corpus["face graph of X(2,2)"]
    assert g.n == 144
    text = write_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g
    assert text == nx.to_graph6_bytes(nx_graph(g), header=False).decode().strip()


def test_not_cubic():
    with pytest.raises(NotCubicError):
        parse_graph6(nx.to_graph6_bytes(nx.cycle_graph(6), header=False).strip())


def test_disconnected():
    two = nx.disjoint_union(nx.complete_graph(4), nx.complete_graph(4))
    with pytest.raises(DisconnectedGraphError):
        parse_graph6(nx.to_graph6_bytes(two, header=False).strip())


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", ">>graph6<<"])
def test_malformed(bad):
    with pytest.raises(InputError):
        parse_graph6(bad)


def test_corpus_names():
    text = "# first\nC~\n\nC~ second\nC~\n"
    assert [n for n, _ in parse_corpus(text)] == ["first", "second", "graph2"]


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_aut_order(corpus, name):
    g = corpus[name]
    aut = g.automorphism_group()
    assert aut.order() == AUT_ORDERS[name]
    for p in aut.generators:
        assert g.is_automorphism(p)


@pytest.mark.parametrize("name", ["K4", "K3,3", "cube Q3", "Petersen"])
def test_aut_order_vs_vf2(corpus, name):
    G = nx_graph(corpus[name])
    count = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(G, G).isomorphisms_iter())
    assert corpus[name].automorphism_group().order() == count


def test_aut_k4_brute(k4):
    brute = [p for p in itertools.permutations(range(4)) if k4.is_automorphism(p)]
    assert len(brute) == 24


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_edge_transitive(corpus, name):
    assert is_edge_transitive(corpus[name])


def test_prism_not_edge_transitive():
    prism = from_nx(nx.circular_ladder_graph(3))
    assert not is_edge_transitive(prism)
    assert prism.automorphism_group().order() == 12


def test_bipartite(corpus):
    col = is_bipartite(corpus["Heawood"])
    assert sorted(col).count(0) == 7 and col.count(1) == 7
    assert is_bipartite(corpus["Petersen"]) is None


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["Petersen", "Heawood", "Mobius-Kantor", "Pappus"]), st.randoms(use_true_random=False))
def test_isomorphism_found(name, rnd):
    from etsurf.graph import read_corpus

    g = dict(read_corpus())[name]
    images = list(range(g.n))
    rnd.shuffle(images)
    h = relabel(g, images)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert all(h.has_edge(phi(u), phi(v)) for u, v in g.edges)


def test_non_isomorphic(corpus):
    assert not are_isomorphic(corpus["Pappus"], from_nx(nx.LCF_graph(18, [5, -5], 9)))
    assert not are_isomorphic(corpus["Petersen"], from_nx(nx.circular_ladder_graph(5)))


def test_relabel_degree_mismatch(k4):
    with pytest.raises(InputError):
        relabel(k4, Permutation.identity(5))


def test_invalid_adjacency():
    with pytest.raises(InputError):
        CubicGraph([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 1]])
