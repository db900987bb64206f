import networkx as nx
import pytest

from etsurf.cdc import CycleDoubleCover
from etsurf.construct import (
    CensusRecord,
    ConstructionTask,
    Limits,
    candidate_subgroups,
    census_graph,
    dedup,
    make_record,
    parse_types,
    search_surfaces,
)
from etsurf.errors import CeilingExceeded, InputError
from etsurf.perm import PermGroup, SubgroupRep
from etsurf.surface import bundled_surface, surfaces_isomorphic, SimplicialSurface

from conftest import from_nx


def test_parse_types():
    assert parse_types("1,4;1,2") == ((1, 2), (1, 4))
    assert parse_types([(2, 2)]) == ((2, 2),)
    with pytest.raises(InputError):
        parse_types("1,3")
    with pytest.raises(InputError):
        parse_types("x")


class TestCandidates:
    def test_k4_full_group(self, k4):
        reps = candidate_subgroups(k4, 4)
        assert [r.order() for r in reps] == [24]

    def test_k4_order_6(self, k4):
        # the order-6 subgroups of S4 fix a vertex, so none is edge-transitive
        assert candidate_subgroups(k4, 1) == []

    def test_heawood_order_42(self, heawood):
        reps = candidate_subgroups(heawood, 2)
        assert reps and all(r.order() == 42 for r in reps)

    def test_vertex_orbit_filter(self, heawood):
        assert candidate_subgroups(heawood, 2, vertex_orbits=2) == []
        assert len(candidate_subgroups(heawood, 2, vertex_orbits=1)) == 1

    def test_ceiling(self, corpus):
        with pytest.raises(CeilingExceeded):
            candidate_subgroups(corpus["Heawood"], 2, limits=Limits(max_aut_order=100))

    def test_bad_t(self, k4):
        with pytest.raises(InputError):
            candidate_subgroups(k4, 3)


class TestSearch:
    def test_k4_tetrahedron(self, k4):
        aut = k4.automorphism_group()
        found = search_surfaces(ConstructionTask(k4, aut, 4, 2), SubgroupRep(aut, aut))
        assert len(found) == 1
        cover, surf = found[0]
        assert surf.counts == (4, 6, 4)
        assert str(surf.face_edge_type()) == "(1,4)"

    def test_trivial_group_finds_nothing(self, k4):
        aut = k4.automorphism_group()
        assert search_surfaces(ConstructionTask(k4, aut, 4, 2), PermGroup.trivial(4)) == []

    def test_bad_task(self, k4):
        with pytest.raises(InputError):
            ConstructionTask(k4, k4.automorphism_group(), 4, 4)

    def test_x22_recovered(self, corpus):
        fixture = bundled_surface("x22")
        g = corpus["face graph of X(2,2)"]
        aut = g.automorphism_group()
        hits = []
        for rep in candidate_subgroups(g, 2, vertex_orbits=2):
            for cover, surf in search_surfaces(ConstructionTask(g, aut, 2, 3), rep):
                hits.append(surfaces_isomorphic(surf, fixture))
        assert any(hits)


class TestCensus:
    def test_k4(self, k4):
        (r,) = census_graph(k4, "K4")
        assert (r.n_faces, r.fe_label, r.chi, r.orientable) == (4, "(1,4)", 2, True)

    def test_non_edge_transitive(self):
        with pytest.raises(InputError):
            census_graph(from_nx(nx.circular_ladder_graph(3)))

    def test_x21_face_graph(self, corpus):
        recs = census_graph(corpus["face graph of X(2,1)"], types="2,1")
        assert any(r.n_faces == 112 and r.fe == "(2,1)" and r.chi == -28 for r in recs)

    def test_heawood_type_1(self, heawood):
        (r,) = census_graph(heawood)
        assert r.fe_label == "(1,2).1"
        assert r.counts == (7, 21, 14) and r.chi == 0

    def test_types_filter(self, heawood):
        assert census_graph(heawood, types="1,4") == []

    def test_record_json_roundtrip(self, k4):
        (r,) = census_graph(k4)
        assert CensusRecord.from_json(r.to_json()) == r


class TestDedup:
    def test_empty(self):
        assert dedup([]) == []

    def test_relabelled_copies_merge(self, k4):
        (r,) = census_graph(k4, "K4")
        aut = k4.automorphism_group()
        copies = []
        for g in aut.elements()[:4]:
            cover = CycleDoubleCover(k4, r.cdc, check=False).apply(g)
            copies.append(CensusRecord(**{**r.__dict__, "cdc": cover.key()}))
        assert dedup(copies, k4) == [r]

    def test_automorphic_covers(self, q3):
        (r,) = census_graph(q3)
        p = q3.automorphism_group().generators[0]
        cover = CycleDoubleCover(q3, r.cdc).apply(p)
        other = make_record(r.graph_id, q3, cover, SimplicialSurface.from_cdc(q3, cover))
        assert len(dedup([r, other], q3)) == 1


@pytest.mark.parametrize("name, fe", [("face graph of X(2,1)", "(2,1)"), ("face graph of X(2,2)", "(2,2)")])
def test_two_orbit_type_witness(corpus, name, fe):
    from etsurf.checks import two_orbit_group_conditions

    g = corpus[name]
    recs = [r for r in census_graph(g, types=fe[1:-1]) if r.fe == fe]
    assert recs
    for r in recs:
        assert two_orbit_group_conditions(SimplicialSurface.from_cdc(g, r.cdc)) == []
