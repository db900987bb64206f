import itertools
import json

import pytest

from etsurf.cdc import Cycle, simple_cycles
from etsurf.checks import surface_violations, two_orbit_group_conditions
from etsurf.errors import InputError, SurfaceError
from etsurf.graph import are_isomorphic, relabel
from etsurf.surface import (
    SimplicialSurface,
    bundled_surface,
    load_surface,
    load_surface_json,
    surfaces_isomorphic,
)

K4_TRIANGLES = [Cycle(t) for t in itertools.combinations(range(4), 3)]


@pytest.fixture
def tetra(k4):
    return SimplicialSurface.from_cdc(k4, K4_TRIANGLES)


@pytest.fixture
def octa(q3):
    return SimplicialSurface.from_cdc(q3, simple_cycles(q3, 4))


@pytest.fixture(scope="module")
def x22():
    return bundled_surface("x22")


@pytest.fixture(scope="module")
def x21():
    return bundled_surface("x21")


class TestFromCover:
    def test_tetrahedron(self, tetra, k4):
        assert tetra.counts == (4, 6, 4)
        assert tetra.euler_characteristic() == 2
        assert tetra.is_orientable()
        assert are_isomorphic(tetra.face_graph, k4)
        assert all(len(tetra.umbrella(v)) == 3 for v in range(4))

    def test_octahedron(self, octa, q3):
        assert octa.counts == (6, 12, 8)
        assert octa.euler_characteristic() == 2
        assert are_isomorphic(octa.face_graph, q3)
        assert all(octa.degree(v) == 4 for v in range(6))

    def test_not_a_cover(self, k4):
        with pytest.raises(SurfaceError):
            SimplicialSurface.from_cdc(k4, K4_TRIANGLES[:3])

    def test_umbrellas_reproduce_cover(self, octa, q3):
        assert sorted(octa.umbrellas()) == sorted(simple_cycles(q3, 4))


class TestInvariants:
    def test_tetrahedron(self, tetra):
        assert tetra.automorphism_group().order() == 24
        assert str(tetra.face_edge_type()) == "(1,4)"
        assert str(tetra.vertex_face_type()) == "(1,6)"
        assert tetra.face_2_coloring() is None

    def test_octahedron(self, octa):
        assert octa.automorphism_group().order() == 48
        col = octa.face_2_coloring()
        assert sorted(col).count(0) == 4 and col.count(1) == 4
        assert str(octa.face_edge_type()) == "(1,4)"

    def test_rp2(self):
        s = bundled_surface("rp2")
        assert s.counts == (6, 15, 10)
        assert s.euler_characteristic() == 1
        assert not s.is_orientable()
        assert s.orientation_conflict() is not None

    def test_x22(self, x22):
        assert x22.counts == (36, 216, 144)
        assert x22.euler_characteristic() == -36
        assert x22.is_orientable()
        assert {x22.degree(v) for v in range(36)} == {12}
        assert x22.face_graph.n == 144 and len(x22.face_graph.edges) == 216
        assert x22.automorphism_group().order() == 432
        assert str(x22.face_edge_type()) == "(2,2)"
        assert x22.vertex_face_type() is None
        assert two_orbit_group_conditions(x22) == []

    def test_x21(self, x21):
        assert x21.counts == (28, 168, 112)
        assert x21.euler_characteristic() == -28
        assert x21.automorphism_group().order() == 168
        assert str(x21.face_edge_type()) == "(2,1)"
        col = x21.face_2_coloring()
        orbits = x21.face_orbits()
        assert len(orbits) == 2
        for orb in orbits:
            assert len({col[f] for f in orb}) == 1
        assert two_orbit_group_conditions(x21) == []

    @pytest.mark.parametrize("name", ["tetrahedron", "rp2", "x21", "x22"])
    def test_battery(self, name):
        assert surface_violations(bundled_surface(name)) == []

    def test_orbit_stabilizer_on_edges(self, x21):
        aut = x21.automorphism_group()
        assert len(x21.edge_orbits()) == 1
        assert aut.order() == len(x21.edges) * x21.edge_stabilizer().order()


class TestLoading:
    def test_open_surface_rejected(self):
        with pytest.raises(SurfaceError):
            load_surface([(1, 2, 3), (1, 2, 4)])

    def test_non_triangle(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"faces": [[1, 2]]}))
        with pytest.raises(InputError):
            load_surface_json(p)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text("{")
        with pytest.raises(InputError):
            load_surface_json(p)

    def test_pinched_vertex_rejected(self):
        # two tetrahedra glued at a single vertex
        a = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        b = [(0, 4, 5), (0, 4, 6), (0, 5, 6), (4, 5, 6)]
        with pytest.raises(SurfaceError):
            load_surface(a + b)

    def test_roundtrip(self, x21):
        doc = x21.to_json(name="x")
        s, meta = load_surface_json(doc)
        assert meta["name"] == "x"
        assert s.counts == x21.counts


class TestIsomorphism:
    def test_self(self, tetra):
        assert surfaces_isomorphic(tetra, tetra)

    def test_sizes_differ(self, tetra, octa):
        assert not surfaces_isomorphic(tetra, octa)

    def test_relabelled(self, x21):
        n = x21.face_graph.n
        perm = list(range(n))[::-1]
        g2 = relabel(x21.face_graph, perm)
        umbrellas = [c.apply(perm) for c in x21.umbrellas()]
        s2 = SimplicialSurface.from_cdc(g2, umbrellas)
        assert surfaces_isomorphic(x21, s2)

    def test_same_graph_different_surfaces(self, corpus):
        from etsurf.construct import census_graph

        g = corpus["Dyck"]
        a, b = census_graph(g)
        sa = SimplicialSurface.from_cdc(g, a.cdc)
        sb = SimplicialSurface.from_cdc(g, b.cdc)
        assert not surfaces_isomorphic(sa, sb)
