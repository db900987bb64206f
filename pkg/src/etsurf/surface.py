"""Simplicial surfaces built from vertex-faithful cycle double covers.

Faces of the surface are the vertices of the face graph, edges are its edges,
and surface vertices are the cycles of the cover (the umbrellas). Symmetry is
computed on the face-graph side: the automorphism group of the surface is the
stabiliser of the umbrella family inside the automorphism group of the face
graph.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

from .cdc import Cycle, CycleDoubleCover, cdc_violation, is_vertex_faithful
from .errors import InputError, SurfaceError
from .graph import CubicGraph, find_isomorphism, is_bipartite
from .perm import PermGroup, _mul


@dataclass(frozen=True)
class FaceEdgeType:
    face_orbits: int
    edge_stab_order: int
    subtype: int | None = None

    @property
    def pair(self) -> tuple[int, int]:
        return (self.face_orbits, self.edge_stab_order)

    def __str__(self):
        s = f"({self.face_orbits},{self.edge_stab_order})"
        return s if self.subtype is None else f"{s}.{self.subtype}"


@dataclass(frozen=True)
class VertexFaceType:
    vertex_orbits: int
    face_stab_order: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.vertex_orbits, self.face_stab_order)

    def __str__(self):
        return f"({self.vertex_orbits},{self.face_stab_order})"


class SimplicialSurface:
    """A closed connected simplicial surface.

    Faces are numbered ``0..|X2|-1`` and coincide with the vertices of
    :attr:`face_graph`; surface vertices are numbered ``0..|X0|-1`` with the
    original labels kept in :attr:`vertex_labels`.
    """

    def __init__(
        self,
        faces: Sequence[Sequence[int]],
        vertex_labels: Sequence | None = None,
        host_group: PermGroup | None = None,
    ):
        faces = [tuple(sorted(f)) for f in faces]
        nv = 1 + max(max(f) for f in faces) if faces else 0
        self.faces = tuple(faces)
        self.n_vertices = nv
        self.vertex_labels = tuple(vertex_labels) if vertex_labels is not None else tuple(range(nv))
        self._check_and_index()
        self._host_group = host_group

    # -- construction -----------------------------------------------------

    def _check_and_index(self):
        faces = self.faces
        if len(set(faces)) != len(faces):
            raise SurfaceError("two faces have the same vertex set")
        for i, f in enumerate(faces):
            if len(f) != 3 or len(set(f)) != 3:
                raise SurfaceError(f"face {i} {f} is not a triangle on 3 distinct vertices")
        edge_faces: dict = {}
        for i, (a, b, c) in enumerate(faces):
            for e in ((a, b), (a, c), (b, c)):
                edge_faces.setdefault(e, []).append(i)
        for e, fs in sorted(edge_faces.items()):
            if len(fs) != 2:
                lab = tuple(self.vertex_labels[v] for v in e)
                raise SurfaceError(f"edge {lab} lies in {len(fs)} faces; expected 2")
        self.edges = tuple(sorted(edge_faces))
        self.edge_faces = tuple(tuple(edge_faces[e]) for e in self.edges)
        used = sorted({v for f in faces for v in f})
        if used != list(range(self.n_vertices)):
            raise SurfaceError("vertex labels are not contiguous after normalisation")
        adj = [[] for _ in faces]
        for f1, f2 in self.edge_faces:
            adj[f1].append(f2)
            adj[f2].append(f1)
        try:
            self.face_graph = CubicGraph(adj)
        except InputError as exc:
            raise SurfaceError(f"face graph is not a connected cubic graph: {exc}") from exc
        self._umbrellas = [self._walk_umbrella(v) for v in range(self.n_vertices)]

    def _walk_umbrella(self, v):
        around = [i for i, f in enumerate(self.faces) if v in f]
        if not around:
            raise SurfaceError(f"vertex {self.vertex_labels[v]} lies in no face")
        nbrs = {i: [] for i in around}
        for i in around:
            for j in self.face_graph.adjacency[i]:
                if j in nbrs and len(set(self.faces[i]) & set(self.faces[j]) - {v}) == 1 and v in self.faces[j]:
                    nbrs[i].append(j)
        seq = [around[0]]
        prev = None
        cur = around[0]
        while True:
            nxt = [j for j in nbrs[cur] if j != prev]
            if len(nbrs[cur]) != 2:
                raise SurfaceError(f"faces around vertex {self.vertex_labels[v]} do not close up")
            nxt = nxt[0] if prev is not None else min(nbrs[cur])
            if nxt == seq[0]:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        if len(seq) != len(around) or len(seq) < 3:
            raise SurfaceError(
                f"faces around vertex {self.vertex_labels[v]} form more than one umbrella"
            )
        return Cycle(seq)

    @classmethod
    def from_cdc(cls, g: CubicGraph, cdc) -> "SimplicialSurface":
        """Surface whose vertices are the cycles of a vertex-faithful CDC of ``g``."""
        cycles = sorted(c if isinstance(c, Cycle) else Cycle(c) for c in cdc)
        problem = cdc_violation(g, cycles)
        if problem is None and len(set(cycles)) != len(cycles):
            problem = "repeated cycle"
        if problem:
            raise SurfaceError(f"not a cycle double cover: {problem}")
        if not is_vertex_faithful(cycles):
            raise SurfaceError("cycle double cover is not vertex-faithful")
        through = [[] for _ in range(g.n)]
        for i, c in enumerate(cycles):
            for x in c.vertices:
                through[x].append(i)
        s = cls([tuple(t) for t in through], host_group=g._aut)
        if s.face_graph != g:
            raise SurfaceError("reconstructed face graph differs from the host graph")
        s.face_graph = g
        return s

    @classmethod
    def from_faces(cls, faces: Iterable[Sequence]) -> "SimplicialSurface":
        """Surface from vertex triples over arbitrary hashable labels."""
        faces = [tuple(f) for f in faces]
        if not faces:
            raise SurfaceError("no faces")
        labels = sorted({v for f in faces for v in f})
        idx = {v: i for i, v in enumerate(labels)}
        return cls([[idx[v] for v in f] for f in faces], vertex_labels=labels)

    # -- incidence --------------------------------------------------------

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.n_vertices, len(self.edges), len(self.faces))

    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f

    def umbrella(self, v: int) -> tuple[int, ...]:
        return self._umbrellas[v].vertices

    def degree(self, v: int) -> int:
        return len(self._umbrellas[v])

    def umbrellas(self) -> list[Cycle]:
        return list(self._umbrellas)

    @cached_property
    def cdc(self) -> CycleDoubleCover:
        return CycleDoubleCover(self.face_graph, self._umbrellas, check=False)

    def is_orientable(self) -> bool:
        return self.orientation_conflict() is None

    def orientation_conflict(self):
        """The first edge whose two faces induce the same direction, or None."""
        orient = [None] * len(self.faces)
        orient[0] = self.faces[0]
        edge_of = {e: i for i, e in enumerate(self.edges)}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            a, b, c = orient[f]
            for x, y in ((a, b), (b, c), (c, a)):
                e = (x, y) if x < y else (y, x)
                f1, f2 = self.edge_faces[edge_of[e]]
                h = f2 if f1 == f else f1
                if orient[h] is None:
                    (z,) = set(self.faces[h]) - {x, y}
                    orient[h] = (y, x, z)
                    queue.append(h)
                else:
                    p, q, r = orient[h]
                    if (x, y) in ((p, q), (q, r), (r, p)):
                        return tuple(self.vertex_labels[v] for v in e)
        return None

    def face_2_coloring(self) -> list[int] | None:
        return is_bipartite(self.face_graph)

    # -- symmetry ---------------------------------------------------------

    @cached_property
    def _aut(self) -> PermGroup:
        host = self._host_group or self.face_graph.automorphism_group()
        return host.cycle_set_stabilizer(c.vertices for c in self._umbrellas)

    def automorphism_group(self) -> PermGroup:
        """Aut(X) acting on faces: the umbrella-family stabiliser in Aut(face graph)."""
        return self._aut

    def _cycle_index(self):
        return {c: i for i, c in enumerate(self._umbrellas)}

    def vertex_orbits(self) -> list[list[int]]:
        """Orbits of Aut(X) on surface vertices."""
        index = self._cycle_index()
        gens = self._aut._gens
        remaining = set(range(self.n_vertices))
        out = []
        while remaining:
            v = min(remaining)
            orb = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for p in gens:
                    y = index[self._umbrellas[x].apply(p)]
                    if y not in orb:
                        orb.add(y)
                        stack.append(y)
            remaining -= orb
            out.append(sorted(orb))
        return out

    def face_orbits(self) -> list[list[int]]:
        return self._aut.orbits()

    def edge_orbits(self) -> list[list[tuple[int, int]]]:
        return self._aut.orbits(self.face_graph.edges)

    def is_edge_transitive(self) -> bool:
        return len(self.edge_orbits()) == 1

    def edge_stabilizer(self, edge=None) -> PermGroup:
        edge = edge or self.face_graph.edges[0]
        return self._aut.edge_stabilizer(edge)

    def face_stabilizer(self, face: int = 0) -> PermGroup:
        return self._aut.point_stabilizer(face)

    def face_edge_type(self) -> FaceEdgeType:
        if not self.is_edge_transitive():
            raise SurfaceError("face-edge type is defined only for edge-transitive surfaces")
        nf = len(self.face_orbits())
        s = self.edge_stabilizer().order()
        sub = self._subtype() if (nf, s) == (1, 2) else None
        return FaceEdgeType(nf, s, sub)

    def is_face_transitive(self) -> bool:
        return len(self.face_orbits()) == 1

    def vertex_face_type(self) -> VertexFaceType | None:
        """Defined for face-transitive surfaces only; None otherwise."""
        if not self.is_face_transitive():
            return None
        return VertexFaceType(len(self.vertex_orbits()), self.face_stabilizer().order())

    def _subtype(self) -> int:
        # 1 if an umbrella is swept out by one step along itself, else 2
        elems = self._aut.elements()
        c = self._umbrellas[0]
        seq = c.vertices
        m = len(seq)
        for step in (1, 2):
            for k in range(m):
                for direction in (1, -1):
                    path = [seq[(k + direction * j) % m] for j in range(step + 1)]
                    for sigma in elems:
                        if sigma[path[0]] != path[-1]:
                            continue
                        if _sweep(sigma, path) == c:
                            return step
        raise SurfaceError("umbrella is not an alpha-cycle of length-2 or length-3 paths")

    def to_json(self, name: str | None = None, source: str | None = None) -> dict:
        faces = [[self.vertex_labels[v] for v in f] for f in self.faces]
        return {"faces": faces, "metadata": {"name": name, "source": source}}


def _sweep(sigma, path):
    seg = path[:-1]
    seq = []
    ident = tuple(range(len(sigma)))
    p = sigma
    while True:
        seg = [sigma[v] for v in seg]
        seq.extend(seg)
        if p == ident:
            break
        p = _mul(sigma, p)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return None
    return Cycle(seq)


# --------------------------------------------------------------------------
# Module-level operations
# --------------------------------------------------------------------------


def surface_from_cdc(g: CubicGraph, cdc) -> SimplicialSurface:
    return SimplicialSurface.from_cdc(g, cdc)


def load_surface(faces: Iterable[Sequence]) -> SimplicialSurface:
    return SimplicialSurface.from_faces(faces)


def face_graph(s: SimplicialSurface) -> CubicGraph:
    return s.face_graph


def euler_characteristic(s: SimplicialSurface) -> int:
    return s.euler_characteristic()


def is_orientable(s: SimplicialSurface) -> bool:
    return s.is_orientable()


def umbrella(s: SimplicialSurface, v: int) -> tuple[int, ...]:
    return s.umbrella(v)


def automorphism_group_surface(s: SimplicialSurface) -> PermGroup:
    return s.automorphism_group()


def is_edge_transitive_surface(s: SimplicialSurface) -> bool:
    return s.is_edge_transitive()


def face_edge_type(s: SimplicialSurface) -> FaceEdgeType:
    return s.face_edge_type()


def vertex_face_type(s: SimplicialSurface) -> VertexFaceType:
    return s.vertex_face_type()


def face_2_coloring(s: SimplicialSurface) -> list[int] | None:
    return s.face_2_coloring()


def surfaces_isomorphic(s1: SimplicialSurface, s2: SimplicialSurface) -> bool:
    """True iff an incidence-preserving bijection between the surfaces exists."""
    if s1.counts != s2.counts:
        return False
    if sorted(map(len, s1.umbrellas())) != sorted(map(len, s2.umbrellas())):
        return False
    phi = find_isomorphism(s1.face_graph, s2.face_graph)
    if phi is None:
        return False
    moved = frozenset(c.apply(phi.images) for c in s1.umbrellas())
    target = frozenset(s2.umbrellas())
    for a in s2.face_graph.automorphism_group().elements():
        if all(c.apply(a) in target for c in moved):
            return True
    return False


def load_surface_json(path_or_doc) -> tuple[SimplicialSurface, dict]:
    """Load a surface document ``{"faces": [...], "metadata": {...}}``."""
    if isinstance(path_or_doc, dict):
        doc = path_or_doc
    else:
        with open(path_or_doc) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("faces"), list):
        raise InputError("surface document needs a 'faces' list")
    faces = doc["faces"]
    for f in faces:
        if not isinstance(f, list) or len(f) != 3:
            raise SurfaceError(f"face {f!r} is not a triple")
    return load_surface(faces), doc.get("metadata") or {}


def bundled_surface(name: str) -> SimplicialSurface:
    """One of the bundled fixtures: ``x22``, ``x21``, ``tetrahedron``, ``rp2``."""
    ref = resources.files("etsurf").joinpath(f"data/{name}.json")
    return load_surface_json(json.loads(ref.read_text()))[0]
