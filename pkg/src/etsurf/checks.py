"""Invariant battery run on every surface the pipeline emits or loads."""

from __future__ import annotations

from .graph import is_edge_transitive
from .perm import _mul
from .surface import SimplicialSurface

ALLOWED_FE = {(1, 2), (1, 4), (2, 1), (2, 2)}


def _elementary_abelian_2(group) -> bool:
    elems = group.elements()
    ident = tuple(range(group.degree))
    for a in elems:
        if _mul(a, a) != ident:
            return False
    gens = group._gens
    return all(_mul(a, b) == _mul(b, a) for a in gens for b in gens)


def surface_violations(s: SimplicialSurface) -> list[str]:
    """Names of the violated invariants (empty when everything holds)."""
    bad = []
    v, e, f = s.counts
    if 2 * e != 3 * f:
        bad.append("|X1| != 3/2 |X2|")
    if sorted(c.vertices for c in s.cdc) != sorted(c.vertices for c in s.umbrellas()):
        bad.append("umbrellas do not reproduce the cover")
    if s.is_orientable() and s.euler_characteristic() % 2:
        bad.append("orientable surface with odd Euler characteristic")
    if not s.is_edge_transitive():
        return bad
    aut = s.automorphism_group()
    fe = s.face_edge_type()
    vf = s.vertex_face_type()
    if fe.pair not in ALLOWED_FE:
        bad.append(f"face-edge type {fe} outside the four allowed types")
    if len(s.face_orbits()) > 2:
        bad.append("more than two face orbits")
    n_vorb = len(s.vertex_orbits())
    if n_vorb != 1:
        bad.append(f"{n_vorb} vertex orbits; expected 1")
    stab = s.edge_stabilizer()
    if stab.order() not in (1, 2, 4) or not _elementary_abelian_2(stab):
        bad.append("edge stabiliser does not embed in C2 x C2")
    if aut.order() != fe.edge_stab_order * e:
        bad.append("|Aut(X)| != edge stabiliser order * |X1|")
    vf_pair = vf.pair if vf is not None else None
    if (fe.face_orbits == 1) != (vf is not None):
        bad.append("face transitivity disagrees with the face-edge type")
    if (fe.pair == (1, 4)) != (vf_pair == (1, 6)):
        bad.append(f"fe {fe} and vf {vf} break the (1,4) <-> (1,6) equivalence")
    if (fe.pair == (1, 2)) != (vf_pair == (1, 3)):
        bad.append(f"fe {fe} and vf {vf} break the (1,2) <-> (1,3) equivalence")
    if fe.face_orbits == 2 and s.face_2_coloring() is None:
        bad.append("two face orbits but no face 2-colouring")
    if not is_edge_transitive(s.face_graph):
        bad.append("face graph is not edge-transitive")
    return bad


def two_orbit_group_conditions(s: SimplicialSurface) -> list[str]:
    """Check the defining conditions of a (2,2)- or (2,1)-group on Aut(X).

    The group must be edge-transitive of order ``t*|E|``, have two orbits on
    the face-graph vertices, and for every 2-arc ``(F1, F2, F3)`` contain an
    element taking ``F1`` to ``F3``.
    """
    bad = []
    aut = s.automorphism_group()
    g = s.face_graph
    fe = s.face_edge_type()
    if aut.order() != fe.edge_stab_order * len(g.edges):
        bad.append("order")
    if not aut.is_transitive(g.edges):
        bad.append("edge transitivity")
    if len(aut.orbits()) != 2:
        bad.append("two vertex orbits")
    elems = aut.elements()
    for mid in range(g.n):
        for a in g.adjacency[mid]:
            for b in g.adjacency[mid]:
                if a != b and not any(x[a] == b for x in elems):
                    bad.append(f"no element maps {a} to {b}")
                    return bad
    return bad
