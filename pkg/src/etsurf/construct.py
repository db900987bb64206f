"""Construction of edge-transitive surfaces from edge-transitive cubic graphs.

For each candidate subgroup ``H`` of the graph's automorphism group (edge
transitive, of order ``t * |E|`` for an edge-stabiliser order ``t``), every
path ``(F1, F2)`` or ``(F1, F2, F3)`` up to the action of ``H`` is swept around
by each ``sigma`` in ``H`` with ``sigma(F1) = F_last``. When the resulting
alpha-cycle's ``H``-orbit is a vertex-faithful cycle double cover, the
corresponding surface is built and classified. The measured classification is
what gets reported; the subgroup only seeds the search.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable

from .cdc import Cycle, CycleDoubleCover, alpha_cycle, cycle_orbit, is_cdc, is_vertex_faithful
from .errors import CeilingExceeded, InputError
from .graph import CubicGraph, is_edge_transitive
from .perm import (
    DEFAULT_MAX_ORDER,
    PermGroup,
    SubgroupRep,
    _Chain,
    _mul,
    prepare_subgroup_orders,
    subgroups_of_order,
)
from .surface import SimplicialSurface

ALL_TYPES = ((1, 2), (1, 4), (2, 1), (2, 2))


@dataclass(frozen=True)
class Limits:
    """Hard resource ceilings; exceeding one raises CeilingExceeded."""

    max_aut_order: int = DEFAULT_MAX_ORDER
    max_subgroups: int = 10_000
    max_paths: int = 1_000_000


@dataclass(frozen=True)
class ConstructionTask:
    graph: CubicGraph
    aut: PermGroup
    t: int
    path_length: int

    def __post_init__(self):
        if self.t not in (1, 2, 4):
            raise InputError(f"edge-stabiliser order must be 1, 2 or 4, not {self.t}")
        if self.path_length not in (2, 3):
            raise InputError(f"path length must be 2 or 3, not {self.path_length}")


@dataclass(frozen=True, order=True)
class CensusRecord:
    graph_id: str
    n_faces: int
    fe: str
    cdc: tuple
    subtype: int | None = field(default=None, compare=False)
    counts: tuple = field(default=(), compare=False)
    chi: int = field(default=0, compare=False)
    orientable: bool = field(default=True, compare=False)
    aut_order: int = field(default=0, compare=False)

    @property
    def fe_label(self) -> str:
        return self.fe if self.subtype is None else f"{self.fe}.{self.subtype}"

    def to_json(self) -> dict:
        d = asdict(self)
        d["counts"] = list(self.counts)
        d["cdc"] = [list(c) for c in self.cdc]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "CensusRecord":
        d = dict(d)
        d["counts"] = tuple(d["counts"])
        d["cdc"] = tuple(tuple(c) for c in d["cdc"])
        return cls(**d)


def parse_types(value) -> tuple[tuple[int, int], ...]:
    """Parse ``"1,2;1,4"`` (or an iterable of pairs) into face-edge type pairs."""
    if isinstance(value, str):
        pairs = []
        for part in value.split(";"):
            part = part.strip().strip("()")
            if not part:
                continue
            try:
                f, s = (int(x) for x in part.split(","))
            except ValueError as exc:
                raise InputError(f"bad face-edge type {part!r}") from exc
            pairs.append((f, s))
    else:
        pairs = [tuple(int(x) for x in p) for p in value]
    for p in pairs:
        if p not in ALL_TYPES:
            raise InputError(f"face-edge type {p} is not one of {list(ALL_TYPES)}")
    return tuple(sorted(set(pairs)))


# --------------------------------------------------------------------------
# Candidate subgroups
# --------------------------------------------------------------------------


def _aut_checked(g: CubicGraph, limits: Limits) -> PermGroup:
    aut = g.automorphism_group()
    if aut.order() > limits.max_aut_order:
        raise CeilingExceeded(
            f"|Aut| = {aut.order()} exceeds the ceiling {limits.max_aut_order}"
        )
    return aut


def candidate_subgroups(
    g: CubicGraph, t: int, vertex_orbits: int | None = None, limits: Limits = Limits()
) -> list[SubgroupRep]:
    """Edge-transitive subgroups of Aut(g) of order ``t * |E|``, up to conjugacy.

    ``vertex_orbits`` (1 or 2) keeps only subgroups with that many orbits on
    the vertices of ``g``.
    """
    if t not in (1, 2, 4):
        raise InputError(f"edge-stabiliser order must be 1, 2 or 4, not {t}")
    if not is_edge_transitive(g):
        raise InputError("graph is not edge-transitive")
    aut = _aut_checked(g, limits)
    k = t * len(g.edges)
    if aut.order() % k:
        return []
    reps = subgroups_of_order(aut, k, max_order=limits.max_aut_order)
    if len(reps) > limits.max_subgroups:
        raise CeilingExceeded(f"{len(reps)} subgroups exceed the ceiling {limits.max_subgroups}")
    out = []
    edges = g.edges
    for rep in reps:
        h = rep.group
        if not h.is_transitive(edges):
            continue
        if vertex_orbits is not None and len(h.orbits()) != vertex_orbits:
            continue
        out.append(rep)
    return out


# --------------------------------------------------------------------------
# Search
# --------------------------------------------------------------------------


def _paths(g: CubicGraph, length: int):
    if length == 2:
        return [(u, v) for u in range(g.n) for v in g.adjacency[u]]
    return [(u, v, w) for v in range(g.n) for u in g.adjacency[v] for w in g.adjacency[v] if u != w]


def _path_representatives(h: PermGroup, paths, limits: Limits):
    if len(paths) > limits.max_paths:
        raise CeilingExceeded(f"{len(paths)} paths exceed the ceiling {limits.max_paths}")
    remaining = set(paths)
    reps = []
    for p in sorted(paths):
        if p not in remaining:
            continue
        reps.append(p)
        stack = [p]
        remaining.discard(p)
        while stack:
            x = stack.pop()
            for s in h._gens:
                y = tuple(s[v] for v in x)
                if y in remaining:
                    remaining.discard(y)
                    stack.append(y)
    return reps


def _sigmas(h: PermGroup, start: int, end: int, cache: dict):
    """All sigma in h with sigma(start) = end: a coset rep times the stabiliser."""
    entry = cache.get(start)
    if entry is None:
        chain = _Chain(h.degree, h._gens, [start])
        stab = [chain.identity]
        if len(chain.levels) > 1:
            sub = _Chain(h.degree, chain._strong_from(1))
            stab = sub.elements()
        entry = (chain.levels[0].trans, stab)
        cache[start] = entry
    trans, stab = entry
    u = trans.get(end)
    if u is None:
        return []
    return [_mul(u, s) for s in stab]


def search_surfaces(task: ConstructionTask, h) -> list[tuple[CycleDoubleCover, SimplicialSurface]]:
    """Vertex-faithful alpha-cycle orbits under ``h`` whose surfaces are edge-transitive."""
    h = h.group if isinstance(h, SubgroupRep) else h
    g = task.graph
    out = []
    seen_cycles: set[Cycle] = set()
    seen_covers: set[tuple] = set()
    cache: dict = {}
    for path in _path_representatives(h, _paths(g, task.path_length), Limits()):
        for sigma in _sigmas(h, path[0], path[-1], cache):
            c = alpha_cycle(g, sigma, path)
            if c is None or c in seen_cycles:
                continue
            orbit = cycle_orbit(h, c)
            seen_cycles.update(orbit)
            cycles = sorted(orbit)
            key = tuple(x.vertices for x in cycles)
            if key in seen_covers:
                continue
            seen_covers.add(key)
            if not is_cdc(g, cycles) or not is_vertex_faithful(cycles):
                continue
            cover = CycleDoubleCover(g, cycles, check=False)
            surf = SimplicialSurface.from_cdc(g, cover)
            if not surf.is_edge_transitive():
                continue
            if not h.is_subgroup_of(surf.automorphism_group()):
                continue
            out.append((cover, surf))
    return out


def make_record(graph_id: str, g: CubicGraph, cover: CycleDoubleCover, surf: SimplicialSurface) -> CensusRecord:
    fe = surf.face_edge_type()
    return CensusRecord(
        graph_id=graph_id,
        n_faces=len(surf.faces),
        fe=f"({fe.face_orbits},{fe.edge_stab_order})",
        cdc=cover.canonical_key(g.automorphism_group()),
        subtype=fe.subtype,
        counts=surf.counts,
        chi=surf.euler_characteristic(),
        orientable=surf.is_orientable(),
        aut_order=surf.automorphism_group().order(),
    )


def census_graph(
    g: CubicGraph,
    graph_id: str | None = None,
    types=ALL_TYPES,
    limits: Limits = Limits(),
) -> list[CensusRecord]:
    """All edge-transitive surfaces with face graph ``g``, one per isomorphism class."""
    types = parse_types(types)
    graph_id = graph_id or g.name or "graph"
    if not is_edge_transitive(g):
        raise InputError(f"{graph_id}: graph is not edge-transitive")
    aut = _aut_checked(g, limits)
    nedges = len(g.edges)
    prepare_subgroup_orders(aut, [s * nedges for _, s in types], max_order=limits.max_aut_order)
    records = []
    for f, s in types:
        for rep in candidate_subgroups(g, s, vertex_orbits=f, limits=limits):
            for n in (2, 3):
                task = ConstructionTask(g, aut, s, n)
                for cover, surf in search_surfaces(task, rep):
                    rec = make_record(graph_id, g, cover, surf)
                    if (surf.face_edge_type().pair) in types:
                        records.append(rec)
    return dedup(records, g)


def dedup(records: Iterable[CensusRecord], g: CubicGraph | None = None) -> list[CensusRecord]:
    """One record per Aut(g)-orbit of covers, in canonical order.

    Records from :func:`census_graph` already carry orbit-canonical covers;
    when ``g`` is given the keys are recomputed so arbitrary covers merge too.
    """
    best: dict = {}
    for r in records:
        key = r.cdc
        if g is not None:
            key = CycleDoubleCover(g, key, check=False).canonical_key(g.automorphism_group())
            if key != r.cdc:
                r = CensusRecord(**{**r.__dict__, "cdc": key})
        best.setdefault((r.graph_id, key), r)
    return sorted(best.values())
