"""Cross-checks behind the ``oracle-check``, ``relabel-check`` and
``verify-fixture`` commands."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cdc import DEFAULT_ORACLE_BOUND, CycleDoubleCover, enumerate_cdcs_bruteforce
from .checks import surface_violations
from .construct import Limits, census_graph
from .errors import InputError
from .graph import CubicGraph, find_isomorphism, relabel
from .perm import Permutation
from .surface import SimplicialSurface


@dataclass
class OracleReport:
    graph_id: str
    n_covers: int
    oracle: list
    pipeline: list

    @property
    def ok(self) -> bool:
        return self.oracle == self.pipeline

    def lines(self):
        yield f"graph {self.graph_id}: {self.n_covers} vertex-faithful covers in total"
        yield f"oracle:   {len(self.oracle)} edge-transitive surfaces"
        yield f"pipeline: {len(self.pipeline)} edge-transitive surfaces"
        yield "match" if self.ok else "MISMATCH"


def oracle_check(g: CubicGraph, graph_id=None, bound=DEFAULT_ORACLE_BOUND, limits=Limits()) -> OracleReport:
    """Compare the construction pipeline with exhaustive CDC enumeration."""
    graph_id = graph_id or g.name or "graph"
    covers = enumerate_cdcs_bruteforce(g, bound=bound)
    aut = g.automorphism_group()
    oracle = set()
    for c in covers:
        if SimplicialSurface.from_cdc(g, c).is_edge_transitive():
            oracle.add(c.canonical_key(aut))
    pipeline = {r.cdc for r in census_graph(g, graph_id, limits=limits)}
    return OracleReport(graph_id, len(covers), sorted(oracle), sorted(pipeline))


def random_relabelling(n: int, seed: int) -> Permutation:
    images = list(range(n))
    random.Random(seed).shuffle(images)
    return Permutation(images)


@dataclass
class RelabelReport:
    graph_id: str
    seed: int | None
    original: list
    relabelled: list
    mapped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mapped == self.relabelled

    def lines(self):
        yield f"graph {self.graph_id}, seed {self.seed}"
        yield f"original:   {len(self.original)} surfaces"
        yield f"relabelled: {len(self.relabelled)} surfaces"
        yield "equal up to isomorphism" if self.ok else "DIFFERENT"


def relabel_check(g: CubicGraph, seed=None, perm=None, graph_id=None, limits=Limits()) -> RelabelReport:
    """Census of ``g`` and of a relabelled copy, compared up to isomorphism.

    The isomorphism used for the comparison is searched for afresh rather
    than taken from the relabelling.
    """
    graph_id = graph_id or g.name or "graph"
    if perm is None:
        if seed is None:
            raise InputError("relabel check needs a seed or an explicit permutation")
        perm = random_relabelling(g.n, seed)
    h = relabel(g, perm)
    first = census_graph(g, graph_id, limits=limits)
    second = census_graph(h, graph_id, limits=limits)
    phi = find_isomorphism(g, h)
    if phi is None:
        raise AssertionError("relabelled graph not recognised as isomorphic")
    aut_h = h.automorphism_group()

    def summary(r, key):
        return (r.n_faces, r.fe_label, r.chi, r.orientable, r.aut_order, key)

    mapped = []
    for r in first:
        cover = CycleDoubleCover(g, r.cdc, check=False).apply(phi.images)
        cover = CycleDoubleCover(h, cover.cycles, check=False)
        mapped.append(summary(r, cover.canonical_key(aut_h)))
    return RelabelReport(
        graph_id,
        seed,
        [summary(r, r.cdc) for r in first],
        sorted(summary(r, r.cdc) for r in second),
        sorted(mapped),
    )


@dataclass
class FixtureReport:
    name: str
    counts: tuple
    chi: int
    orientable: bool
    degrees: list
    edge_transitive: bool
    fe: str | None
    vf: str | None
    aut_order: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        v, e, f = self.counts
        yield f"surface {self.name}"
        yield f"(|X0|, |X1|, |X2|) = ({v}, {e}, {f})"
        yield f"euler characteristic = {self.chi}"
        yield f"orientable = {str(self.orientable).lower()}"
        yield f"vertex degrees = {self.degrees}"
        yield f"edge-transitive = {str(self.edge_transitive).lower()}"
        if self.fe:
            yield f"face-edge type = {self.fe}"
        if self.vf:
            yield f"vertex-face type = {self.vf}"
        yield f"|Aut(X)| = {self.aut_order}"
        for v in self.violations:
            yield f"VIOLATION: {v}"
        yield "all invariants hold" if self.ok else "FAILED"


def verify_fixture(s: SimplicialSurface, name="surface") -> FixtureReport:
    et = s.is_edge_transitive()
    return FixtureReport(
        name=name,
        counts=s.counts,
        chi=s.euler_characteristic(),
        orientable=s.is_orientable(),
        degrees=sorted({s.degree(v) for v in range(s.n_vertices)}),
        edge_transitive=et,
        fe=str(s.face_edge_type()) if et else None,
        vf=str(s.vertex_face_type()) if s.is_face_transitive() else None,
        aut_order=s.automorphism_group().order(),
        violations=surface_violations(s),
    )
