"""Cycles, automorphism-induced alpha-cycles, and cycle double covers.

A cycle is stored in canonical form: the lexicographically least sequence
among all rotations of both traversal directions. Sets of canonical cycles
compare exactly, which is what orbit computations and deduplication rely on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CeilingExceeded, InputError
from .graph import CubicGraph
from .perm import Permutation, PermGroup, _as_tuple

DEFAULT_ORACLE_BOUND = 20


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(seq)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    back = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, back)


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple cycle of length at least 3, in canonical form."""

    vertices: tuple[int, ...]
    edge_set: frozenset = field(compare=False, hash=False, repr=False)

    def __init__(self, vertices: Iterable[int]):
        seq = tuple(int(v) for v in vertices)
        if len(seq) < 3:
            raise InputError(f"cycle {seq} is shorter than 3")
        if len(set(seq)) != len(seq):
            raise InputError(f"cycle {seq} repeats a vertex")
        seq = canonical_cycle(seq)
        object.__setattr__(self, "vertices", seq)
        m = len(seq)
        object.__setattr__(
            self, "edge_set", frozenset(_edge(seq[k], seq[(k + 1) % m]) for k in range(m))
        )

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def apply(self, p) -> "Cycle":
        p = _as_tuple(p)
        return Cycle(p[v] for v in self.vertices)

    def lies_on(self, g: CubicGraph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.edge_set)


class CycleDoubleCover:
    """A set of cycles of a cubic graph covering every edge exactly twice."""

    def __init__(self, graph: CubicGraph, cycles: Iterable, check: bool = True):
        cyc = sorted({c if isinstance(c, Cycle) else Cycle(c) for c in cycles})
        self.graph = graph
        self.cycles = tuple(cyc)
        if check:
            problem = cdc_violation(graph, self.cycles)
            if problem:
                raise InputError(problem)

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __eq__(self, other):
        if not isinstance(other, CycleDoubleCover):
            return NotImplemented
        return self.graph == other.graph and self.cycles == other.cycles

    def __hash__(self):
        return hash(self.cycles)

    def __repr__(self):
        lengths = Counter(len(c) for c in self.cycles)
        return f"CycleDoubleCover({len(self.cycles)} cycles, lengths={dict(sorted(lengths.items()))})"

    def key(self) -> tuple:
        return tuple(c.vertices for c in self.cycles)

    def apply(self, p) -> "CycleDoubleCover":
        return CycleDoubleCover(self.graph, (c.apply(p) for c in self.cycles), check=False)

    def is_vertex_faithful(self) -> bool:
        return is_vertex_faithful(self.cycles)

    def canonical_key(self, group: PermGroup | None = None) -> tuple:
        """Least key over the images under ``group`` (the host automorphisms by default)."""
        group = group or self.graph.automorphism_group()
        best = None
        for g in group.elements():
            k = tuple(sorted(c.apply(g).vertices for c in self.cycles))
            if best is None or k < best:
                best = k
        return best

    def to_json(self) -> list[list[int]]:
        return [list(c.vertices) for c in self.cycles]


# --------------------------------------------------------------------------
# Predicates
# --------------------------------------------------------------------------


def cdc_violation(g: CubicGraph, cycles: Sequence) -> str | None:
    """Describe why ``cycles`` is not a CDC of ``g``, or None if it is."""
    cover = Counter()
    for c in cycles:
        c = c if isinstance(c, Cycle) else Cycle(c)
        if not c.lies_on(g):
            return f"cycle {c.vertices} uses a non-edge"
        cover.update(c.edge_set)
    for e in g.edges:
        if cover[e] != 2:
            return f"edge {e} is covered {cover[e]} times; expected 2"
    return None


def is_cdc(g: CubicGraph, cycles: Iterable) -> bool:
    cycles = list(cycles)
    if len(set(c if isinstance(c, Cycle) else Cycle(c) for c in cycles)) != len(cycles):
        return False
    return cdc_violation(g, cycles) is None


def is_vertex_faithful(cycles: Iterable) -> bool:
    """True iff any two of the cycles share at most one edge."""
    seen: dict = {}
    for i, c in enumerate(cycles):
        c = c if isinstance(c, Cycle) else Cycle(c)
        for e in c.edge_set:
            seen.setdefault(e, []).append(i)
    pairs = Counter()
    for owners in seen.values():
        for a in range(len(owners)):
            for b in range(a + 1, len(owners)):
                pairs[owners[a], owners[b]] += 1
                if pairs[owners[a], owners[b]] > 1:
                    return False
    return True


# --------------------------------------------------------------------------
# Alpha-cycles and orbits
# --------------------------------------------------------------------------


def alpha_cycle(g: CubicGraph, sigma, path: Sequence[int]) -> Cycle | None:
    """Sweep ``path[:-1]`` around under the powers of ``sigma``.

    ``sigma`` must be an automorphism of ``g`` mapping ``path[0]`` to
    ``path[-1]``. The swept sequence is a cycle when its ``(n-1)*l`` entries
    are pairwise distinct (``l`` the order of sigma) and there are at least
    three of them; otherwise None is returned.
    """
    s = _as_tuple(sigma)
    path = [int(v) for v in path]
    if len(path) < 2:
        raise InputError("path needs at least two vertices")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise InputError(f"path step {a}-{b} is not an edge")
    if len(set(path[:-1])) != len(path) - 1:
        raise InputError("path repeats a vertex")
    if s[path[0]] != path[-1]:
        raise InputError(f"sigma maps {path[0]} to {s[path[0]]}, not {path[-1]}")
    if not g.is_automorphism(s):
        raise InputError("sigma is not an automorphism of the graph")
    order = Permutation(s).order()
    seg = path[:-1]
    seq = []
    for _ in range(order):
        seg = [s[v] for v in seg]
        seq.extend(seg)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return None
    return Cycle(seq)


def cycle_orbit(group: PermGroup, c: Cycle) -> set[Cycle]:
    """The orbit ``{h(c) : h in group}``."""
    seen = {c}
    stack = [c]
    gens = group._gens
    while stack:
        x = stack.pop()
        for p in gens:
            y = x.apply(p)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


# --------------------------------------------------------------------------
# Brute-force oracle
# --------------------------------------------------------------------------


def simple_cycles(g: CubicGraph, length: int | None = None) -> list[Cycle]:
    """All simple cycles of ``g`` (optionally of one length), canonical and sorted."""
    out = []
    adj = g.adjacency
    for s in range(g.n):
        # cycles whose least vertex is s, each direction found once then deduped
        stack = [(s, [s], {s})]
        while stack:
            v, path, on = stack.pop()
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    if length is None or len(path) == length:
                        out.append(Cycle(path))
                elif w > s and w not in on:
                    if length is not None and len(path) >= length:
                        continue
                    stack.append((w, path + [w], on | {w}))
    out.sort()
    return out


def enumerate_cdcs_bruteforce(
    g: CubicGraph, bound: int = DEFAULT_ORACLE_BOUND, length: int | None = None
) -> list[CycleDoubleCover]:
    """Every vertex-faithful CDC of ``g``, by exact cover over simple cycles.

    In a vertex-faithful CDC of a cubic graph each of the three corners at a
    vertex (pairs of incident edges) is traversed by exactly one cycle, and
    conversely. So the covers are the exact covers of the corners by simple
    cycles, with the extra side condition that no two chosen cycles share two
    edges. ``length`` restricts the search to covers by cycles of that length.
    """
    if g.n > bound:
        raise CeilingExceeded(f"oracle bound {bound} is below the graph size {g.n}")
    cycles = simple_cycles(g, length)
    corners = []
    for c in cycles:
        vs = c.vertices
        m = len(vs)
        corners.append(frozenset((vs[k], _edge(vs[k - 1], vs[(k + 1) % m])) for k in range(m)))
    item_rows: dict = {}
    for r, cs in enumerate(corners):
        for item in cs:
            item_rows.setdefault(item, set()).add(r)
    all_items = {(v, _edge(a, b)) for v in range(g.n) for a in g.adjacency[v]
                 for b in g.adjacency[v] if a < b}
    if any(item not in item_rows for item in all_items):
        return []
    by_edge: dict = {}
    for r, c in enumerate(cycles):
        for e in c.edge_set:
            by_edge.setdefault(e, []).append(r)
    clash = [set() for _ in cycles]
    for r, c in enumerate(cycles):
        counts = Counter()
        for e in c.edge_set:
            counts.update(by_edge[e])
        clash[r] = {s for s, k in counts.items() if k > 1 and s != r}

    alive = [True] * len(cycles)
    uncovered = set(all_items)
    chosen: list[int] = []
    results = []

    def kill(r, killed):
        alive[r] = False
        killed.append(r)
        for item in corners[r]:
            item_rows[item].discard(r)

    def search():
        if not uncovered:
            results.append(CycleDoubleCover(g, [cycles[r] for r in chosen], check=False))
            return
        item = min(uncovered, key=lambda it: (len(item_rows[it]), it))
        for r in sorted(item_rows[item]):
            killed: list[int] = []
            for it in corners[r]:
                for s in list(item_rows[it]):
                    kill(s, killed)
            for s in clash[r]:
                if alive[s]:
                    kill(s, killed)
            uncovered.difference_update(corners[r])
            chosen.append(r)
            search()
            chosen.pop()
            uncovered.update(corners[r])
            for s in killed:
                alive[s] = True
                for it in corners[s]:
                    item_rows[it].add(s)

    search()
    results.sort(key=lambda d: d.key())
    return results
