"""Cubic graphs: graph6 I/O, automorphism groups, isomorphism, and the
predicates the construction pipeline gates on."""

from __future__ import annotations

from collections import deque
from importlib import resources
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, InputError, NotCubicError
from .perm import Permutation, PermGroup, _as_tuple


class CubicGraph:
    """A connected simple cubic graph on the vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted triple of neighbours of ``v``.
    """

    __slots__ = ("n", "adjacency", "name", "_aut")

    def __init__(self, adjacency: Sequence[Iterable[int]], name: str | None = None):
        adj = tuple(tuple(sorted(int(w) for w in nb)) for nb in adjacency)
        n = len(adj)
        for v, nb in enumerate(adj):
            if len(nb) != 3 or len(set(nb)) != 3:
                raise NotCubicError(f"vertex {v} has neighbours {list(nb)}; expected 3 distinct")
            for w in nb:
                if not 0 <= w < n:
                    raise InputError(f"neighbour {w} of vertex {v} out of range")
                if w == v:
                    raise InputError(f"loop at vertex {v}")
                if v not in adj[w]:
                    raise InputError(f"adjacency not symmetric between {v} and {w}")
        if n and len(_component(adj, 0)) != n:
            raise DisconnectedGraphError(f"graph on {n} vertices is disconnected")
        self.n = n
        self.adjacency = adj
        self.name = name
        self._aut = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name=None) -> "CubicGraph":
        adj = [[] for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if v in adj[u]:
                raise InputError(f"multiple edge {u}-{v}")
            adj[u].append(v)
            adj[v].append(u)
        return cls(adj, name=name)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, int, int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def __eq__(self, other):
        if not isinstance(other, CubicGraph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self):
        return hash(self.adjacency)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"CubicGraph({self.n} vertices{label})"

    def is_automorphism(self, p) -> bool:
        p = _as_tuple(p)
        return len(p) == self.n and all(
            tuple(sorted(p[w] for w in self.adjacency[v])) == self.adjacency[p[v]]
            for v in range(self.n)
        )

    def automorphism_group(self) -> PermGroup:
        if self._aut is None:
            self._aut = automorphism_group(self)
        return self._aut


def _component(adj, start):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------


def _decode_size(data: bytes):
    if not data:
        raise InputError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        if len(data) < 8:
            raise InputError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise InputError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6_edges(text: str | bytes) -> tuple[int, list[tuple[int, int]]]:
    """Decode a graph6 line into ``(n, edges)`` without any degree checks."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if any(not 63 <= c <= 126 for c in data):
        raise InputError("graph6 characters must lie in the range 63..126")
    n, offset = _decode_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise InputError(f"graph6 body has {len(body)} bytes; expected {(nbits + 5) // 6} for n={n}")
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise InputError("nonzero padding bits in graph6 body")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return n, edges


def parse_graph6(text: str | bytes, name: str | None = None) -> CubicGraph:
    n, edges = parse_graph6_edges(text)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    bad = [v for v in range(n) if deg[v] != 3]
    if bad:
        raise NotCubicError(f"not cubic: vertex {bad[0]} has degree {deg[bad[0]]}")
    return CubicGraph.from_edges(n, edges, name=name)


def _encode_size(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: CubicGraph) -> str:
    """Header-less graph6 encoding of ``g``."""
    n = g.n
    bits = []
    for j in range(1, n):
        nb = g.adjacency[j]
        for i in range(j):
            bits.append(1 if i in nb else 0)
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        chars.append(chr(v + 63))
    return _encode_size(n) + "".join(chars)


def read_corpus(path=None) -> list[tuple[str, CubicGraph]]:
    """Read a graph6 corpus file.

    Each graph line may carry a name after whitespace; a ``#`` line directly
    above it also names it. Blank lines and other comments are ignored.
    """
    if path is None:
        text = resources.files("etsurf").joinpath("data/corpus.g6").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_corpus(text)


def parse_corpus(text: str) -> list[tuple[str, CubicGraph]]:
    out = []
    pending = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            pending = None
            continue
        if line.startswith("#"):
            pending = line[1:].strip() or None
            continue
        code, _, rest = line.partition(" ")
        name = rest.strip() or pending or f"graph{len(out)}"
        pending = None
        try:
            out.append((name, parse_graph6(code, name=name)))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    return out


def corpus_lines(text: str) -> list[str]:
    return [ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


# --------------------------------------------------------------------------
# Colour refinement and the individualisation-refinement search
# --------------------------------------------------------------------------


def _refine(adj, colors):
    """Refine a colouring to the coarsest equitable one.

    Returns the new colouring (colours ``0..k-1`` ordered by signature) and a
    trace that two runs must share for their colourings to correspond.
    """
    n = len(adj)
    trace = []
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        distinct = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(distinct)}
        counts = [0] * len(distinct)
        new = []
        for s in sigs:
            r = rank[s]
            counts[r] += 1
            new.append(r)
        trace.append(tuple(zip(distinct, counts)))
        colors = new
        if len(distinct) == ncol:
            return colors, tuple(trace)
        ncol = len(distinct)


def _individualize(colors, v):
    # shift everything up so v gets a fresh colour just below its old cell
    c = colors[v]
    return [x + 1 if (x > c or (x == c and w != v)) else x for w, x in enumerate(colors)]


def _target_cell(colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best[1])):
            best = (c, cell)
    return best


class _Path:
    """The first root-to-leaf path of the search tree for one graph."""

    def __init__(self, adj):
        colors, trace = _refine(adj, [0] * len(adj))
        self.root_trace = trace
        self.nodes = []  # (colors, target colour, cell, chosen vertex, child trace)
        while True:
            tc = _target_cell(colors)
            if tc is None:
                break
            c, cell = tc
            v = cell[0]
            child, tr = _refine(adj, _individualize(colors, v))
            self.nodes.append((colors, c, cell, v, tr))
            colors = child
        self.leaf = colors


def _leaf_map(leaf_a, leaf_b):
    # vertex of colour c in a -> vertex of colour c in b
    inv_b = [0] * len(leaf_b)
    for v, c in enumerate(leaf_b):
        inv_b[c] = v
    return tuple(inv_b[c] for c in leaf_a)


def _is_iso(adj_a, adj_b, m):
    return all(
        sorted(m[w] for w in adj_a[v]) == sorted(adj_b[m[v]]) for v in range(len(adj_a))
    )


def _find_leaf(adj_a, path, level, adj_b, colors_b):
    """Search below ``colors_b`` (at ``level``) for a leaf giving an isomorphism a -> b."""
    if level == len(path.nodes):
        m = _leaf_map(path.leaf, colors_b)
        return m if _is_iso(adj_a, adj_b, m) else None
    _, c, cell, _, tr = path.nodes[level]
    cell_b = [v for v, x in enumerate(colors_b) if x == c]
    if len(cell_b) != len(cell):
        return None
    for w in cell_b:
        child, tr_b = _refine(adj_b, _individualize(colors_b, w))
        if tr_b != tr:
            continue
        m = _find_leaf(adj_a, path, level + 1, adj_b, child)
        if m is not None:
            return m
    return None


def automorphism_group(g: CubicGraph) -> PermGroup:
    """Full automorphism group by individualisation-refinement.

    Works level by level from the bottom of the first path: at level i every
    vertex of the target cell not yet in the orbit of the chosen vertex (under
    the generators found so far, all of which fix the earlier choices) is
    tried, and a successful subtree yields a new generator.
    """
    adj = g.adjacency
    path = _Path(adj)
    gens: list[tuple] = []
    for level in range(len(path.nodes) - 1, -1, -1):
        colors, c, cell, v, tr = path.nodes[level]
        orbit = _orbit(gens, v)
        for w in cell:
            if w in orbit:
                continue
            child, tr_w = _refine(adj, _individualize(colors, w))
            if tr_w != tr:
                continue
            m = _find_leaf(adj, path, level + 1, adj, child)
            if m is not None:
                gens.append(m)
                orbit = _orbit(gens, v)
    return PermGroup(gens, g.n)


def _orbit(gens, v):
    seen = {v}
    queue = [v]
    while queue:
        x = queue.pop()
        for p in gens:
            y = p[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def find_isomorphism(g1: CubicGraph, g2: CubicGraph) -> Permutation | None:
    """An isomorphism ``g1 -> g2`` as a permutation of vertex labels, or None."""
    if g1.n != g2.n:
        return None
    path = _Path(g1.adjacency)
    colors_b, tr_b = _refine(g2.adjacency, [0] * g2.n)
    if tr_b != path.root_trace:
        return None
    m = _find_leaf(g1.adjacency, path, 0, g2.adjacency, colors_b)
    return Permutation(m) if m is not None else None


def are_isomorphic(g1: CubicGraph, g2: CubicGraph) -> bool:
    return find_isomorphism(g1, g2) is not None


# --------------------------------------------------------------------------
# Predicates and relabelling
# --------------------------------------------------------------------------


def is_edge_transitive(g: CubicGraph) -> bool:
    return g.automorphism_group().is_transitive(g.edges)


def is_bipartite(g: CubicGraph) -> list[int] | None:
    """A proper 2-colouring (0/1 per vertex), or None for non-bipartite graphs."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def relabel(g: CubicGraph, p) -> CubicGraph:
    """The graph with vertex ``v`` renamed ``p(v)``."""
    p = p if isinstance(p, Permutation) else Permutation(p)
    if p.degree != g.n:
        raise InputError(f"permutation of degree {p.degree} for a graph on {g.n} vertices")
    adj = [None] * g.n
    for v in range(g.n):
        adj[p(v)] = [p(w) for w in g.adjacency[v]]
    return CubicGraph(adj, name=g.name)
