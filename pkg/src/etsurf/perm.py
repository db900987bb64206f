"""Permutations and permutation groups on the points ``0..n-1``.

Permutations are stored as image tuples. Composition follows the usual
function convention: ``compose(p, q)(x) == p(q(x))``, so ``q`` acts first.

Groups keep their generators and build a base and strong generating set
(Schreier-Sims) on demand. Everything the construction pipeline needs sits
on top of that chain: orders, membership, element enumeration, orbits,
stabilisers found by backtracking, and subgroups of a given order up to
conjugacy.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CeilingExceeded, InputError

DEFAULT_MAX_ORDER = 10**5


def _mul(p, q):
    return tuple([p[i] for i in q])


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _is_perm(images) -> bool:
    n = len(images)
    seen = [False] * n
    for j in images:
        if not 0 <= j < n or seen[j]:
            return False
        seen[j] = True
    return True


class Permutation:
    """A bijection of ``{0, ..., n-1}`` given by its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not _is_perm(images):
            raise InputError(f"not a permutation: {list(images)}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen or not 0 <= x < n:
                    raise InputError(f"bad cycle {tuple(cyc)} for degree {n}")
                seen.add(x)
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, the permutation ``x -> p(q(x))``."""
    if p.degree != q.degree:
        raise InputError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(_mul(p.images, q.images))


def _as_tuple(g) -> tuple:
    return g.images if isinstance(g, Permutation) else tuple(g)


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def _cycle_edges(seq) -> frozenset:
    m = len(seq)
    return frozenset(_edge(seq[i], seq[(i + 1) % m]) for i in range(m))


def _image_edges(g, edges) -> frozenset:
    return frozenset(_edge(g[u], g[v]) for u, v in edges)


# --------------------------------------------------------------------------
# Stabiliser chain
# --------------------------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "trans")

    def __init__(self, point, identity):
        self.point = point
        self.gens = []
        self.trans = {point: identity}


def _pick_base_point(g) -> int:
    # largest cycle of the residue first; shallow chains on transitive actions
    best, best_len = None, 0
    seen = set()
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        length = 0
        j = i
        while j not in seen:
            seen.add(j)
            length += 1
            j = g[j]
        if length > best_len:
            best, best_len = i, length
    return best


class _Chain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, degree: int, gens, base: Sequence[int] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = [_Level(b, self.identity) for b in base]
        for g in gens:
            self._insert(0, g)

    def _strong_from(self, k):
        out = []
        for lev in self.levels[k:]:
            out.extend(lev.gens)
        return out

    def sift(self, g, start=0):
        """Return ``(residue, level)`` after sifting ``g`` from ``start``."""
        k = start
        while k < len(self.levels):
            lev = self.levels[k]
            u = lev.trans.get(g[lev.point])
            if u is None:
                return g, k
            g = _mul(_inv(u), g)
            k += 1
        return g, k

    def _insert(self, k, g):
        g, k = self.sift(g, k)
        if g == self.identity:
            return
        if k == len(self.levels):
            self.levels.append(_Level(_pick_base_point(g), self.identity))
        self.levels[k].gens.append(g)
        for j in range(k, -1, -1):
            self._close(j, g)

    def _close(self, k, new_gen):
        lev = self.levels[k]
        queue = deque(_mul(new_gen, t) for t in list(lev.trans.values()))
        while queue:
            h = queue.popleft()
            j = h[lev.point]
            u = lev.trans.get(j)
            if u is None:
                lev.trans[j] = h
                queue.extend(_mul(s, h) for s in self._strong_from(k))
            else:
                r = _mul(_inv(u), h)
                if r != self.identity:
                    self._insert(k + 1, r)

    @property
    def base(self):
        return [lev.point for lev in self.levels]

    def order(self) -> int:
        return math.prod(len(lev.trans) for lev in self.levels)

    def contains(self, g) -> bool:
        res, _ = self.sift(g)
        return res == self.identity

    def elements(self):
        out = []

        def rec(k, p):
            if k == len(self.levels):
                out.append(p)
                return
            for u in self.levels[k].trans.values():
                rec(k + 1, _mul(p, u))

        rec(0, self.identity)
        return out


# --------------------------------------------------------------------------
# Groups
# --------------------------------------------------------------------------


class PermGroup:
    """Permutation group given by generators on ``degree`` points."""

    def __init__(self, generators: Iterable = (), degree: int | None = None):
        gens = []
        seen = set()
        for g in generators:
            t = _as_tuple(g)
            if degree is None:
                degree = len(t)
            if len(t) != degree:
                raise InputError(f"generator of degree {len(t)} in group of degree {degree}")
            if not _is_perm(t):
                raise InputError(f"not a permutation: {list(t)}")
            if t != tuple(range(degree)) and t not in seen:
                seen.add(t)
                gens.append(t)
        if degree is None:
            raise InputError("degree required for a group without generators")
        self.degree = degree
        self._gens = gens
        self._chain: _Chain | None = None
        self._elements = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls((), degree)

    @classmethod
    def symmetric(cls, degree: int) -> "PermGroup":
        if degree < 2:
            return cls.trivial(degree)
        gens = [Permutation.from_cycles(degree, [(0, 1)])]
        if degree > 2:
            gens.append(Permutation.from_cycles(degree, [tuple(range(degree))]))
        return cls(gens, degree)

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation(g) for g in self._gens]

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, self._gens)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def contains(self, g) -> bool:
        t = _as_tuple(g)
        return len(t) == self.degree and self.chain.contains(t)

    __contains__ = contains

    def elements(self) -> list[tuple]:
        """All elements as image tuples, in a fixed order."""
        if self._elements is None:
            self._elements = self.chain.elements()
        return self._elements

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self._gens)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self._gens)})"

    # -- actions ------------------------------------------------------------

    def orbit(self, x):
        """Orbit of a point (int) or an edge (pair of points, acted on setwise)."""
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.degree:
                raise InputError(f"point {x} outside degree {self.degree}")
            act = lambda g, y: g[y]
        else:
            u, v = x
            if not (0 <= u < self.degree and 0 <= v < self.degree) or u == v:
                raise InputError(f"bad edge {x}")
            x = _edge(u, v)
            act = lambda g, e: _edge(g[e[0]], g[e[1]])
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in self._gens:
                z = act(g, y)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return seen

    def orbits(self, domain: Iterable | None = None) -> list[list]:
        """Orbits on ``domain`` (points by default), each sorted, in sorted order."""
        if domain is None:
            domain = range(self.degree)
        remaining = set(domain)
        out = []
        for x in sorted(remaining):
            if x not in remaining:
                continue
            orb = self.orbit(x)
            if not orb <= remaining:
                raise InputError("domain is not closed under the group")
            remaining -= orb
            out.append(sorted(orb))
        return out

    def is_transitive(self, domain: Iterable | None = None) -> bool:
        if domain is None:
            domain = range(self.degree)
        domain = set(domain)
        if not domain:
            raise InputError("empty domain")
        return len(self.orbits(domain)) == 1

    # -- stabilisers --------------------------------------------------------

    def _search(self, base, depth, prune, accept) -> "PermGroup":
        """Backtrack over the chain built on ``base``.

        ``prune(k, p)`` sees the partial product after choosing the image of
        the k-th base point and returns False to cut the branch. Leaves at
        ``depth`` are kept when ``accept(p)`` holds. When ``depth`` is less
        than the chain length the pointwise stabiliser of the first
        ``depth`` base points is added wholesale, so callers must only pass
        a short depth when the property depends on those points alone.
        """
        chain = _Chain(self.degree, self._gens, base)
        if depth is None:
            depth = len(chain.levels)
        found = []
        sub = _Chain(self.degree, chain._strong_from(depth))

        def rec(k, p):
            if k == depth:
                if accept(p) and not sub.contains(p):
                    found.append(p)
                    sub._insert(0, p)
                return
            for u in chain.levels[k].trans.values():
                q = _mul(p, u)
                if prune(k, q, chain.levels[k].point):
                    rec(k + 1, q)

        rec(0, chain.identity)
        return PermGroup(sub._strong_from(0), self.degree)

    def point_stabilizer(self, x: int) -> "PermGroup":
        return self._search([x], 1, lambda k, p, b: p[b] == b, lambda p: True)

    def set_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        pts = sorted(set(points))
        s = set(pts)
        return self._search(pts, len(pts), lambda k, p, b: p[b] in s, lambda p: True)

    def edge_stabilizer(self, edge) -> "PermGroup":
        u, v = edge
        return self.set_stabilizer((u, v))

    def cycle_set_stabilizer(self, cycles: Iterable[Sequence[int]]) -> "PermGroup":
        """Elements permuting a family of cycles, each taken as its edge set."""
        cycles = [tuple(c) for c in cycles]
        edge_sets = [_cycle_edges(c) for c in cycles]
        target = frozenset(edge_sets)
        through = [[] for _ in range(self.degree)]
        for i, c in enumerate(cycles):
            for x in c:
                through[x].append(i)
        sig = [tuple(sorted(len(cycles[i]) for i in through[x])) for x in range(self.degree)]

        def shared(x, y):
            return len(set(through[x]) & set(through[y]))

        fixed = []

        def prune(k, p, b):
            del fixed[k:]
            if sig[p[b]] != sig[b]:
                return False
            for a in fixed:
                if shared(a, b) != shared(p[a], p[b]):
                    return False
            fixed.append(b)
            return True

        def accept(p):
            return all(_image_edges(p, es) in target for es in edge_sets)

        return self._search([], None, prune, accept)

    def stabilizer(self, target) -> "PermGroup":
        """Stabiliser of a point, an edge (2-tuple of points), or a family of cycles."""
        if isinstance(target, (int, np.integer)):
            if not 0 <= target < self.degree:
                raise InputError(f"point {target} outside degree {self.degree}")
            return self.point_stabilizer(int(target))
        target = list(target)
        if len(target) == 2 and all(isinstance(x, (int, np.integer)) for x in target):
            return self.edge_stabilizer(target)
        return self.cycle_set_stabilizer(target)


# --------------------------------------------------------------------------
# Subgroups up to conjugacy
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubgroupRep:
    """A subgroup together with the ambient group it was found in."""

    group: PermGroup
    parent: PermGroup

    def order(self) -> int:
        return self.group.order()


class _ElementTable:
    """Index-based arithmetic over a fully enumerated group."""

    def __init__(self, group: PermGroup):
        elems = sorted(group.elements())
        self.elems = elems
        self.array = np.array(elems, dtype=np.int32).reshape(len(elems), group.degree)
        self.index = {e: i for i, e in enumerate(elems)}
        self._by_bytes = {row.tobytes(): i for i, row in enumerate(self.array)}
        self._right = {}
        self.inverse = [self.index[_inv(e)] for e in elems]
        self.orders = [Permutation(e).order() for e in elems]

    def _lookup(self, arr):
        return [self._by_bytes[row.tobytes()] for row in np.ascontiguousarray(arr)]

    def right(self, s):
        """Column ``x -> x * s`` (apply s first) as an index list."""
        col = self._right.get(s)
        if col is None:
            col = self._lookup(self.array[:, self.array[s]])
            self._right[s] = col
        return col

    def conjugate(self, g, members) -> frozenset:
        """Indices of ``g m g^-1`` for m in members."""
        ginv = self.array[self.inverse[g]]
        sub = self.array[list(members)][:, ginv]
        return frozenset(self._lookup(self.array[g][sub]))

    def closure(self, gens, start, limit):
        """Subgroup generated by ``start`` (a subgroup) and ``gens``; None past limit."""
        members = set(start)
        queue = deque(members) if start else deque([0])
        members.add(0)
        cols = [self.right(s) for s in gens]
        while queue:
            x = queue.popleft()
            for col in cols:
                y = col[x]
                if y not in members:
                    members.add(y)
                    if len(members) > limit:
                        return None
                    queue.append(y)
        return frozenset(members)


class _Lattice:
    """Conjugacy classes of subgroups whose orders divide a target set."""

    def __init__(self, group: PermGroup, wanted: Sequence[int]):
        self.group = group
        self.table = _ElementTable(group)
        n = len(self.table.elems)
        self.wanted = sorted(set(wanted))
        ok = lambda m: any(k % m == 0 for k in self.wanted)
        t = self.table
        identity = t.index[tuple(range(group.degree))]
        assert identity == 0
        self.classes: list[tuple[frozenset, list[int]]] = []
        seen: set[frozenset] = set()
        limit = max(self.wanted)

        def register(members, gens):
            if members in seen:
                return
            for g in range(n):
                seen.add(t.conjugate(g, members))
            self.classes.append((members, gens))

        register(frozenset([0]), [])
        i = 0
        while i < len(self.classes):
            members, gens = self.classes[i]
            i += 1
            covered = set(members)
            for g in range(n):
                if g in covered or not ok(t.orders[g]):
                    continue
                # <H, g> is unchanged along the double coset HgH
                right_g = t.right(g)
                for x in [right_g[m] for m in members]:
                    covered.update(t.right(h)[x] for h in members)
                new = t.closure(gens + [g], members, limit)
                if new is None or not ok(len(new)) or new in seen:
                    continue
                register(new, gens + [g])

    def of_order(self, k: int) -> list[PermGroup]:
        out = []
        for members, gens in self.classes:
            if len(members) == k:
                out.append((sorted(members), gens))
        out.sort()
        t = self.table
        return [PermGroup([t.elems[g] for g in gens], self.group.degree) for _, gens in out]


_LATTICE_CACHE: dict[int, tuple[PermGroup, _Lattice]] = {}


def subgroups_of_order(
    group: PermGroup, k: int, max_order: int = DEFAULT_MAX_ORDER
) -> list[SubgroupRep]:
    """One representative per conjugacy class of subgroups of order ``k``.

    Subgroups are grown from the trivial group by adjoining one element at a
    time, keeping only subgroups whose order divides ``k``; every subgroup of
    order ``k`` is reached through such a chain, so the walk is complete.
    """
    n = group.order()
    if k <= 0 or n % k:
        raise InputError(f"{k} does not divide the group order {n}")
    if n > max_order:
        raise CeilingExceeded(f"group order {n} exceeds ceiling {max_order}")
    if k == n:
        return [SubgroupRep(group, group)]
    if k == 1:
        return [SubgroupRep(PermGroup.trivial(group.degree), group)]
    cached = _LATTICE_CACHE.get(id(group))
    if cached is None or cached[0] is not group or k not in cached[1].wanted:
        wanted = [k]
        if cached is not None and cached[0] is group:
            wanted += cached[1].wanted
        lattice = _Lattice(group, wanted)
        _LATTICE_CACHE.clear()
        _LATTICE_CACHE[id(group)] = (group, lattice)
    else:
        lattice = cached[1]
    return [SubgroupRep(h, group) for h in lattice.of_order(k)]


def prepare_subgroup_orders(group: PermGroup, orders: Iterable[int], max_order=DEFAULT_MAX_ORDER):
    """Walk the lattice once for several target orders (a cache warm-up)."""
    n = group.order()
    if n > max_order:
        raise CeilingExceeded(f"group order {n} exceeds ceiling {max_order}")
    wanted = [k for k in orders if 1 < k < n and n % k == 0]
    if wanted:
        _LATTICE_CACHE.clear()
        _LATTICE_CACHE[id(group)] = (group, _Lattice(group, wanted))


def conjugate_subgroups(group: PermGroup, a, b) -> bool:
    """True iff some element of ``group`` conjugates ``a`` onto ``b``."""
    a = a.group if isinstance(a, SubgroupRep) else a
    b = b.group if isinstance(b, SubgroupRep) else b
    if a.order() != b.order():
        return False
    gens = a._gens
    for g in group.elements():
        gi = _inv(g)
        if all(b.contains(_mul(_mul(g, x), gi)) for x in gens):
            return True
    return False


def subgroup_orbit_count(group: PermGroup, domain: Iterable, act: Callable) -> int:
    """Number of orbits of ``group`` on ``domain`` under ``act(g, x)``."""
    remaining = set(domain)
    count = 0
    while remaining:
        x = remaining.pop()
        queue = deque([x])
        count += 1
        while queue:
            y = queue.popleft()
            for g in group._gens:
                z = act(g, y)
                if z in remaining:
                    remaining.remove(z)
                    queue.append(z)
    return count
