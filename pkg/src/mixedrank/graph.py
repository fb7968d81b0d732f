"""Mixed graphs: data model, structural invariants and reductions.

A mixed graph is a simple graph on vertices ``0..n-1`` in which every edge is
either undirected or an arc ``u -> v``.  Graphs are immutable; every reduction
returns a new graph with vertices relabelled to ``0..n'-1`` in ascending order
of their original ids.

Structural facts that only depend on the underlying (undirected) graph are
cached on the adjacency bitmask tuple, so scanning many orientations of the
same underlying graph pays for cycle enumeration once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from . import budgets
from .errors import (
    CycleBudgetExceeded,
    CyclesNotDisjoint,
    InvalidGraph,
    InvalidParameters,
    NotPendant,
    SearchBudgetExceeded,
    WouldCreateMultiedge,
)


class EdgeKind(enum.Enum):
    UNDIRECTED = "e"
    ARC = "a"


UNDIRECTED = EdgeKind.UNDIRECTED
ARC = EdgeKind.ARC


@dataclass(frozen=True)
class EdgeRecord:
    u: int
    v: int
    kind: EdgeKind = UNDIRECTED

    def __post_init__(self):
        if self.u == self.v:
            raise InvalidGraph(f"loop at vertex {self.u}")

    @property
    def key(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    @property
    def is_arc(self) -> bool:
        return self.kind is ARC


@dataclass(frozen=True)
class MixedGraph:
    """Vertex count plus an ordered list of edge records."""

    n: int
    edges: tuple[EdgeRecord, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraph("negative vertex count")
        edges = tuple(self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for e in edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InvalidGraph(f"edge {e.u}-{e.v} out of range for n={self.n}")
            if e.key in seen:
                raise InvalidGraph(f"duplicate edge {e.key}")
            seen.add(e.key)

    @classmethod
    def from_edges(
        cls,
        n: int,
        undirected: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> MixedGraph:
        recs = [EdgeRecord(u, v, UNDIRECTED) for u, v in undirected]
        recs += [EdgeRecord(u, v, ARC) for u, v in arcs]
        return cls(n, tuple(recs))

    # -- derived views -------------------------------------------------

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Underlying adjacency as one neighbour bitmask per vertex."""
        masks = [0] * self.n
        for e in self.edges:
            masks[e.u] |= 1 << e.v
            masks[e.v] |= 1 << e.u
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e.key: i for i, e in enumerate(self.edges)}

    @property
    def m_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_oriented(self) -> bool:
        return all(e.is_arc for e in self.edges)

    def normalized(self) -> MixedGraph:
        """Edges sorted by their unordered pair, arcs kept as ordered pairs."""
        return MixedGraph(self.n, tuple(sorted(self.edges, key=lambda e: e.key)))

    def underlying(self) -> MixedGraph:
        return MixedGraph(self.n, tuple(EdgeRecord(*e.key) for e in self.edges))

    def induced(self, keep: Iterable[int]) -> tuple[MixedGraph, tuple[int, ...]]:
        """Induced subgraph on ``keep`` and the map new id -> old id."""
        vmap = tuple(sorted(set(keep)))
        new_id = {v: i for i, v in enumerate(vmap)}
        recs = tuple(
            EdgeRecord(new_id[e.u], new_id[e.v], e.kind)
            for e in self.edges
            if e.u in new_id and e.v in new_id
        )
        return MixedGraph(len(vmap), recs), vmap

    def delete(self, drop: Iterable[int]) -> MixedGraph:
        drop = set(drop)
        return self.induced(v for v in range(self.n) if v not in drop)[0]

    def with_orientation(self, states: Sequence[str]) -> MixedGraph:
        """Re-orient each edge: ``'e'`` undirected, ``'f'`` arc u->v, ``'b'`` arc v->u."""
        if len(states) != len(self.edges):
            raise InvalidParameters("one orientation state per edge required")
        recs = []
        for e, s in zip(self.edges, states):
            if s == "e":
                recs.append(EdgeRecord(e.u, e.v, UNDIRECTED))
            elif s == "f":
                recs.append(EdgeRecord(e.u, e.v, ARC))
            elif s == "b":
                recs.append(EdgeRecord(e.v, e.u, ARC))
            else:
                raise InvalidParameters(f"unknown orientation state {s!r}")
        return MixedGraph(self.n, tuple(recs))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- cycles ------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """A simple cycle of the underlying graph with its arc bookkeeping.

    ``forward`` and ``backward`` count arcs that agree / disagree with the
    traversal ``vertices[0] -> vertices[1] -> ...``.
    """

    vertices: tuple[int, ...]
    edge_refs: tuple[int, ...]
    forward: int
    backward: int

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def sigma(self) -> int:
        return abs(self.forward - self.backward)

    @property
    def net(self) -> int:
        """Signed arc balance ``forward - backward`` for the stored traversal."""
        return self.forward - self.backward

    @property
    def vertex_mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    @property
    def is_even(self) -> bool:
        return len(self.vertices) % 2 == 0

    def congruent(self) -> bool:
        """True when ``sigma == length (mod 4)``."""
        return (self.sigma - self.length) % 4 == 0

    def reversed(self) -> Cycle:
        vs = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
        refs = tuple(reversed(self.edge_refs))
        return Cycle(vs, refs, self.backward, self.forward)


def _enumerate_cycle_vertices(adj: tuple[int, ...], cap: int) -> tuple[tuple[int, ...], ...]:
    n = len(adj)
    found: list[tuple[int, ...]] = []
    path: list[int] = []

    def dfs(s: int, v: int, visited: int, allowed: int) -> None:
        nb = adj[v]
        if len(path) >= 3 and nb >> s & 1 and path[1] < v:
            found.append(tuple(path))
            if len(found) > cap:
                raise CycleBudgetExceeded("simple cycle enumeration", cap)
        rest = nb & allowed & ~visited
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            rest ^= low
            path.append(w)
            dfs(s, w, visited | low, allowed)
            path.pop()

    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        # a vertex with fewer than two neighbours above s cannot start a cycle
        if (adj[s] & allowed).bit_count() < 2:
            continue
        path.append(s)
        dfs(s, s, 1 << s, allowed)
        path.pop()
    return tuple(found)


@lru_cache(maxsize=1 << 16)
def _cycle_vertices_cached(adj: tuple[int, ...], cap: int) -> tuple[tuple[int, ...], ...]:
    return _enumerate_cycle_vertices(adj, cap)


def cycle_vertex_tuples(adj: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All simple cycles of the underlying graph as canonical vertex tuples.

    Each cycle starts at its smallest vertex and its second vertex is smaller
    than its last, so every cycle appears exactly once.
    """
    cap = budgets.cycle_cap()
    cyc = _cycle_vertices_cached(adj, cap)
    return cyc


def make_cycle(g: MixedGraph, vertices: Sequence[int]) -> Cycle:
    idx = g.edge_index
    refs = []
    f = b = 0
    q = len(vertices)
    for k in range(q):
        a, c = vertices[k], vertices[(k + 1) % q]
        i = idx[(a, c) if a < c else (c, a)]
        refs.append(i)
        e = g.edges[i]
        if e.kind is ARC:
            if e.u == a:
                f += 1
            else:
                b += 1
    return Cycle(tuple(vertices), tuple(refs), f, b)


def cycles(g: MixedGraph) -> list[Cycle]:
    return [make_cycle(g, vs) for vs in cycle_vertex_tuples(g.adj)]


def signature(g: MixedGraph, cyc: Cycle) -> int:
    """``|f - b|`` recomputed from ``g`` for the traversal stored in ``cyc``."""
    return make_cycle(g, cyc.vertices).sigma


# -- components and summary -------------------------------------------------


def component_masks(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def components(g: MixedGraph) -> list[tuple[MixedGraph, tuple[int, ...]]]:
    return [g.induced(_bits(mask)) for mask in component_masks(g.adj)]


def cyclomatic_number(g: MixedGraph) -> int:
    return len(g.edges) - g.n + len(component_masks(g.adj))


@dataclass(frozen=True)
class StructureSummary:
    omega: int
    c: int
    kappa: int
    cycles: tuple[Cycle, ...]
    pendant_vertices: tuple[int, ...]
    pendant_cycles: tuple[Cycle, ...]


def pendant_vertices(g: MixedGraph) -> list[int]:
    return [v for v in range(g.n) if g.adj[v].bit_count() == 1]


def _is_pendant_cycle(adj: Sequence[int], vs: Sequence[int]) -> bool:
    deg3 = 0
    for v in vs:
        d = adj[v].bit_count()
        if d == 3:
            deg3 += 1
        elif d != 2:
            return False
    return deg3 == 1


def pendant_cycles(g: MixedGraph) -> list[Cycle]:
    """Cycles with exactly one host vertex of degree 3, all others of degree 2."""
    return [
        make_cycle(g, vs) for vs in cycle_vertex_tuples(g.adj) if _is_pendant_cycle(g.adj, vs)
    ]


def structure_summary(g: MixedGraph) -> StructureSummary:
    cyc = tuple(cycles(g))
    omega = len(component_masks(g.adj))
    return StructureSummary(
        omega=omega,
        c=len(g.edges) - g.n + omega,
        kappa=sum(1 for c in cyc if c.is_even),
        cycles=cyc,
        pendant_vertices=tuple(pendant_vertices(g)),
        pendant_cycles=tuple(c for c in cyc if _is_pendant_cycle(g.adj, c.vertices)),
    )


def even_cycle_count(g: MixedGraph) -> int:
    return sum(1 for vs in cycle_vertex_tuples(g.adj) if len(vs) % 2 == 0)


def _pairwise_disjoint(masks: Sequence[int]) -> bool:
    acc = 0
    for m in masks:
        if acc & m:
            return False
        acc |= m
    return True


@lru_cache(maxsize=1 << 16)
def _disjoint_cached(adj: tuple[int, ...], even_only: bool) -> bool:
    masks = []
    for vs in cycle_vertex_tuples(adj):
        if even_only and len(vs) % 2:
            continue
        m = 0
        for v in vs:
            m |= 1 << v
        masks.append(m)
    return _pairwise_disjoint(masks)


def cycles_pairwise_disjoint(g: MixedGraph, even_only: bool = False) -> bool:
    return _disjoint_cached(g.adj, even_only)


def is_bipartite(g: MixedGraph) -> bool:
    return _bipartite_cached(g.adj)


@lru_cache(maxsize=1 << 16)
def _bipartite_cached(adj: tuple[int, ...]) -> bool:
    n = len(adj)
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in _bits(adj[v]):
                if side[w] < 0:
                    side[w] = side[v] ^ 1
                    stack.append(w)
                elif side[w] == side[v]:
                    return False
    return True


# -- reductions ---------------------------------------------------------------


def pendant_k2_delete(g: MixedGraph, x: int) -> MixedGraph:
    """Remove the pendant vertex ``x`` together with its unique neighbour."""
    if not 0 <= x < g.n or g.degree(x) != 1:
        raise NotPendant(f"vertex {x} is not pendant")
    y = g.neighbors(x)[0]
    return g.delete((x, y))


def _crucial_masks(adj: tuple[int, ...], start: int, cap: int) -> frozenset[int]:
    seen = {start}
    stack = [start]
    terminal = set()
    while stack:
        alive = stack.pop()
        moved = False
        for v in _bits(alive):
            nb = adj[v] & alive
            if nb and nb & (nb - 1) == 0:
                moved = True
                nxt = alive & ~((1 << v) | nb)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise SearchBudgetExceeded("crucial subgraph search", cap)
                    stack.append(nxt)
        if not moved:
            terminal.add(alive)
    return frozenset(terminal)


@lru_cache(maxsize=1 << 16)
def _crucial_cached(adj: tuple[int, ...], start: int, cap: int) -> frozenset[int]:
    return _crucial_masks(adj, start, cap)


def crucial_vertex_sets(g: MixedGraph) -> frozenset[int]:
    """Vertex bitmasks of every pendant-free graph reachable by pendant K2 deletions.

    Labelled: two different vertex sets are both reported even when the
    induced subgraphs are isomorphic.
    """
    return _crucial_cached(g.adj, (1 << g.n) - 1, budgets.search_cap())


def crucial_subgraphs(g: MixedGraph) -> list[MixedGraph]:
    """Crucial subgraphs of ``g``, one representative per isomorphism class."""
    reps: dict[tuple, MixedGraph] = {}
    for mask in sorted(crucial_vertex_sets(g)):
        h = g.induced(_bits(mask))[0]
        reps.setdefault(canonical_form(h), h)
    return [reps[k] for k in sorted(reps)]


@dataclass(frozen=True)
class Contraction:
    tree: MixedGraph
    bracket: MixedGraph
    cyclic_vertices: tuple[int, ...]
    # original vertex -> vertex of ``tree``
    vertex_map: tuple[int, ...] = field(repr=False, default=())


def contract_cycles(g: MixedGraph) -> Contraction:
    """Contract every cycle of a cycle-disjoint graph into a single cyclic vertex.

    Non-cyclic vertices keep their relative order and come first; the cyclic
    vertices follow in the order the cycles are enumerated.
    """
    cyc = cycle_vertex_tuples(g.adj)
    masks = [sum(1 << v for v in vs) for vs in cyc]
    if not _pairwise_disjoint(masks):
        raise CyclesNotDisjoint("cycles share a vertex")
    on_cycle = {}
    for k, vs in enumerate(cyc):
        for v in vs:
            on_cycle[v] = k
    plain = [v for v in range(g.n) if v not in on_cycle]
    new_id = {v: i for i, v in enumerate(plain)}
    cyclic_ids = tuple(len(plain) + k for k in range(len(cyc)))
    vmap = tuple(new_id[v] if v in new_id else cyclic_ids[on_cycle[v]] for v in range(g.n))
    recs = []
    for e in g.edges:
        a, b = vmap[e.u], vmap[e.v]
        if a == b:
            continue
        recs.append(EdgeRecord(a, b, e.kind))
    tree = MixedGraph(len(plain) + len(cyc), tuple(recs))
    bracket = tree.delete(cyclic_ids)
    return Contraction(tree, bracket, cyclic_ids, vmap)


# -- constructors ---------------------------------------------------------------


def _apply_orientation(n: int, pairs: list[tuple[int, int]], spec) -> MixedGraph:
    base = MixedGraph(n, tuple(EdgeRecord(u, v) for u, v in pairs))
    if spec is None:
        return base
    return base.with_orientation(spec)


def construct_infinity(p: int, l: int, q: int, orientation=None) -> MixedGraph:
    """Cycles ``C_p`` and ``C_q`` joined by a path on ``l`` vertices.

    With ``l == 1`` the two cycles share vertex 0.  Edge order: the ``C_p``
    edges ``(i, i+1)``, then the path edges, then the ``C_q`` edges starting
    at the path end.  ``orientation`` is an optional per-edge string over
    ``'e'``/``'f'``/``'b'``.
    """
    if p < 3 or q < 3 or l < 1:
        raise InvalidParameters("infinity graph needs p, q >= 3 and l >= 1")
    pairs = [(i, (i + 1) % p) for i in range(p)]
    prev = 0
    nxt = p
    for _ in range(l - 1):
        pairs.append((prev, nxt))
        prev = nxt
        nxt += 1
    u = prev
    ring = [u] + list(range(nxt, nxt + q - 1))
    pairs += [(ring[i], ring[(i + 1) % q]) for i in range(q)]
    n = nxt + q - 1
    return _apply_orientation(n, pairs, orientation)


def construct_theta(p: int, l: int, q: int, orientation=None) -> MixedGraph:
    """Three internally disjoint paths on ``p``, ``l`` and ``q`` vertices between hubs 0 and 1."""
    if min(p, l, q) < 2 or [p, l, q].count(2) > 1:
        raise InvalidParameters("theta graph needs min(p,l,q) >= 2 with at most one equal to 2")
    pairs = []
    nxt = 2
    for k in (p, l, q):
        prev = 0
        for _ in range(k - 2):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
        pairs.append((prev, 1))
    return _apply_orientation(nxt, pairs, orientation)


def construct_cycle(q: int, orientation=None) -> MixedGraph:
    if q < 3:
        raise InvalidParameters("cycle needs at least 3 vertices")
    return _apply_orientation(q, [(i, (i + 1) % q) for i in range(q)], orientation)


def construct_path(k: int, orientation=None) -> MixedGraph:
    """Path on ``k`` vertices."""
    if k < 1:
        raise InvalidParameters("path needs at least one vertex")
    return _apply_orientation(k, [(i, i + 1) for i in range(k - 1)], orientation)


def disjoint_union(*gs: MixedGraph) -> MixedGraph:
    recs = []
    off = 0
    for g in gs:
        recs += [EdgeRecord(e.u + off, e.v + off, e.kind) for e in g.edges]
        off += g.n
    return MixedGraph(off, tuple(recs))


def identify_vertex(h: MixedGraph, x_h: int, c: MixedGraph, x_c: int) -> MixedGraph:
    """Coalescence: glue vertex ``x_c`` of ``c`` onto vertex ``x_h`` of ``h``.

    Vertices of ``h`` keep their ids; the other vertices of ``c`` follow in
    order.
    """
    if not (0 <= x_h < h.n and 0 <= x_c < c.n):
        raise InvalidParameters("identified vertex out of range")
    other = [v for v in range(c.n) if v != x_c]
    cmap = {x_c: x_h}
    cmap.update({v: h.n + i for i, v in enumerate(other)})
    recs = list(h.edges)
    keys = {e.key for e in h.edges}
    for e in c.edges:
        r = EdgeRecord(cmap[e.u], cmap[e.v], e.kind)
        if r.key in keys:
            raise WouldCreateMultiedge(f"edge {r.key} present in both graphs")
        keys.add(r.key)
        recs.append(r)
    return MixedGraph(h.n + c.n - 1, tuple(recs))


# -- canonical form -------------------------------------------------------------


def _relations(g: MixedGraph) -> list[dict[int, int]]:
    # 0 undirected, 1 arc v->w, 2 arc w->v
    rel: list[dict[int, int]] = [dict() for _ in range(g.n)]
    for e in g.edges:
        if e.kind is ARC:
            rel[e.u][e.v] = 1
            rel[e.v][e.u] = 2
        else:
            rel[e.u][e.v] = 0
            rel[e.v][e.u] = 0
    return rel


def _refine(rel: list[dict[int, int]], colors: list[int]) -> list[int]:
    n = len(colors)
    ncol = len(set(colors))
    while True:
        sig = [
            (colors[v], tuple(sorted((r, colors[w]) for w, r in rel[v].items())))
            for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        k = len(order)
        colors = new
        if k == ncol:
            return colors
        ncol = k


def _twins(rel: list[dict[int, int]], v: int, w: int) -> bool:
    r = rel[v].get(w)
    if r is not None and r != 0:
        return False
    a = {z: t for z, t in rel[v].items() if z != w}
    b = {z: t for z, t in rel[w].items() if z != v}
    return a == b


def canonical_form(g: MixedGraph) -> tuple:
    """Isomorphism-invariant encoding of a mixed graph.

    Individualisation-refinement: colour refinement on (relation, colour)
    multisets, branching on the first smallest non-singleton cell and skipping
    vertices that are twins of an already explored one.  The result is the
    lexicographically least edge encoding over the search-tree leaves.
    """
    rel = _relations(g)
    n = g.n
    best: list = [None]

    def encode(colors: list[int]) -> tuple:
        out = []
        for e in g.edges:
            a, b = colors[e.u], colors[e.v]
            if e.kind is ARC:
                code = 1 if a < b else 2
            else:
                code = 0
            out.append((a, b, code) if a < b else (b, a, code))
        out.sort()
        return tuple(out)

    def search(colors: list[int]) -> None:
        colors = _refine(rel, colors)
        cells: dict[int, list[int]] = {}
        for v, col in enumerate(colors):
            cells.setdefault(col, []).append(v)
        target = None
        for col in sorted(cells):
            cell = cells[col]
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            enc = encode(colors)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        tried: list[int] = []
        for v in target:
            if any(_twins(rel, v, t) for t in tried):
                continue
            tried.append(v)
            search([2 * c + (0 if w == v else 1) for w, c in enumerate(colors)])

    if n == 0:
        return (0, ())
    init = [0] * n
    search(init)
    return (n, best[0])


def iter_bits(mask: int) -> Iterator[int]:
    yield from _bits(mask)
