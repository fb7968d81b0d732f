from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedrank import (
    ARC,
    EdgeRecord,
    MixedGraph,
    canonical_form,
    components,
    construct_cycle,
    construct_infinity,
    construct_path,
    construct_theta,
    contract_cycles,
    crucial_subgraphs,
    cycles,
    cycles_pairwise_disjoint,
    disjoint_union,
    identify_vertex,
    pendant_cycles,
    pendant_k2_delete,
    signature,
    structure_summary,
)
from mixedrank.errors import (
    CycleBudgetExceeded,
    CyclesNotDisjoint,
    InvalidGraph,
    InvalidParameters,
    NotPendant,
    SearchBudgetExceeded,
)
from mixedrank.graph import cyclomatic_number

from conftest import mixed_graphs, rand_graph


def c4_with_tail(tail: int) -> MixedGraph:
    """C4 on 0..3 with a path of ``tail`` extra vertices hanging from vertex 0."""
    pairs = [(0, 1), (1, 2), (2, 3), (3, 0)]
    prev = 0
    for k in range(tail):
        pairs.append((prev, 4 + k))
        prev = 4 + k
    return MixedGraph.from_edges(4 + tail, pairs)


def iso(a: MixedGraph, b: MixedGraph) -> bool:
    return canonical_form(a) == canonical_form(b)


# -- data model ---------------------------------------------------------------


def test_rejects_loops_duplicates_and_range():
    with pytest.raises(InvalidGraph):
        EdgeRecord(1, 1)
    with pytest.raises(InvalidGraph):
        MixedGraph.from_edges(3, [(0, 1)], [(1, 0)])
    with pytest.raises(InvalidGraph):
        MixedGraph.from_edges(2, [(0, 2)])


def test_components_examples():
    tri = construct_cycle(3)
    comps = components(disjoint_union(tri, tri))
    assert [c.n for c, _ in comps] == [3, 3]
    assert sorted(v for _, vm in comps for v in vm) == list(range(6))
    assert [c.n for c, _ in components(MixedGraph(4))] == [1, 1, 1, 1]
    assert [c.n for c, _ in components(construct_infinity(4, 1, 3))] == [6]


@settings(max_examples=60, deadline=None)
@given(mixed_graphs(max_n=8))
def test_components_partition(g):
    comps = components(g)
    seen = [v for _, vm in comps for v in vm]
    assert sorted(seen) == list(range(g.n))
    for comp, vm in comps:
        assert len(components(comp)) == 1
        assert len(set(vm)) == len(vm)


# -- structure summary ---------------------------------------------------------


def test_summary_examples():
    s = structure_summary(construct_cycle(4))
    assert (s.omega, s.c, s.kappa) == (1, 1, 1)
    assert [c.length for c in s.cycles] == [4]

    s = structure_summary(construct_theta(2, 3, 3))
    assert s.c == 2 and s.kappa == 1
    assert sorted(c.length for c in s.cycles) == [3, 3, 4]

    s = structure_summary(construct_path(5))
    assert (s.c, s.kappa) == (0, 0)
    assert len(s.pendant_vertices) == 2


def brute_cycles(g: MixedGraph) -> set[frozenset]:
    """Every simple cycle as its edge set, by trying all vertex orders of every subset."""
    out = set()
    for k in range(3, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            s, rest = sub[0], sub[1:]
            for perm in itertools.permutations(rest):
                walk = (s,) + perm
                if all(g.has_edge(walk[i], walk[(i + 1) % k]) for i in range(k)):
                    out.add(
                        frozenset(
                            frozenset((walk[i], walk[(i + 1) % k])) for i in range(k)
                        )
                    )
    return out


@settings(max_examples=60, deadline=None)
@given(mixed_graphs(max_n=7))
def test_cycles_match_brute_force(g):
    ours = cycles(g)
    as_sets = [
        frozenset(frozenset((c.vertices[i], c.vertices[(i + 1) % c.length])) for i in range(c.length))
        for c in ours
    ]
    assert len(as_sets) == len(set(as_sets))
    assert set(as_sets) == brute_cycles(g)


def test_cycles_brute_force_n8():
    rng = random.Random(8)
    for _ in range(6):
        g = rand_graph(rng, 8, 0.35)
        assert len(cycles(g)) == len(brute_cycles(g))


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=8))
def test_summary_invariants(g):
    s = structure_summary(g)
    assert s.c == len(g.edges) - g.n + s.omega >= 0
    assert s.kappa == sum(1 for c in s.cycles if c.length % 2 == 0) <= len(s.cycles)
    for c in s.cycles:
        assert c.length >= 3 and len(set(c.vertices)) == c.length
        arcs = sum(1 for i in c.edge_refs if g.edges[i].kind is ARC)
        assert c.forward + c.backward == arcs
        assert c.sigma == abs(c.forward - c.backward)
        rev = c.reversed()
        assert rev.sigma == c.sigma
        assert signature(g, rev) == signature(g, c) == c.sigma


def test_cycle_budget(monkeypatch):
    monkeypatch.setenv("MIXEDRANK_CYCLE_CAP", "5")
    k5 = MixedGraph.from_edges(5, itertools.combinations(range(5), 2))
    with pytest.raises(CycleBudgetExceeded):
        cycles(k5)


# -- signature -----------------------------------------------------------------


def test_signature_examples():
    c = cycles(construct_cycle(5))[0]
    assert c.sigma == 0
    tri = construct_cycle(3, "fee")
    assert cycles(tri)[0].sigma == 1
    sq = construct_cycle(4, "ffee")
    assert cycles(sq)[0].sigma == 2
    # disagreeing arcs cancel
    assert cycles(construct_cycle(4, "fbee"))[0].sigma == 0


# -- disjointness and pendant cycles ------------------------------------------------


def test_disjointness_examples():
    inf = construct_infinity(4, 1, 3)
    assert cycles_pairwise_disjoint(inf, even_only=True)
    assert not cycles_pairwise_disjoint(inf, even_only=False)
    two = disjoint_union(construct_cycle(4), construct_cycle(4))
    assert cycles_pairwise_disjoint(two, True) and cycles_pairwise_disjoint(two, False)


def test_pendant_cycle_examples():
    assert pendant_cycles(construct_infinity(4, 1, 3)) == []
    pc = pendant_cycles(c4_with_tail(2))
    assert len(pc) == 1 and pc[0].length == 4
    assert pendant_cycles(construct_cycle(6)) == []


# -- pendant K2 deletion and crucial subgraphs ---------------------------------------


def test_pendant_k2_delete_examples():
    p2 = construct_path(2)
    assert pendant_k2_delete(p2, 0) == MixedGraph(0)
    assert pendant_k2_delete(p2, 1) == MixedGraph(0)
    assert iso(pendant_k2_delete(construct_path(4), 0), construct_path(2))
    assert iso(pendant_k2_delete(c4_with_tail(2), 5), construct_cycle(4))
    with pytest.raises(NotPendant):
        pendant_k2_delete(construct_cycle(4), 0)


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=8))
def test_pendant_k2_round_trip(g):
    for x in range(g.n):
        if g.degree(x) != 1:
            continue
        y = g.neighbors(x)[0]
        h = pendant_k2_delete(g, x)
        assert h.n == g.n - 2
        keep = [v for v in range(g.n) if v not in (x, y)]
        # re-add x, y with their original incident edges
        back = {i: v for i, v in enumerate(keep)}
        back[h.n], back[h.n + 1] = x, y
        fwd = {v: k for k, v in back.items()}
        recs = [EdgeRecord(back[e.u], back[e.v], e.kind) for e in h.edges]
        recs += [e for e in g.edges if x in (e.u, e.v) or y in (e.u, e.v)]
        rebuilt = MixedGraph(g.n, tuple(recs))
        assert rebuilt.normalized() == g.normalized()
        assert fwd[x] == h.n


def test_crucial_examples():
    # a tree with a perfect matching reduces to the empty graph
    tree = MixedGraph.from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)])
    assert MixedGraph(0) in crucial_subgraphs(tree)
    crs = crucial_subgraphs(c4_with_tail(2))
    assert len(crs) == 1 and iso(crs[0], construct_cycle(4))
    crs = crucial_subgraphs(construct_path(3))
    assert crs == [MixedGraph(1)]


@settings(max_examples=60, deadline=None)
@given(mixed_graphs(max_n=8))
def test_crucial_are_pendant_free(g):
    for h in crucial_subgraphs(g):
        assert all(h.degree(v) != 1 for v in range(h.n))
        assert (g.n - h.n) % 2 == 0


def test_crucial_budget(monkeypatch):
    monkeypatch.setenv("MIXEDRANK_SEARCH_CAP", "3")
    star_paths = MixedGraph.from_edges(9, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7), (7, 8)])
    with pytest.raises(SearchBudgetExceeded):
        crucial_subgraphs(star_paths)


# -- contraction -------------------------------------------------------------------------


def test_contract_examples():
    con = contract_cycles(c4_with_tail(1))
    assert iso(con.tree, construct_path(2))
    assert con.bracket == MixedGraph(1)
    assert len(con.cyclic_vertices) == 1

    forest = MixedGraph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    con = contract_cycles(forest)
    assert con.tree == forest and con.cyclic_vertices == ()

    tri = construct_cycle(3)
    g = disjoint_union(tri, tri)
    g = MixedGraph(6, g.edges + (EdgeRecord(0, 3),))
    con = contract_cycles(g)
    assert iso(con.tree, construct_path(2))
    assert con.bracket == MixedGraph(0)

    with pytest.raises(CyclesNotDisjoint):
        contract_cycles(construct_infinity(4, 1, 3))


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=9))
def test_contraction_is_acyclic(g):
    if not cycles_pairwise_disjoint(g):
        return
    con = contract_cycles(g)
    assert cyclomatic_number(con.tree) == 0
    assert con.bracket.n == con.tree.n - len(con.cyclic_vertices)


# -- constructors --------------------------------------------------------------------------


def test_constructor_examples():
    inf = construct_infinity(4, 1, 3)
    assert (inf.n, len(inf.edges), cyclomatic_number(inf)) == (6, 7, 2)
    th = construct_theta(2, 3, 3)
    assert (th.n, len(th.edges)) == (4, 5)
    assert sorted(c.length for c in cycles(th)) == [3, 3, 4]
    for bad in [(2, 2, 5), (1, 3, 3)]:
        with pytest.raises(InvalidParameters):
            construct_theta(*bad)
    with pytest.raises(InvalidParameters):
        construct_infinity(2, 1, 3)


def test_constructor_random_triples():
    rng = random.Random(50)
    for _ in range(50):
        p, l, q = rng.randint(3, 7), rng.randint(1, 4), rng.randint(3, 7)
        g = construct_infinity(p, l, q)
        s = structure_summary(g)
        assert g.n == p + q + l - 2
        assert s.c == 2 and s.omega == 1
        assert sorted(c.length for c in s.cycles) == sorted([p, q])
        assert s.kappa == (p % 2 == 0) + (q % 2 == 0)

        p, l, q = rng.randint(2, 7), rng.randint(3, 7), rng.randint(3, 7)
        g = construct_theta(p, l, q)
        s = structure_summary(g)
        assert g.n == p + l + q - 4
        lens = sorted([p + l - 2, p + q - 2, l + q - 2])
        assert s.c == 2
        assert sorted(c.length for c in s.cycles) == lens
        assert s.kappa == sum(1 for x in lens if x % 2 == 0)


def test_constructor_orientation():
    g = construct_cycle(3, "fbe")
    assert [e.kind for e in g.edges] == [ARC, ARC, EdgeRecord(0, 1).kind]
    assert (g.edges[1].u, g.edges[1].v) == (2, 1)
    with pytest.raises(InvalidParameters):
        construct_cycle(3, "ff")


def test_identify_vertex_examples():
    k2 = construct_path(2)
    assert iso(identify_vertex(k2, 1, k2, 0), construct_path(3))
    g = identify_vertex(construct_cycle(4), 0, construct_cycle(3), 0)
    assert g.n == 6 and iso(g, construct_infinity(4, 1, 3))
    p3 = construct_path(3)
    star = identify_vertex(p3, 1, p3, 1)
    assert star.n == 5 and sorted(star.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]
    with pytest.raises(InvalidParameters):
        identify_vertex(k2, 2, k2, 0)


@settings(max_examples=50, deadline=None)
@given(mixed_graphs(max_n=6), mixed_graphs(min_n=1, max_n=5))
def test_identify_vertex_order(h, c):
    if h.n == 0:
        return
    g = identify_vertex(h, 0, c, 0)
    assert g.n == h.n + c.n - 1
    assert len(g.edges) == len(h.edges) + len(c.edges)


# -- canonical form ---------------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=7), st.integers(0, 10**6))
def test_canonical_form_relabel_invariant(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    h = MixedGraph(g.n, tuple(EdgeRecord(perm[e.u], perm[e.v], e.kind) for e in g.edges))
    assert canonical_form(g) == canonical_form(h)


def brute_canonical(g: MixedGraph) -> tuple:
    best = None
    for perm in itertools.permutations(range(g.n)):
        enc = []
        for e in g.edges:
            a, b = perm[e.u], perm[e.v]
            code = 0 if e.kind is not ARC else (1 if a < b else 2)
            enc.append((min(a, b), max(a, b), code))
        enc = tuple(sorted(enc))
        if best is None or enc < best:
            best = enc
    return best


def test_canonical_form_separates_like_brute_force():
    rng = random.Random(5)
    graphs = [rand_graph(rng, 5, 0.5) for _ in range(150)]
    for a, b in itertools.combinations(graphs[:60], 2):
        assert (canonical_form(a) == canonical_form(b)) == (brute_canonical(a) == brute_canonical(b))
