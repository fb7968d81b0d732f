from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedrank import (
    GaussianInt,
    GaussianIntMatrix,
    MixedGraph,
    charpoly_exact,
    components,
    construct_cycle,
    construct_path,
    hermitian_adjacency,
    hermitian_charpoly,
    hermitian_rank,
    matching_number,
    rank_exact,
    skew_adjacency,
)
from mixedrank.errors import HasUndirectedEdge, NonRealCoefficient
from mixedrank.graph import cyclomatic_number

from conftest import mixed_graphs, rand_graph

I = GaussianInt(0, 1)


# -- independent oracles --------------------------------------------------------


def _mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def leibniz_det(a: list[list[tuple[int, int]]]) -> tuple[int, int]:
    k = len(a)
    re = im = 0
    for p in itertools.permutations(range(k)):
        t = (1, 0)
        for i in range(k):
            t = _mul(t, a[i][p[i]])
            if t == (0, 0):
                break
        s = _perm_sign(p)
        re += s * t[0]
        im += s * t[1]
    return re, im


def minor_rank(m: GaussianIntMatrix) -> int:
    """Largest k with a nonzero k x k minor."""
    a = m.tolist()
    for k in range(min(m.rows, m.cols), 0, -1):
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                if leibniz_det([[a[i][j] for j in cs] for i in rs]) != (0, 0):
                    return k
    return 0


def principal_minor_charpoly(m: GaussianIntMatrix) -> list[int]:
    """a_i = (-1)^i * (sum of principal i x i minors)."""
    a = m.tolist()
    out = [1]
    for k in range(1, m.rows + 1):
        re = im = 0
        for s in itertools.combinations(range(m.rows), k):
            d = leibniz_det([[a[i][j] for j in s] for i in s])
            re += d[0]
            im += d[1]
        assert im == 0
        out.append((-1) ** k * re)
    return out


# -- Gaussian integers ---------------------------------------------------------------


gints = st.builds(GaussianInt, st.integers(-50, 50), st.integers(-50, 50))


@given(gints, gints, gints)
def test_gaussian_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).im == 0
    if b:
        assert (a * b).exact_div(b) == a


def test_exact_div_rejects_inexact():
    with pytest.raises(ArithmeticError):
        GaussianInt(1, 0).exact_div(GaussianInt(1, 1))
    with pytest.raises(ZeroDivisionError):
        GaussianInt(1, 0).exact_div(GaussianInt(0, 0))


# -- adjacency ---------------------------------------------------------------------------


def test_adjacency_examples():
    assert hermitian_adjacency(construct_path(2)).tolist() == [[(0, 0), (1, 0)], [(1, 0), (0, 0)]]
    arc = MixedGraph.from_edges(2, arcs=[(0, 1)])
    assert hermitian_adjacency(arc).tolist() == [[(0, 0), (0, 1)], [(0, -1), (0, 0)]]
    assert hermitian_adjacency(MixedGraph(3)) == GaussianIntMatrix.zeros(3, 3)


@settings(max_examples=100, deadline=None)
@given(mixed_graphs(max_n=8))
def test_adjacency_hermitian(g):
    h = hermitian_adjacency(g)
    assert h.is_hermitian()
    assert all(h[v, v] == GaussianInt(0, 0) for v in range(g.n))


# -- rank ---------------------------------------------------------------------------------


def test_rank_examples():
    assert rank_exact(hermitian_adjacency(construct_cycle(4))) == 2
    assert rank_exact(hermitian_adjacency(construct_cycle(3, "fee"))) == 2
    assert rank_exact(hermitian_adjacency(construct_path(4))) == 4


@settings(max_examples=120, deadline=None)
@given(mixed_graphs(max_n=6))
def test_rank_matches_minor_oracle(g):
    h = hermitian_adjacency(g)
    assert rank_exact(h) == minor_rank(h) == hermitian_rank(g)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(
            lambda c: st.lists(st.lists(gints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_rank_general_matrices(rows):
    # sparsify so that rank deficiency actually occurs
    rows = [[x if (x.re + x.im) % 3 == 0 else GaussianInt(0, 0) for x in row] for row in rows]
    m = GaussianIntMatrix.from_rows(rows)
    assert rank_exact(m) == minor_rank(m)


def test_rank_large_intermediates():
    # dense n = 12 graphs; exactness relies on unbounded integers
    rng = random.Random(12)
    for _ in range(3):
        g = rand_graph(rng, 12, 0.8)
        assert hermitian_rank(g) == hermitian_charpoly(g).top_nonzero_index()


# -- characteristic polynomial ------------------------------------------------------------


def test_charpoly_examples():
    assert hermitian_charpoly(construct_cycle(4)).coeffs == (1, 0, -4, 0, 0)
    assert hermitian_charpoly(construct_path(2)).coeffs == (1, 0, -1)
    assert charpoly_exact(GaussianIntMatrix.zeros(3, 3)).coeffs == (1, 0, 0, 0)


def test_charpoly_c4_matches_oracle():
    h = hermitian_adjacency(construct_cycle(4))
    assert list(charpoly_exact(h).coeffs) == principal_minor_charpoly(h)
    # eigenvalues 2, 0, 0, -2
    f = charpoly_exact(h)
    assert f(2) == f(-2) == f(0) == 0


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=6))
def test_charpoly_matches_principal_minors(g):
    h = hermitian_adjacency(g)
    assert list(charpoly_exact(h).coeffs) == principal_minor_charpoly(h)


@settings(max_examples=100, deadline=None)
@given(mixed_graphs(max_n=8))
def test_rank_is_top_charpoly_index(g):
    assert hermitian_rank(g) == hermitian_charpoly(g).top_nonzero_index()


def test_charpoly_rejects_non_hermitian():
    m = GaussianIntMatrix.from_rows([[0, (0, 1)], [(0, 1), 0]])
    # det(xI - M) = x^2 + 1 is real; make the trace imaginary instead
    with pytest.raises(NonRealCoefficient):
        charpoly_exact(GaussianIntMatrix.from_rows([[(0, 1), 0], [0, 0]]))
    assert charpoly_exact(m).coeffs == (1, 0, 1)
    with pytest.raises(ValueError):
        charpoly_exact(GaussianIntMatrix.from_rows([[0, 1]]))


# -- skew adjacency -------------------------------------------------------------------------


def test_skew_examples():
    arc = MixedGraph.from_edges(2, arcs=[(0, 1)])
    s = skew_adjacency(arc)
    assert s.tolist() == [[(0, 0), (1, 0)], [(-1, 0), (0, 0)]]
    assert hermitian_adjacency(arc) == s.scale(I)
    tri = construct_cycle(3, "fff")
    assert rank_exact(skew_adjacency(tri)) == hermitian_rank(tri) == 2
    assert skew_adjacency(MixedGraph(2)) == GaussianIntMatrix.zeros(2, 2)
    with pytest.raises(HasUndirectedEdge):
        skew_adjacency(construct_path(2))


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=7))
def test_oriented_graphs_h_equals_i_s(g):
    g = g.with_orientation(["f"] * len(g.edges))
    s = skew_adjacency(g)
    assert hermitian_adjacency(g) == s.scale(I)
    assert rank_exact(s) == hermitian_rank(g)


# -- elementary rank identities on random graphs ---------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=8))
def test_vertex_deletion_and_components(g):
    r = hermitian_rank(g)
    for v in range(g.n):
        assert r - 2 <= hermitian_rank(g.delete([v])) <= r
    assert sum(hermitian_rank(c) for c, _ in components(g)) == r
    assert (r == 0) == (len(g.edges) == 0)


@settings(max_examples=80, deadline=None)
@given(mixed_graphs(max_n=8))
def test_pendant_and_forest_rank(g):
    r = hermitian_rank(g)
    for x in range(g.n):
        if g.degree(x) == 1:
            y = g.neighbors(x)[0]
            assert r == hermitian_rank(g.delete([x, y])) + 2
    if cyclomatic_number(g) == 0:
        assert r == 2 * matching_number(g)

