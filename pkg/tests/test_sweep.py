from __future__ import annotations

import random

import networkx as nx

from mixedrank import construct_cycle, hermitian_charpoly, hermitian_rank, sachs_coefficients
from mixedrank.graph import MixedGraph
from mixedrank.sweep import (
    orientation_sweep,
    state_graph,
    sweep_coefficients,
    underlying_classes,
)

from conftest import rand_graph


def test_sweep_matches_scalar_functions():
    rng = random.Random(2)
    for n in (5, 6, 7, 8):
        g = rand_graph(rng, n, 0.6).underlying()
        states = [[rng.randrange(3) for _ in g.edges] for _ in range(40)]
        for st, (cp, sc, r) in zip(states, sweep_coefficients(g, states)):
            h = state_graph(g, st)
            ref = list(hermitian_charpoly(h).coeffs)
            assert cp == ref
            assert sc == sachs_coefficients(h) == ref
            assert r == hermitian_rank(h)


def test_cycle_sweep():
    res = orientation_sweep(construct_cycle(5))
    assert (res.graphs, res.mismatches, res.rank_mismatches) == (243, 0, 0)
    assert res.first_mismatch is None
    assert orientation_sweep(MixedGraph(0)).graphs == 1


def test_state_graph_encoding():
    g = construct_cycle(3)
    h = state_graph(g, [0, 1, 2])
    assert [(e.u, e.v, e.is_arc) for e in h.edges] == [(0, 1, False), (1, 2, True), (2, 0, True)]


def test_underlying_classes_match_atlas():
    atlas = [gr for gr in nx.graph_atlas_g() if gr.number_of_nodes() == 5]
    ours = underlying_classes(5)
    assert len(ours) == len(atlas) == 34
    # same edge-count distribution
    assert sorted(len(g.edges) for g in ours) == sorted(gr.number_of_edges() for gr in atlas)
    assert len(underlying_classes(6)) == sum(
        1 for gr in nx.graph_atlas_g() if gr.number_of_nodes() == 6
    ) == 156


def test_classes_are_pairwise_non_isomorphic():
    classes = underlying_classes(5)
    nxg = []
    for g in classes:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(e.key for e in g.edges)
        nxg.append(h)
    for i in range(len(nxg)):
        for j in range(i):
            assert not nx.is_isomorphic(nxg[i], nxg[j])
