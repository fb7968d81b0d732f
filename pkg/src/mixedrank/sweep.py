"""Compiled sweep over every orientation state of one underlying graph.

For a simple graph with ``E`` edges there are ``3**E`` mixed graphs on it
(each edge undirected, forward or backward).  The sweep computes, for every
state, the characteristic polynomial of the Hermitian adjacency matrix by
integer Faddeev-LeVerrier and the basic-subgraph expansion from the cached
skeleton, and counts the states where they differ.  All arithmetic is int64;
magnitudes stay far below overflow for the orders this is meant for (n <= 8).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from numba import njit

from . import budgets
from .graph import ARC, EdgeRecord, MixedGraph, canonical_form
from .sachs import _skeleton_cached

MAX_SWEEP_N = 8


@njit(cache=True)
def _charpoly(n, eu, ev, state, out):
    ar = np.zeros((n, n), np.int64)
    ai = np.zeros((n, n), np.int64)
    for k in range(eu.shape[0]):
        u = eu[k]
        v = ev[k]
        s = state[k]
        if s == 0:
            ar[u, v] = 1
            ar[v, u] = 1
        elif s == 1:
            ai[u, v] = 1
            ai[v, u] = -1
        else:
            ai[u, v] = -1
            ai[v, u] = 1
    pr = np.zeros((n, n), np.int64)
    pi = np.zeros((n, n), np.int64)
    cr = np.zeros((n, n), np.int64)
    ci = np.zeros((n, n), np.int64)
    out[0] = 1
    acc_r = 1
    acc_i = 0
    for k in range(1, n + 1):
        for i in range(n):
            for j in range(n):
                sr = 0
                si = 0
                for l in range(n):
                    hr = ar[i, l]
                    hi = ai[i, l]
                    if hr != 0 or hi != 0:
                        sr += hr * pr[l, j] - hi * pi[l, j]
                        si += hr * pi[l, j] + hi * pr[l, j]
                cr[i, j] = sr
                ci[i, j] = si
            cr[i, i] += acc_r
            ci[i, i] += acc_i
        tr = 0
        ti = 0
        for i in range(n):
            for l in range(n):
                hr = ar[i, l]
                hi = ai[i, l]
                if hr != 0 or hi != 0:
                    tr += hr * cr[l, i] - hi * ci[l, i]
                    ti += hr * ci[l, i] + hi * cr[l, i]
        if tr % k != 0 or ti % k != 0 or ti != 0:
            return False
        acc_r = -tr // k
        acc_i = 0
        out[k] = acc_r
        for i in range(n):
            for j in range(n):
                pr[i, j] = cr[i, j]
                pi[i, j] = ci[i, j]
    return True


@njit(cache=True)
def _sachs(n, state, cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc, nets, out):
    for k in range(cyc_len.shape[0]):
        t = 0
        for j in range(cyc_len[k]):
            s = state[cyc_edges[k, j]]
            if s == 1:
                t += cyc_dir[k, j]
            elif s == 2:
                t -= cyc_dir[k, j]
        nets[k] = t
    for i in range(n + 1):
        out[i] = 0
    for t in range(sk_order.shape[0]):
        half = 0
        ok = True
        for j in range(sk_ncyc[t]):
            x = nets[sk_cyc[t, j]]
            if x % 2 != 0:
                ok = False
                break
            half += x // 2
        if not ok:
            continue
        term = 1 << sk_ncyc[t]
        if (half + sk_npairs[t] + sk_ncyc[t]) % 2 != 0:
            term = -term
        out[sk_order[t]] += term


@njit(cache=True)
def _rank(n, eu, ev, state):
    """Bareiss elimination over Z[i] on int64 pairs; exact for small n."""
    ar = np.zeros((n, n), np.int64)
    ai = np.zeros((n, n), np.int64)
    for k in range(eu.shape[0]):
        u = eu[k]
        v = ev[k]
        s = state[k]
        if s == 0:
            ar[u, v] = 1
            ar[v, u] = 1
        elif s == 1:
            ai[u, v] = 1
            ai[v, u] = -1
        else:
            ai[u, v] = -1
            ai[v, u] = 1
    r = 0
    pr = 1
    pi = 0
    for col in range(n):
        if r == n:
            break
        piv = -1
        for k in range(r, n):
            if ar[k, col] != 0 or ai[k, col] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                t = ar[r, j]
                ar[r, j] = ar[piv, j]
                ar[piv, j] = t
                t = ai[r, j]
                ai[r, j] = ai[piv, j]
                ai[piv, j] = t
        cr = ar[r, col]
        ci = ai[r, col]
        dn = pr * pr + pi * pi
        for k in range(r + 1, n):
            fr = ar[k, col]
            fi = ai[k, col]
            ar[k, col] = 0
            ai[k, col] = 0
            for j in range(col + 1, n):
                xr = ar[k, j]
                xi = ai[k, j]
                yr = ar[r, j]
                yi = ai[r, j]
                nr = cr * xr - ci * xi - (fr * yr - fi * yi)
                ni = cr * xi + ci * xr - (fr * yi + fi * yr)
                tr = nr * pr + ni * pi
                ti = ni * pr - nr * pi
                ar[k, j] = tr // dn
                ai[k, j] = ti // dn
        pr = cr
        pi = ci
        r += 1
    return r


@njit(cache=True)
def _sweep(n, eu, ev, cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc, first):
    ne = eu.shape[0]
    state = np.zeros(ne, np.int64)
    cp = np.zeros(n + 1, np.int64)
    sc = np.zeros(n + 1, np.int64)
    nets = np.zeros(cyc_len.shape[0], np.int64)
    total = 0
    bad = 0
    bad_rank = 0
    while True:
        good = _charpoly(n, eu, ev, state, cp)
        _sachs(n, state, cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc, nets, sc)
        if good:
            for i in range(n + 1):
                if cp[i] != sc[i]:
                    good = False
                    break
        top = 0
        for i in range(n + 1):
            if sc[i] != 0:
                top = i
        if top != _rank(n, eu, ev, state):
            bad_rank += 1
        if not good:
            if bad == 0:
                for k in range(ne):
                    first[k] = state[k]
            bad += 1
        total += 1
        k = 0
        while k < ne:
            state[k] += 1
            if state[k] < 3:
                break
            state[k] = 0
            k += 1
        if k == ne:
            break
    return total, bad, bad_rank


@njit(cache=True)
def _coefficients(n, eu, ev, cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc, states):
    m = states.shape[0]
    cps = np.zeros((m, n + 1), np.int64)
    scs = np.zeros((m, n + 1), np.int64)
    nets = np.zeros(cyc_len.shape[0], np.int64)
    ok = np.zeros(m, np.bool_)
    ranks = np.zeros(m, np.int64)
    for t in range(m):
        ranks[t] = _rank(n, eu, ev, states[t])
        ok[t] = _charpoly(n, eu, ev, states[t], cps[t])
        _sachs(n, states[t], cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc, nets, scs[t])
    return ok, cps, scs, ranks


def _tables(g: MixedGraph):
    """Edge, cycle and skeleton arrays for the underlying graph of ``g``."""
    pairs = [e.key for e in g.edges]
    index = {p: i for i, p in enumerate(pairs)}
    eu = np.array([p[0] for p in pairs], np.int64)
    ev = np.array([p[1] for p in pairs], np.int64)
    cyc, skel = _skeleton_cached(g.adj, budgets.enum_cap())
    width = max((len(vs) for vs in cyc), default=1)
    cyc_edges = np.zeros((len(cyc), width), np.int64)
    cyc_dir = np.zeros((len(cyc), width), np.int64)
    cyc_len = np.array([len(vs) for vs in cyc], np.int64)
    for k, vs in enumerate(cyc):
        for j in range(len(vs)):
            a, b = vs[j], vs[(j + 1) % len(vs)]
            cyc_edges[k, j] = index[(a, b) if a < b else (b, a)]
            cyc_dir[k, j] = 1 if a < b else -1
    kmax = max((len(c) for _, _, c in skel), default=1) or 1
    sk_order = np.array([o for o, _, _ in skel], np.int64)
    sk_npairs = np.array([len(p) for _, p, _ in skel], np.int64)
    sk_ncyc = np.array([len(c) for _, _, c in skel], np.int64)
    sk_cyc = np.zeros((len(skel), kmax), np.int64)
    for t, (_, _, cids) in enumerate(skel):
        sk_cyc[t, : len(cids)] = cids
    return eu, ev, (cyc_edges, cyc_dir, cyc_len, sk_order, sk_npairs, sk_cyc, sk_ncyc)


def state_graph(g: MixedGraph, state) -> MixedGraph:
    """The mixed graph on ``g``'s edge pairs with per-edge states 0/1/2."""
    recs = []
    for e, s in zip(g.edges, state):
        u, v = e.key
        if s == 0:
            recs.append(EdgeRecord(u, v))
        elif s == 1:
            recs.append(EdgeRecord(u, v, ARC))
        else:
            recs.append(EdgeRecord(v, u, ARC))
    return MixedGraph(g.n, tuple(recs))


@dataclass(frozen=True)
class SweepResult:
    graphs: int
    mismatches: int
    rank_mismatches: int
    first_mismatch: MixedGraph | None


def orientation_sweep(g: MixedGraph) -> SweepResult:
    """Compare both coefficient computations on all ``3**E`` orientations of ``g``.

    ``rank_mismatches`` counts states whose Bareiss rank differs from the
    largest order with a nonzero basic-subgraph coefficient.
    """
    if g.n > MAX_SWEEP_N:
        raise ValueError(f"sweep supports n <= {MAX_SWEEP_N}")
    if g.n == 0:
        return SweepResult(1, 0, 0, None)
    eu, ev, rest = _tables(g)
    first = np.zeros(len(g.edges), np.int64)
    total, bad, bad_rank = _sweep(g.n, eu, ev, *rest, first)
    return SweepResult(int(total), int(bad), int(bad_rank), state_graph(g, first.tolist()) if bad else None)


def sweep_coefficients(g: MixedGraph, states) -> list[tuple[list[int] | None, list[int], int]]:
    """(charpoly, basic-subgraph coefficients, rank) for the given edge states.

    The charpoly entry is None when the compiled elimination met a
    non-integral or non-real intermediate.
    """
    eu, ev, rest = _tables(g)
    arr = np.array(states, np.int64).reshape(len(states), len(g.edges))
    ok, cps, scs, ranks = _coefficients(g.n, eu, ev, *rest, arr)
    return [
        (cps[t].tolist() if ok[t] else None, scs[t].tolist(), int(ranks[t]))
        for t in range(len(states))
    ]


def underlying_classes(n: int) -> list[MixedGraph]:
    """One undirected representative per isomorphism class of simple graphs on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[tuple, MixedGraph] = {}
    for bits in range(1 << len(pairs)):
        g = MixedGraph(n, tuple(EdgeRecord(u, v) for k, (u, v) in enumerate(pairs) if bits >> k & 1))
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
    return list(seen.values())
