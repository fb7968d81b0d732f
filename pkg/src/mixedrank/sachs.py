"""Basic (Sachs) subgraphs and the closed-form rank rules for mixed cycles.

The coefficient of ``x**(n-i)`` in ``det(x I - H)`` is recovered here purely
combinatorially: sum over basic subgraphs ``B`` of order ``i`` of
``(-1)**(sigma(B)/2 + omega(B)) * 2**beta(B)``.  A cycle with odd signature
contributes zero (its Hermitian weight has zero real part), so only cycles
with even signature appear.  ``sigma(B)`` is the sum of the signed balances
``f - b`` over the cycles of ``B``, one fixed traversal each; with every term
even the resulting sign does not depend on those traversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import budgets
from .errors import EnumerationBudgetExceeded, InvalidParameters
from .graph import Cycle, MixedGraph, _bits, cycle_vertex_tuples, make_cycle


@dataclass(frozen=True)
class BasicSubgraph:
    k2_edges: tuple[int, ...]
    cycles: tuple[Cycle, ...]

    @property
    def order(self) -> int:
        return 2 * len(self.k2_edges) + sum(c.length for c in self.cycles)

    @property
    def omega(self) -> int:
        return len(self.k2_edges) + len(self.cycles)

    @property
    def beta(self) -> int:
        return len(self.cycles)

    @property
    def sigma_total(self) -> int:
        return sum(c.net for c in self.cycles)

    def contribution(self) -> int:
        half = self.sigma_total // 2
        sign = -1 if (half + self.omega) % 2 else 1
        return sign << self.beta


def _sachs_skeleton(adj: tuple[int, ...], cap: int):
    """Every vertex-disjoint union of edges and cycles, ignoring signatures.

    Entries are ``(order, k2 pairs, cycle ids)``; cycle ids index
    ``cycle_vertex_tuples(adj)``.
    """
    n = len(adj)
    cyc = cycle_vertex_tuples(adj)
    by_start: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, vs in enumerate(cyc):
        by_start[vs[0]].append((k, sum(1 << v for v in vs)))
    out: list[tuple[int, tuple, tuple]] = []
    pairs: list[tuple[int, int]] = []
    chosen: list[int] = []

    def rec(avail: int, order: int) -> None:
        if not avail:
            out.append((order, tuple(pairs), tuple(chosen)))
            if len(out) > cap:
                raise EnumerationBudgetExceeded("basic subgraph enumeration", cap)
            return
        low = avail & -avail
        v = low.bit_length() - 1
        rest = avail ^ low
        rec(rest, order)
        for w in _bits(adj[v] & rest):
            pairs.append((v, w))
            rec(rest & ~(1 << w), order + 2)
            pairs.pop()
        for k, mask in by_start[v]:
            if mask & avail == mask:
                chosen.append(k)
                rec(avail & ~mask, order + len(cyc[k]))
                chosen.pop()

    rec((1 << n) - 1, 0)
    return cyc, out


@lru_cache(maxsize=1 << 14)
def _skeleton_cached(adj: tuple[int, ...], cap: int):
    return _sachs_skeleton(adj, cap)


def enumerate_basic_subgraphs(g: MixedGraph, order: int | None = None) -> list[BasicSubgraph]:
    """Basic subgraphs of ``g`` (all orders when ``order`` is None)."""
    if order is not None and not 0 <= order <= g.n:
        raise InvalidParameters(f"order {order} outside 0..{g.n}")
    cyc, skel = _skeleton_cached(g.adj, budgets.enum_cap())
    made = [make_cycle(g, vs) for vs in cyc]
    idx = g.edge_index
    out = []
    for ordr, pairs, cids in skel:
        if order is not None and ordr != order:
            continue
        if any(made[k].net % 2 for k in cids):
            continue
        out.append(
            BasicSubgraph(
                tuple(idx[(a, b) if a < b else (b, a)] for a, b in pairs),
                tuple(made[k] for k in cids),
            )
        )
    return out


def sachs_coefficients(g: MixedGraph) -> list[int]:
    """``[a_0, ..., a_n]`` from the basic-subgraph expansion."""
    cyc, skel = _skeleton_cached(g.adj, budgets.enum_cap())
    nets = [make_cycle(g, vs).net for vs in cyc]
    coeffs = [0] * (g.n + 1)
    for ordr, pairs, cids in skel:
        half = 0
        for k in cids:
            t = nets[k]
            if t % 2:
                break
            half += t // 2
        else:
            omega = len(pairs) + len(cids)
            term = 1 << len(cids)
            coeffs[ordr] += -term if (half + omega) % 2 else term
    return coeffs


def sachs_coefficient(g: MixedGraph, i: int) -> int:
    if not 0 <= i <= g.n:
        raise InvalidParameters(f"order {i} outside 0..{g.n}")
    return sachs_coefficients(g)[i]


def sachs_rank(g: MixedGraph) -> int:
    """Largest ``i`` with a nonzero basic-subgraph coefficient."""
    coeffs = sachs_coefficients(g)
    return max(i for i, a in enumerate(coeffs) if a)


def cycle_rank_formula(n: int, sigma: int) -> int:
    """H-rank of a mixed ``n``-cycle with signature ``sigma``."""
    if n < 3 or not 0 <= sigma <= n:
        raise InvalidParameters("need n >= 3 and 0 <= sigma <= n")
    if n % 2:
        return n - 1 if sigma % 2 else n
    if sigma % 2:
        return n
    return n - 2 if (n + sigma) % 4 == 0 else n


def identification_rank(h_rank: int, f_rank: int, n: int, sigma: int) -> int | None:
    """Rank after gluing a mixed ``n``-cycle onto a graph ``H`` at one vertex ``x``.

    ``h_rank`` is the rank of ``H`` and ``f_rank`` the rank of ``H - x``.
    Returns ``None`` for an odd cycle with even signature, where no rule applies.
    """
    if n < 3:
        raise InvalidParameters("cycle length must be at least 3")
    if n % 2:
        return h_rank + n - 1 if sigma % 2 else None
    if sigma % 2 == 0 and (sigma - n) % 4 == 0:
        return h_rank + n - 2
    return f_rank + n
