"""Matchings, fractional matchings and odd-cycle packings of the underlying graph.

Everything here ignores edge directions.  Vertex sets are bitmasks; results
that depend only on the underlying graph are cached on its adjacency tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import budgets
from .errors import EnumerationBudgetExceeded
from .graph import Cycle, MixedGraph, _bits, cycle_vertex_tuples, make_cycle


@dataclass(frozen=True)
class Matching:
    edge_refs: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.edge_refs)

    def sorted_refs(self) -> list[int]:
        return sorted(self.edge_refs)


@dataclass(frozen=True)
class FractionalMatching:
    """Edge weights in {0, 1/2, 1}, stored doubled as 0 / 1 / 2 per edge index."""

    doubled: tuple[int, ...]

    def weight(self, edge: int) -> Fraction:
        return Fraction(self.doubled[edge], 2)

    @property
    def total_doubled(self) -> int:
        return sum(self.doubled)

    @property
    def total(self) -> Fraction:
        return Fraction(self.total_doubled, 2)

    def is_valid(self, g: MixedGraph) -> bool:
        load = [0] * g.n
        for e, w in zip(g.edges, self.doubled):
            if w not in (0, 1, 2):
                return False
            load[e.u] += w
            load[e.v] += w
        return all(x <= 2 for x in load)


@dataclass(frozen=True)
class OddCyclePacking:
    cycles: tuple[Cycle, ...]

    @property
    def size(self) -> int:
        return len(self.cycles)


# -- maximum matching ----------------------------------------------------------


@lru_cache(maxsize=4096)
def _matching_table(adj: tuple[int, ...]):
    """Memoised (size, count) of maximum matchings of the graph induced on a mask."""
    memo: dict[int, tuple[int, int]] = {0: (0, 1)}

    def best(mask: int) -> tuple[int, int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        size, count = best(rest)
        nb = adj[v] & rest
        while nb:
            lw = nb & -nb
            nb ^= lw
            s, c = best(rest ^ lw)
            s += 1
            if s > size:
                size, count = s, c
            elif s == size:
                count += c
        memo[mask] = (size, count)
        return size, count

    return best, memo


def matching_number_mask(adj: tuple[int, ...], mask: int) -> int:
    best, _ = _matching_table(adj)
    return best(mask)[0]


@lru_cache(maxsize=1 << 16)
def _max_matching_count(adj: tuple[int, ...]) -> tuple[int, int]:
    best, _ = _matching_table(adj)
    return best((1 << len(adj)) - 1)


def matching_number(g: MixedGraph) -> int:
    return matching_number_mask(g.adj, (1 << g.n) - 1)


def _witness_pairs(adj: tuple[int, ...], mask: int) -> list[tuple[int, int]]:
    best, _ = _matching_table(adj)
    pairs = []
    while mask:
        target = best(mask)[0]
        if target == 0:
            break
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if best(rest)[0] == target:
            mask = rest
            continue
        for w in _bits(adj[v] & rest):
            if best(rest & ~(1 << w))[0] == target - 1:
                pairs.append((v, w))
                mask = rest & ~(1 << w)
                break
    return pairs


def max_matching(g: MixedGraph) -> tuple[Matching, int]:
    """A maximum matching and its size, by exact search over vertex subsets."""
    pairs = _witness_pairs(g.adj, (1 << g.n) - 1)
    idx = g.edge_index
    refs = frozenset(idx[(a, b) if a < b else (b, a)] for a, b in pairs)
    return Matching(refs), len(refs)


def is_matching(g: MixedGraph, refs) -> bool:
    used = 0
    for i in refs:
        e = g.edges[i]
        bits = (1 << e.u) | (1 << e.v)
        if used & bits:
            return False
        used |= bits
    return True


def find_augmenting_path(g: MixedGraph, m: Matching) -> list[int] | None:
    """Vertex sequence of an ``m``-augmenting path, or ``None``.

    Exhaustive DFS over alternating simple paths from every unsaturated
    vertex; exponential, meant for certification at small order.
    """
    mate = {}
    for i in m.edge_refs:
        e = g.edges[i]
        mate[e.u] = e.v
        mate[e.v] = e.u
    free = [v for v in range(g.n) if v not in mate]

    def extend(path: list[int], used: int) -> list[int] | None:
        v = path[-1]
        for w in _bits(g.adj[v] & ~used):
            if mate.get(v) == w:
                continue
            if w not in mate:
                return path + [w]
            x = mate[w]
            if used >> x & 1:
                continue
            found = extend(path + [w, x], used | (1 << w) | (1 << x))
            if found:
                return found
        return None

    for s in free:
        p = extend([s], 1 << s)
        if p:
            return p
    return None


def enumerate_perfect_matchings(g: MixedGraph) -> list[Matching]:
    if g.n % 2:
        return []
    cap = budgets.enum_cap()
    idx = g.edge_index
    adj = g.adj
    out: list[Matching] = []

    def rec(mask: int, chosen: list[int]) -> None:
        if not mask:
            out.append(Matching(frozenset(chosen)))
            if len(out) > cap:
                raise EnumerationBudgetExceeded("perfect matching enumeration", cap)
            return
        low = mask & -mask
        v = low.bit_length() - 1
        for w in _bits(adj[v] & mask & ~low):
            chosen.append(idx[(v, w)])
            rec(mask & ~low & ~(1 << w), chosen)
            chosen.pop()

    rec((1 << g.n) - 1, [])
    return out


def enumerate_maximum_matchings(g: MixedGraph, mask: int | None = None) -> list[Matching]:
    """All maximum matchings of the subgraph induced on ``mask`` (default: all of ``g``)."""
    adj = g.adj
    if mask is None:
        mask = (1 << g.n) - 1
    best, _ = _matching_table(adj)
    cap = budgets.enum_cap()
    idx = g.edge_index
    out: list[Matching] = []

    def rec(m: int, need: int, chosen: list[int]) -> None:
        if need == 0:
            out.append(Matching(frozenset(chosen)))
            if len(out) > cap:
                raise EnumerationBudgetExceeded("maximum matching enumeration", cap)
            return
        low = m & -m
        v = low.bit_length() - 1
        rest = m ^ low
        if best(rest)[0] >= need:
            rec(rest, need, chosen)
        for w in _bits(adj[v] & rest):
            nxt = rest & ~(1 << w)
            if best(nxt)[0] >= need - 1:
                chosen.append(idx[(v, w)])
                rec(nxt, need - 1, chosen)
                chosen.pop()

    rec(mask, best(mask)[0], [])
    return out


def has_unique_max_matching(g: MixedGraph) -> bool:
    return _max_matching_count(g.adj)[1] == 1


def count_max_matchings(g: MixedGraph) -> int:
    return _max_matching_count(g.adj)[1]


# -- fractional matching ---------------------------------------------------------


def _bipartite_max_matching(left_adj: list[int], n_right: int) -> int:
    """Kuhn's augmenting-path algorithm on a bipartite graph given by left bitmasks."""
    match_r = [-1] * n_right

    def try_left(u: int, seen: list[bool]) -> bool:
        for w in _bits(left_adj[u]):
            if seen[w]:
                continue
            seen[w] = True
            if match_r[w] < 0 or try_left(match_r[w], seen):
                match_r[w] = u
                return True
        return False

    size = 0
    for u in range(len(left_adj)):
        if try_left(u, [False] * n_right):
            size += 1
    return size


@lru_cache(maxsize=1 << 16)
def _double_cover_value(adj: tuple[int, ...]) -> int:
    return _bipartite_max_matching(list(adj), len(adj))


def fractional_matching_number_doubled(g: MixedGraph) -> int:
    """``2 m*(G)`` as the maximum matching size of the bipartite double cover."""
    return _double_cover_value(g.adj)


def fractional_matching_number(g: MixedGraph) -> Fraction:
    return Fraction(fractional_matching_number_doubled(g), 2)


def _odd_cycle_masks(adj: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [vs for vs in cycle_vertex_tuples(adj) if len(vs) % 2]


def _packings(adj: tuple[int, ...], cap: int):
    """Every set of pairwise vertex-disjoint odd cycles, as lists of cycle indices."""
    odd = _odd_cycle_masks(adj)
    masks = [sum(1 << v for v in vs) for vs in odd]
    out: list[tuple[tuple[int, ...], int]] = []

    def rec(start: int, used: int, chosen: list[int]) -> None:
        out.append((tuple(chosen), used))
        if len(out) > cap:
            raise EnumerationBudgetExceeded("odd cycle packing enumeration", cap)
        for k in range(start, len(masks)):
            if not masks[k] & used:
                chosen.append(k)
                rec(k + 1, used | masks[k], chosen)
                chosen.pop()

    rec(0, 0, [])
    return odd, out


@lru_cache(maxsize=1 << 16)
def _structural_fractional(adj: tuple[int, ...], cap: int):
    """(best doubled value, min odd-cycle vertex total at that value, optimal packings)."""
    odd, packs = _packings(adj, cap)
    full = (1 << len(adj)) - 1
    best = -1
    rows = []
    for chosen, used in packs:
        covered = used.bit_count()
        value = covered + 2 * matching_number_mask(adj, full & ~used)
        rows.append((value, covered, chosen, used))
        best = max(best, value)
    tight = [r for r in rows if r[0] == best]
    min_cov = min(r[1] for r in tight)
    optimal = tuple((chosen, used) for v, cov, chosen, used in tight if cov == min_cov)
    return best, min_cov, optimal, odd


def fractional_matching_number_structural(g: MixedGraph) -> Fraction:
    """``m*`` as the best odd-cycle packing plus a maximum matching of the rest."""
    best, *_ = _structural_fractional(g.adj, budgets.enum_cap())
    return Fraction(best, 2)


def optimal_fractional_matchings(g: MixedGraph) -> list[FractionalMatching]:
    """All {0, 1/2, 1} optima of total ``m*`` with the most weight-1 edges.

    The half-weight edges of such an optimum form vertex-disjoint odd cycles and
    the weight-1 edges a maximum matching of what is left, so candidates are
    (packing, matching) pairs with the least odd-cycle coverage.
    """
    cap = budgets.enum_cap()
    _, _, optimal, odd = _structural_fractional(g.adj, cap)
    full = (1 << g.n) - 1
    idx = g.edge_index
    seen = set()
    out: list[FractionalMatching] = []
    for chosen, used in optimal:
        halves = []
        for k in chosen:
            vs = odd[k]
            q = len(vs)
            for t in range(q):
                a, b = vs[t], vs[(t + 1) % q]
                halves.append(idx[(a, b) if a < b else (b, a)])
        for m in enumerate_maximum_matchings(g, full & ~used):
            w = [0] * len(g.edges)
            for i in halves:
                w[i] = 1
            for i in m.edge_refs:
                w[i] = 2
            key = tuple(w)
            if key not in seen:
                seen.add(key)
                out.append(FractionalMatching(key))
                if len(out) > cap:
                    raise EnumerationBudgetExceeded("optimal fractional matchings", cap)
    return out


def has_fractional_perfect_matching(g: MixedGraph) -> bool:
    return fractional_matching_number_doubled(g) == g.n


def e1_boundary(g: MixedGraph, cyc: Cycle) -> frozenset[int]:
    """Edges with exactly one endpoint on ``cyc``."""
    on = cyc.vertex_mask
    return frozenset(
        i for i, e in enumerate(g.edges) if ((on >> e.u) & 1) != ((on >> e.v) & 1)
    )


def e2_support(f: FractionalMatching) -> frozenset[int]:
    """Edges carrying weight 1."""
    return frozenset(i for i, w in enumerate(f.doubled) if w == 2)


# -- odd cycle packing -------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _rho(adj: tuple[int, ...], cap: int) -> tuple[int, tuple[int, ...]]:
    odd, packs = _packings(adj, cap)
    best = max(packs, key=lambda p: len(p[0]))
    return len(best[0]), best[0]


def max_disjoint_odd_cycles(g: MixedGraph) -> tuple[OddCyclePacking, int]:
    cap = budgets.enum_cap()
    rho, chosen = _rho(g.adj, cap)
    odd = _odd_cycle_masks(g.adj)
    return OddCyclePacking(tuple(make_cycle(g, odd[k]) for k in chosen)), rho


def odd_cycle_packing_number(g: MixedGraph) -> int:
    return _rho(g.adj, budgets.enum_cap())[0]
