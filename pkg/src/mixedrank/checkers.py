"""Decision procedures for the rank characterisations and the bound report.

Each ``check_*`` function decides its structural condition without computing
any matrix rank, so the rank can be used afterwards as an independent check.
Checkers raise :class:`NotApplicable` outside their hypotheses; that is a
distinct outcome from ``False``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import hermitian_rank
from .errors import InvalidParameters, MixedRankError
from .graph import (
    ARC,
    EdgeRecord,
    MixedGraph,
    _bits,
    _is_pendant_cycle,
    component_masks,
    contract_cycles,
    crucial_vertex_sets,
    cycle_vertex_tuples,
    cycles,
    cycles_pairwise_disjoint,
    is_bipartite,
    make_cycle,
    pendant_vertices,
)
from .matching import (
    e1_boundary,
    e2_support,
    fractional_matching_number_doubled,
    matching_number,
    odd_cycle_packing_number,
    optimal_fractional_matchings,
)


class NotApplicable(MixedRankError):
    """The graph is outside the hypotheses of the characterisation."""


@dataclass(frozen=True)
class Certificate:
    failed: str | None = None
    witness: dict = field(default_factory=dict)


class Family(enum.Enum):
    EVEN_CYCLE_CONG = "EvenCycleCong"
    ODD_CYCLE_ODD_SIG = "OddCycleOddSig"
    ODD_CYCLE_EVEN_SIG = "OddCycleEvenSig"
    X1 = "X1"
    X2 = "X2"
    Y1 = "Y1"
    Y2 = "Y2"
    G0 = "G0"
    F0 = "F0"
    ISOLATED_VERTEX = "IsolatedVertex"
    OTHER = "Other"


# components certifying rank 2m - 2kappa, resp. 2m - 2kappa + 1
G2_TAGS = frozenset({Family.ODD_CYCLE_ODD_SIG, Family.X1, Family.X2, Family.G0})
F2_TAGS = frozenset({Family.ODD_CYCLE_EVEN_SIG, Family.Y1, Family.Y2, Family.F0})
NEUTRAL_TAGS = frozenset({Family.EVEN_CYCLE_CONG, Family.ISOLATED_VERTEX})


@dataclass(frozen=True)
class FamilyLabel:
    tag: Family
    witness: dict = field(default_factory=dict)


def _kappa_c(g: MixedGraph) -> tuple[int, int]:
    cyc = cycle_vertex_tuples(g.adj)
    kappa = sum(1 for vs in cyc if len(vs) % 2 == 0)
    c = len(g.edges) - g.n + len(component_masks(g.adj))
    return kappa, c


# -- legacy lower bound ---------------------------------------------------------------------


def check_theorem_1_1(g: MixedGraph, require_even: bool = True) -> tuple[bool, Certificate]:
    """Decide ``r = 2m - 2c`` structurally.

    Conditions: cycles pairwise disjoint; every cycle even with
    ``sigma == q (mod 4)``; the contracted forest and the forest left after
    removing its cyclic vertices have equal matching numbers.
    ``require_even=False`` applies the congruence to odd cycles as well,
    which admits odd cycles with ``sigma == q (mod 4)``; kept for comparison.
    """
    cyc = cycles(g)
    used = 0
    for c in cyc:
        if used & c.vertex_mask:
            return False, Certificate("a", {"cycle": list(c.vertices)})
        used |= c.vertex_mask
    for c in cyc:
        if (require_even and not c.is_even) or not c.congruent():
            return False, Certificate(
                "b", {"cycle": list(c.vertices), "length": c.length, "sigma": c.sigma}
            )
    con = contract_cycles(g)
    mt = matching_number(con.tree)
    mb = matching_number(con.bracket)
    if mt != mb:
        return False, Certificate("c", {"m_T": mt, "m_bracket": mb})
    return True, Certificate(None, {"m_T": mt, "cycles": len(cyc)})


# -- family classification ---------------------------------------------------------------


def _theta_paths(g: MixedGraph, hubs: list[int]) -> list[list[int]]:
    a, b = hubs
    paths = []
    for start in g.neighbors(a):
        path = [a, start]
        prev, cur = a, start
        while cur != b:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            prev, cur = cur, nxt[0]
            path.append(cur)
        paths.append(path)
    return paths


def _classify_bicyclic(g: MixedGraph, degs: list[int]) -> FamilyLabel | None:
    cyc = [make_cycle(g, vs) for vs in cycle_vertex_tuples(g.adj)]
    deg4 = [v for v, d in enumerate(degs) if d == 4]
    deg3 = [v for v, d in enumerate(degs) if d == 3]
    others_two = all(d in (2, 3, 4) for d in degs)
    if not others_two:
        return None
    if len(deg4) == 1 and not deg3 and len(cyc) == 2:
        even = [c for c in cyc if c.is_even]
        odd = [c for c in cyc if not c.is_even]
        if len(even) != 1 or len(odd) != 1:
            return None
        ce, co = even[0], odd[0]
        wit = {
            "shape": "infinity",
            "even_cycle": list(ce.vertices),
            "odd_cycle": list(co.vertices),
            "sigma_even": ce.sigma,
            "sigma_odd": co.sigma,
        }
        if not ce.congruent():
            return None
        return FamilyLabel(Family.X1 if co.sigma % 2 else Family.Y1, wit)
    if len(deg3) == 2 and not deg4 and len(cyc) == 3:
        paths = _theta_paths(g, deg3)
        lengths = sorted(len(p) - 1 for p in paths)
        if sum(1 for x in lengths if x % 2) != 1:
            return None
        even = [c for c in cyc if c.is_even]
        odd = [c for c in cyc if not c.is_even]
        ce = even[0]
        wit = {
            "shape": "theta",
            "path_lengths": lengths,
            "even_cycle": list(ce.vertices),
            "sigma_even": ce.sigma,
            "sigma_odd": [c.sigma for c in odd],
        }
        # q + l + sigma == 2 (mod 4) with q + l = |C| + 2
        if (ce.length + ce.sigma) % 4 != 0:
            return None
        parities = {c.sigma % 2 for c in odd}
        if parities == {1}:
            return FamilyLabel(Family.X2, wit)
        if parities == {0}:
            return FamilyLabel(Family.Y2, wit)
        return None
    return None


def _pendant_cycle_pieces(g: MixedGraph):
    """(cycle, degree-3 vertex, H = G - V(C) + x) for each pendant cycle."""
    out = []
    for vs in cycle_vertex_tuples(g.adj):
        if not _is_pendant_cycle(g.adj, vs):
            continue
        x = next(v for v in vs if g.adj[v].bit_count() == 3)
        keep = [v for v in range(g.n) if v == x or v not in vs]
        h, vmap = g.induced(keep)
        out.append((make_cycle(g, vs), x, h))
    return out


def _is_f0_core(h1: MixedGraph, c_h: int) -> bool:
    """Crucial subgraph made of ``c_h`` cycles: one odd with even signature, the rest even."""
    odd_even_sig = 0
    n_cycles = 0
    for mask in component_masks(h1.adj):
        verts = _bits(mask)
        if len(verts) == 1:
            continue
        sub, _ = h1.induced(verts)
        if any(sub.adj[v].bit_count() != 2 for v in range(sub.n)):
            return False
        c = make_cycle(sub, cycle_vertex_tuples(sub.adj)[0])
        n_cycles += 1
        if c.is_even:
            continue
        if c.sigma % 2:
            return False
        odd_even_sig += 1
    return odd_even_sig == 1 and n_cycles == c_h


def classify_component(g: MixedGraph) -> FamilyLabel:
    """Family membership of a connected mixed graph."""
    if len(component_masks(g.adj)) > 1:
        raise InvalidParameters("classify_component needs a connected graph")
    if g.n == 1:
        return FamilyLabel(Family.ISOLATED_VERTEX)
    degs = [g.adj[v].bit_count() for v in range(g.n)]
    c = len(g.edges) - g.n + 1
    if c == 1 and all(d == 2 for d in degs):
        cyc = make_cycle(g, cycle_vertex_tuples(g.adj)[0])
        wit = {"length": cyc.length, "sigma": cyc.sigma}
        if not cyc.is_even:
            tag = Family.ODD_CYCLE_ODD_SIG if cyc.sigma % 2 else Family.ODD_CYCLE_EVEN_SIG
            return FamilyLabel(tag, wit)
        if cyc.congruent():
            return FamilyLabel(Family.EVEN_CYCLE_CONG, wit)
        return FamilyLabel(Family.OTHER, wit)
    if c == 2:
        lab = _classify_bicyclic(g, degs)
        if lab is not None:
            return lab
    if c < 1 or pendant_vertices(g) or not cycles_pairwise_disjoint(g):
        return FamilyLabel(Family.OTHER)
    pieces = _pendant_cycle_pieces(g)
    for cyc, x, h in pieces:
        if cyc.is_even or cyc.sigma % 2 == 0:
            continue
        ok, cert = check_theorem_1_1(h)
        if ok:
            return FamilyLabel(
                Family.G0, {"pendant_cycle": list(cyc.vertices), "attach": x, "H_n": h.n}
            )
    if c >= 2:
        all_cyc = cycles(g)
        odd = [cy for cy in all_cyc if not cy.is_even]
        pend_vs = {p[0].vertices for p in pieces}
        if (
            len(odd) == 1
            and odd[0].sigma % 2 == 0
            and odd[0].vertices in pend_vs
            and all(cy.congruent() for cy in all_cyc if cy.is_even)
        ):
            for cyc, x, h in pieces:
                if not cyc.is_even:
                    continue
                _, c_h = _kappa_c(h)
                for mask in sorted(crucial_vertex_sets(h)):
                    h1, _ = h.induced(_bits(mask))
                    if _is_f0_core(h1, c_h):
                        return FamilyLabel(
                            Family.F0,
                            {"pendant_cycle": list(cyc.vertices), "attach": x, "core_n": h1.n},
                        )
    return FamilyLabel(Family.OTHER)


# -- kappa = c - 1 characterisations ----------------------------------------------------------------


def _crucial_search(g: MixedGraph, target: frozenset, exactly_one: bool):
    kappa, c = _kappa_c(g)
    if kappa != c - 1:
        raise NotApplicable(f"kappa={kappa} but c-1={c - 1}")
    even = [vs for vs in cycle_vertex_tuples(g.adj) if len(vs) % 2 == 0]
    used = 0
    for vs in even:
        m = sum(1 << v for v in vs)
        if used & m:
            return False, Certificate("a", {"even_cycle": list(vs)})
        used |= m
    tried = 0
    for mask in sorted(crucial_vertex_sets(g)):
        g1, vmap = g.induced(_bits(mask))
        k1, _ = _kappa_c(g1)
        if k1 != kappa:
            continue
        tried += 1
        labels = []
        ok = True
        hits = 0
        for cm in component_masks(g1.adj):
            comp, cmap = g1.induced(_bits(cm))
            lab = classify_component(comp)
            if lab.tag in target:
                hits += 1
            elif lab.tag not in NEUTRAL_TAGS:
                ok = False
                break
            labels.append((lab.tag.value, [vmap[v] for v in cmap]))
        if not ok:
            continue
        if hits == 1 or (hits == 0 and not exactly_one):
            return True, Certificate(
                None, {"crucial_vertices": list(vmap), "components": labels}
            )
    return False, Certificate("b", {"crucial_subgraphs_with_kappa": tried})


def check_theorem_1_3(g: MixedGraph) -> tuple[bool, Certificate]:
    """Decide ``r = 2m - 2kappa`` for graphs with ``kappa = c - 1``."""
    return _crucial_search(g, G2_TAGS, exactly_one=False)


def check_theorem_1_4(g: MixedGraph) -> tuple[bool, Certificate]:
    """Decide ``r = 2m - 2kappa + 1`` for graphs with ``kappa = c - 1``."""
    return _crucial_search(g, F2_TAGS, exactly_one=True)


# -- bipartite nonsingularity ------------------------------------------------------------------------


def nonsingularity_conditions(g: MixedGraph) -> tuple[bool, bool, dict]:
    """Conditions (a) and (b) of the bipartite characterisation, without its precondition.

    (a) a fractional perfect matching exists.  (b) some optimal fractional
    matching meets the boundary of every even cycle with ``sigma == q (mod 4)``.
    The witness also records the weaker per-cycle reading under ``forall_exists``.
    """
    two_star = fractional_matching_number_doubled(g)
    bad = [c for c in cycles(g) if c.is_even and c.congruent()]
    boundaries = [e1_boundary(g, c) for c in bad]
    fs = optimal_fractional_matchings(g)
    supports = [e2_support(f) for f in fs]
    exists_all = any(all(b & s for b in boundaries) for s in supports)
    per_cycle = all(any(b & s for s in supports) for b in boundaries)
    wit = {
        "two_m_star": two_star,
        "optimal_count": len(fs),
        "congruent_even_cycles": len(bad),
        "forall_exists": per_cycle,
    }
    return two_star == g.n, exists_all, wit


def check_theorem_1_5(g: MixedGraph) -> tuple[bool, Certificate]:
    """Decide nonsingularity of a bipartite graph with pairwise disjoint cycles."""
    if not is_bipartite(g) or not cycles_pairwise_disjoint(g):
        raise NotApplicable("needs a bipartite graph with pairwise disjoint cycles")
    a, b, wit = nonsingularity_conditions(g)
    if not a:
        return False, Certificate("a", wit)
    if not b:
        return False, Certificate("b", wit)
    return True, Certificate(None, wit)


# -- bound report ------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    n: int
    r: int
    m: int
    two_m_star: int
    c: int
    kappa: int
    rho: int

    @property
    def lower_tight(self) -> bool:
        return self.r == 2 * self.m - 2 * self.kappa

    @property
    def lower_plus_one(self) -> bool:
        return self.r == 2 * self.m - 2 * self.kappa + 1

    @property
    def upper_tight(self) -> bool:
        return self.r == self.two_m_star

    @property
    def legacy_lower(self) -> bool:
        return self.r == 2 * self.m - 2 * self.c

    @property
    def forbidden_hit(self) -> bool:
        return self.r == 2 * self.m - 2 * self.c + 1

    def violations(self) -> list[str]:
        """Names of every inequality in the comparison chain that fails."""
        m2 = 2 * self.m
        out = []
        # the legacy bound is only comparable while kappa <= c
        if self.kappa <= self.c and not m2 - 2 * self.c <= m2 - 2 * self.kappa:
            out.append("legacy_le_lower")
        if not m2 - 2 * self.kappa <= self.r:
            out.append("lower_bound")
        if not self.r <= self.two_m_star:
            out.append("upper_bound")
        if not self.two_m_star <= min(m2 + self.rho, m2 + self.c):
            out.append("fractional_le_legacy_upper")
        if not m2 <= self.two_m_star <= self.n:
            out.append("fractional_range")
        if self.forbidden_hit:
            out.append("forbidden_value")
        return out

    def flags(self) -> dict[str, bool]:
        return {
            "lower_tight": self.lower_tight,
            "lower_plus_one": self.lower_plus_one,
            "upper_tight": self.upper_tight,
            "legacy_lower": self.legacy_lower,
            "forbidden_hit": self.forbidden_hit,
        }


def bound_report(g: MixedGraph, rank: int | None = None) -> BoundReport:
    kappa, c = _kappa_c(g)
    return BoundReport(
        n=g.n,
        r=hermitian_rank(g) if rank is None else rank,
        m=matching_number(g),
        two_m_star=fractional_matching_number_doubled(g),
        c=c,
        kappa=kappa,
        rho=odd_cycle_packing_number(g),
    )


# -- worked family ----------------------------------------------------------------------


def fig3_family(kappa: int, odd_signature: bool) -> MixedGraph:
    """Pendant edge ``u v`` with ``v`` joined to a triangle and ``kappa`` 4-cycles.

    ``u = 0`` is the pendant vertex, ``v = 1`` the hub.  The triangle sits on
    2, 3, 4 and carries one arc when ``odd_signature`` is set, none otherwise;
    the 4-cycles are undirected.  Removing ``u`` and ``v`` leaves their
    disjoint union.
    """
    if kappa < 1:
        raise InvalidParameters("kappa must be at least 1")
    recs = [EdgeRecord(0, 1), EdgeRecord(1, 2)]
    if odd_signature:
        recs += [EdgeRecord(2, 3, ARC), EdgeRecord(3, 4), EdgeRecord(4, 2)]
    else:
        recs += [EdgeRecord(2, 3), EdgeRecord(3, 4), EdgeRecord(4, 2)]
    base = 5
    for _ in range(kappa):
        ring = list(range(base, base + 4))
        recs.append(EdgeRecord(1, ring[0]))
        recs += [EdgeRecord(ring[i], ring[(i + 1) % 4]) for i in range(4)]
        base += 4
    return MixedGraph(base, tuple(recs))
