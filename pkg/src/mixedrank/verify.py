"""Corpus verification runs: one row of facts and checker outcomes per graph."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import multiprocessing
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from typing import IO, Iterable, Iterator

from .algebra import hermitian_charpoly, hermitian_rank
from .checkers import (
    BoundReport,
    NotApplicable,
    bound_report,
    check_theorem_1_1,
    check_theorem_1_3,
    check_theorem_1_4,
    check_theorem_1_5,
)
from .corpus import CorpusSpec, generate_corpus
from .errors import BudgetExceeded, InvalidParameters
from .graph import (
    MixedGraph,
    _bits,
    canonical_form,
    component_masks,
    cycle_vertex_tuples,
    is_bipartite,
    make_cycle,
)
from .matching import (
    _structural_fractional,
    find_augmenting_path,
    has_unique_max_matching,
    matching_number,
    matching_number_mask,
    max_matching,
    Matching,
)
from .mg1 import emit_mg1
from .sachs import cycle_rank_formula, identification_rank, sachs_coefficients
from . import budgets

CHECKS = ("bounds", "thm11", "thm13", "thm14", "thm15", "sachs", "lemmas")
FLAG_NAMES = ("lower_tight", "lower_plus_one", "upper_tight", "legacy_lower", "forbidden_hit")


def graph_id(g: MixedGraph) -> str:
    return hashlib.sha256(repr(canonical_form(g)).encode()).hexdigest()[:16]


@dataclass
class VerificationRow:
    index: int
    graph_id: str
    mg1: str
    n: int
    # None when the bound report itself ran out of budget
    report: BoundReport | None
    results: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        rep = self.report
        out = {"index": self.index, "graph_id": self.graph_id, "n": self.n}
        if rep is not None:
            out.update(r=rep.r, m=rep.m, two_m_star=rep.two_m_star, c=rep.c, kappa=rep.kappa, rho=rep.rho)
            out.update(rep.flags())
        out["results"] = self.results
        out["violations"] = self.violations
        out["errors"] = self.errors
        out["mg1"] = self.mg1
        if timing:
            out["elapsed"] = self.elapsed
        return out


# -- lemma-level invariants -------------------------------------------------------------


def _rank_of(g: MixedGraph, keep: Iterable[int]) -> int:
    return hermitian_rank(g.induced(keep)[0])


def lemma_violations(g: MixedGraph, r: int, m: int) -> list[str]:
    """Names of the small rank/matching identities that fail on ``g``."""
    bad: list[str] = []
    n = g.n
    full = (1 << n) - 1
    adj = g.adj
    verts = range(n)
    omega = len(component_masks(adj))
    c = len(g.edges) - n + omega

    for v in verts:
        rv = _rank_of(g, (w for w in verts if w != v))
        if not r - 2 <= rv <= r:
            bad.append("vertex_deletion_rank")
            break
    for v in verts:
        mv = matching_number_mask(adj, full & ~(1 << v))
        if not m - 1 <= mv <= m:
            bad.append("vertex_deletion_matching")
            break

    comps = component_masks(adj)
    if sum(_rank_of(g, _bits(cm)) for cm in comps) != r:
        bad.append("component_additivity")
    if (r == 0) != (len(g.edges) == 0):
        bad.append("zero_rank_iff_edgeless")
    if c == 0 and r != 2 * m:
        bad.append("forest_rank")
    if omega == 1 and n >= 3 and all(adj[v].bit_count() == 2 for v in verts):
        cyc = make_cycle(g, cycle_vertex_tuples(adj)[0])
        if r != cycle_rank_formula(cyc.length, cyc.sigma):
            bad.append("cycle_rank_table")

    legacy = r == 2 * m - 2 * c
    for x in verts:
        if adj[x].bit_count() != 1:
            continue
        y = _bits(adj[x])[0]
        rest = [w for w in verts if w not in (x, y)]
        sub, _ = g.induced(rest)
        if r != hermitian_rank(sub) + 2:
            bad.append("pendant_k2_rank")
        m_y = matching_number_mask(adj, full & ~(1 << y))
        m_xy = matching_number_mask(adj, full & ~(1 << x) & ~(1 << y))
        if not m_y == m_xy == m - 1:
            bad.append("pendant_matching")
        if legacy:
            on_cycle = any(y in vs for vs in cycle_vertex_tuples(adj))
            ms = matching_number(sub)
            cs = len(sub.edges) - sub.n + len(component_masks(sub.adj))
            if on_cycle or hermitian_rank(sub) != 2 * ms - 2 * cs:
                bad.append("pendant_legacy_inheritance")

    for vs in cycle_vertex_tuples(adj):
        attach = [v for v in vs if adj[v].bit_count() != 2]
        if len(attach) != 1:
            continue
        x = attach[0]
        cyc = make_cycle(g, vs)
        h_keep = [w for w in verts if w == x or w not in vs]
        rh = _rank_of(g, h_keep)
        rf = _rank_of(g, (w for w in h_keep if w != x))
        expect = identification_rank(rh, rf, cyc.length, cyc.sigma)
        if expect is not None and expect != r:
            bad.append("coalescence_rank")
        if cyc.length % 2 and adj[x].bit_count() == 3:
            hmask = sum(1 << w for w in h_keep)
            if m != matching_number_mask(adj, hmask) + (cyc.length - 1) // 2:
                bad.append("pendant_odd_cycle_matching")

    if r == 2 * m - 2 * c + 1:
        bad.append("forbidden_value")
    if is_bipartite(g):
        two_star = bound_report(g, rank=r).two_m_star
        if two_star != 2 * m:
            bad.append("bipartite_fractional")

    mm, size = max_matching(g)
    if find_augmenting_path(g, mm) is not None:
        bad.append("augmenting_path_maximum")
    if size:
        smaller = Matching(frozenset(sorted(mm.edge_refs)[1:]))
        if find_augmenting_path(g, smaller) is None:
            bad.append("augmenting_path_deficient")
    if has_unique_max_matching(g) and r < 2 * m:
        bad.append("unique_matching_rank")
    return sorted(set(bad))


# -- per-graph verification --------------------------------------------------------------


def _checker_outcome(fn, g: MixedGraph):
    try:
        ok, cert = fn(g)
    except NotApplicable:
        return "not_applicable", None
    return ok, cert


def verify_graph(g: MixedGraph, checks: Iterable[str] = CHECKS, index: int = 0) -> VerificationRow:
    checks = set(checks)
    unknown = checks - set(CHECKS)
    if unknown:
        raise InvalidParameters(f"unknown checks {sorted(unknown)}")
    t0 = time.perf_counter()
    r = hermitian_rank(g)
    row = VerificationRow(index=index, graph_id=graph_id(g), mg1=emit_mg1(g), n=g.n, report=None)
    try:
        rep = bound_report(g, rank=r)
    except BudgetExceeded as exc:
        row.errors.append(f"report: {exc}")
        row.elapsed = time.perf_counter() - t0
        return row
    row.report = rep
    res = row.results
    bad = row.violations
    m2 = 2 * rep.m

    def guarded(name, fn):
        try:
            fn()
        except BudgetExceeded as exc:
            row.errors.append(f"{name}: {exc}")

    def do_bounds():
        bad.extend(rep.violations())
        best, _, _, _ = _structural_fractional(g.adj, budgets.enum_cap())
        res["two_m_star_structural"] = best
        if best != rep.two_m_star:
            bad.append("fractional_oracle")
        res["bipartite"] = is_bipartite(g)
        if res["bipartite"] and rep.two_m_star != m2:
            bad.append("bipartite_fractional")
        res["unique_max_matching"] = has_unique_max_matching(g)
        if res["unique_max_matching"] and r < m2:
            bad.append("unique_matching_rank")

    def do_thm(name, fn, target):
        ok, cert = _checker_outcome(fn, g)
        entry = {"holds": ok, "rank_identity": target}
        if cert is not None:
            entry["failed"] = cert.failed
            if "forall_exists" in cert.witness:
                entry["forall_exists"] = cert.witness["forall_exists"]
        res[name] = entry
        if ok != "not_applicable" and ok != target:
            bad.append(name)

    def do_sachs():
        sc = sachs_coefficients(g)
        cp = list(hermitian_charpoly(g).coeffs)
        res["sachs_match"] = sc == cp
        if sc != cp:
            bad.append("sachs")

    def do_lemmas():
        lv = lemma_violations(g, r, rep.m)
        res["lemma_violations"] = lv
        bad.extend(f"lemma:{x}" for x in lv)

    if "bounds" in checks:
        guarded("bounds", do_bounds)
    if "thm11" in checks:
        guarded("thm11", lambda: do_thm("thm11", check_theorem_1_1, r == m2 - 2 * rep.c))
    if "thm13" in checks:
        guarded("thm13", lambda: do_thm("thm13", check_theorem_1_3, r == m2 - 2 * rep.kappa))
    if "thm14" in checks:
        guarded(
            "thm14", lambda: do_thm("thm14", check_theorem_1_4, r == m2 - 2 * rep.kappa + 1)
        )
    if "thm15" in checks:
        guarded("thm15", lambda: do_thm("thm15", check_theorem_1_5, r == g.n))
    if "sachs" in checks:
        guarded("sachs", do_sachs)
    if "lemmas" in checks:
        guarded("lemmas", do_lemmas)
    row.violations = sorted(set(bad))
    row.elapsed = time.perf_counter() - t0
    return row


def _verify_indexed(item, checks):
    i, g = item
    return verify_graph(g, checks, index=i)


def iter_verify(
    graphs: Iterable[MixedGraph], checks: Iterable[str] = CHECKS, jobs: int = 1
) -> Iterator[VerificationRow]:
    """Rows in input order; ``jobs > 1`` fans out over a process pool."""
    checks = tuple(sorted(set(checks)))
    work = partial(_verify_indexed, checks=checks)
    indexed = enumerate(graphs)
    if jobs <= 1:
        yield from map(work, indexed)
        return
    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap(work, indexed, chunksize=64)


@dataclass
class Report:
    rows: list
    counts: Counter
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0


def summarize(rows: Iterable[VerificationRow]) -> Counter:
    """Counts per (n, flag), plus per-n 'graphs', 'violation' and 'error' totals."""
    counts: Counter = Counter()
    for row in rows:
        n = row.n
        counts[(n, "graphs")] += 1
        if row.report is not None:
            for name, val in row.report.flags().items():
                if val:
                    counts[(n, name)] += 1
        if row.errors:
            counts[(n, "error")] += 1
        if row.violations:
            counts[(n, "violation")] += 1
    return counts


def run_verify(spec: CorpusSpec, checks: Iterable[str] = CHECKS, jobs: int = 1) -> Report:
    rows = list(iter_verify(generate_corpus(spec), checks, jobs))
    counts = summarize(rows)
    return Report(rows, counts, sum(1 for r in rows if r.violations))


def report_emit(
    rows: Iterable[VerificationRow],
    jsonl: IO[str] | None = None,
    csv_out: IO[str] | None = None,
    timing: bool = False,
) -> tuple[str, str]:
    """Write JSON lines and the (n, flag) count table; also return both as text."""
    rows = list(rows)
    jbuf = io.StringIO()
    for row in rows:
        jbuf.write(json.dumps(row.to_dict(timing), sort_keys=True) + "\n")
    counts = summarize(rows)
    cbuf = io.StringIO()
    w = csv.writer(cbuf, lineterminator="\n")
    w.writerow(["n", "flag", "count"])
    for (n, flag), k in sorted(counts.items()):
        w.writerow([n, flag, k])
    if jsonl is not None:
        jsonl.write(jbuf.getvalue())
    if csv_out is not None:
        csv_out.write(cbuf.getvalue())
    return jbuf.getvalue(), cbuf.getvalue()
