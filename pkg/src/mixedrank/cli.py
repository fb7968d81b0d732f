"""Command-line front end.  Every graph command reads MG1 from a file or stdin."""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import hermitian_charpoly, hermitian_rank
from .checkers import (
    NotApplicable,
    bound_report,
    check_theorem_1_1,
    check_theorem_1_3,
    check_theorem_1_4,
    check_theorem_1_5,
    classify_component,
)
from .corpus import EXHAUSTIVE, RANDOM, CorpusSpec, generate_corpus
from .errors import MixedRankError
from .graph import components, cycles
from .matching import fractional_matching_number, max_matching, optimal_fractional_matchings
from .mg1 import parse_mg1
from .verify import CHECKS, iter_verify, report_emit

THEOREMS = {
    "1.1": check_theorem_1_1,
    "1.3": check_theorem_1_3,
    "1.4": check_theorem_1_4,
    "1.5": check_theorem_1_5,
}


def _read_graph(path: str):
    if path == "-":
        return parse_mg1(sys.stdin.read())
    with open(path) as fh:
        return parse_mg1(fh.read())


def _n_range(text: str) -> tuple[int, int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return int(lo), int(hi)
    return int(text), int(text)


def cmd_rank(args) -> int:
    print(hermitian_rank(_read_graph(args.file)))
    return 0


def cmd_charpoly(args) -> int:
    print(" ".join(str(a) for a in hermitian_charpoly(_read_graph(args.file)).coeffs))
    return 0


def cmd_matching(args) -> int:
    g = _read_graph(args.file)
    mm, size = max_matching(g)
    print(size)
    for i in sorted(mm.edge_refs):
        e = g.edges[i]
        print(e.u, e.v)
    return 0


def cmd_fracmatching(args) -> int:
    g = _read_graph(args.file)
    print(fractional_matching_number(g))
    fs = optimal_fractional_matchings(g)
    if fs:
        f = fs[0]
        for e, w in zip(g.edges, f.doubled):
            if w:
                print(e.u, e.v, "1" if w == 2 else "1/2")
    return 0


def cmd_cycles(args) -> int:
    for c in cycles(_read_graph(args.file)):
        print(c.length, c.sigma, " ".join(map(str, c.vertices)))
    return 0


def cmd_classify(args) -> int:
    g = _read_graph(args.file)
    for comp, vmap in components(g):
        lab = classify_component(comp)
        print(lab.tag.value, " ".join(map(str, vmap)))
    return 0


def cmd_check(args) -> int:
    g = _read_graph(args.file)
    try:
        ok, cert = THEOREMS[args.theorem](g)
    except NotApplicable as exc:
        print(json.dumps({"result": "not_applicable", "reason": str(exc)}))
        return 0
    print(
        json.dumps(
            {"result": ok, "failed": cert.failed, "witness": cert.witness},
            sort_keys=True,
            default=str,
        )
    )
    return 0


def cmd_bounds(args) -> int:
    rep = bound_report(_read_graph(args.file))
    out = {
        "n": rep.n,
        "r": rep.r,
        "m": rep.m,
        "two_m_star": rep.two_m_star,
        "c": rep.c,
        "kappa": rep.kappa,
        "rho": rep.rho,
    }
    out.update(rep.flags())
    out["violations"] = rep.violations()
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    checks = CHECKS if args.checks == "all" else tuple(args.checks.split(","))
    spec = CorpusSpec(
        mode=args.mode,
        n_range=_n_range(args.n),
        edge_probability=args.p,
        trials=args.trials,
        seed=args.seed,
    )
    rows = list(iter_verify(generate_corpus(spec), checks, args.jobs))
    if args.out:
        with open(args.out + ".jsonl", "w") as jf, open(args.out + ".csv", "w") as cf:
            report_emit(rows, jf, cf)
    else:
        report_emit(rows, sys.stdout)
    bad = sum(1 for r in rows if r.violations)
    print(f"graphs={len(rows)} violations={bad}", file=sys.stderr)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    simple = {
        "rank": (cmd_rank, "exact H-rank"),
        "charpoly": (cmd_charpoly, "characteristic polynomial coefficients a_0..a_n"),
        "matching": (cmd_matching, "matching number and one maximum matching"),
        "fracmatching": (cmd_fracmatching, "fractional matching number and an optimum"),
        "cycles": (cmd_cycles, "simple cycles as: length sigma vertices"),
        "classify": (cmd_classify, "family label of each component"),
        "bounds": (cmd_bounds, "bound report as JSON"),
    }
    for name, (fn, help_text) in simple.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", default="-")
        p.set_defaults(func=fn)
    p = sub.add_parser("check", help="run one structural characterisation")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("verify", help="verify a generated corpus")
    p.add_argument("--mode", choices=[EXHAUSTIVE, RANDOM], default=EXHAUSTIVE)
    p.add_argument("--n", default="4", help="order or range lo-hi")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.3, help="edge probability (random mode)")
    p.add_argument("--checks", default="all", help="comma list from " + ",".join(CHECKS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="prefix for .jsonl and .csv outputs")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MixedRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
