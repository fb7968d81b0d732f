"""MG1: line-oriented text encoding of a mixed graph.

    # comment
    n 4
    e 0 1      undirected edge
    a 1 2      arc 1 -> 2
"""

from __future__ import annotations

from .errors import DuplicateEdge, ParseError, VertexOutOfRange
from .graph import ARC, UNDIRECTED, EdgeRecord, MixedGraph


def _int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
    return val


def parse_mg1(text: str) -> MixedGraph:
    n = None
    recs: list[EdgeRecord] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head = toks[0]
        if n is None:
            if head != "n" or len(toks) != 2:
                raise ParseError("first record must be 'n <count>'", lineno)
            n = _int(toks[1], lineno)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", lineno)
            continue
        if head not in ("e", "a"):
            raise ParseError(f"unknown record {head!r}", lineno)
        if len(toks) != 3:
            raise ParseError(f"'{head}' takes exactly two vertices", lineno)
        u, v = _int(toks[1], lineno), _int(toks[2], lineno)
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexOutOfRange(f"vertex {x} outside 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"pair {key} listed twice", lineno)
        seen.add(key)
        recs.append(EdgeRecord(u, v, ARC if head == "a" else UNDIRECTED))
    if n is None:
        raise ParseError("missing 'n <count>' record")
    return MixedGraph(n, tuple(recs))


def emit_mg1(g: MixedGraph) -> str:
    """Normalized text: edges sorted by unordered pair, arcs as ``a tail head``."""
    lines = [f"n {g.n}"]
    for e in g.normalized().edges:
        lines.append(f"{'a' if e.kind is ARC else 'e'} {e.u} {e.v}")
    return "\n".join(lines) + "\n"
