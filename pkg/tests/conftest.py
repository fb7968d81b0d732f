from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from mixedrank import ARC, EdgeRecord, MixedGraph


@st.composite
def mixed_graphs(draw, min_n=0, max_n=7):
    """Random mixed graph: every pair absent / undirected / forward arc / backward arc."""
    n = draw(st.integers(min_n, max_n))
    recs = []
    for u, v in itertools.combinations(range(n), 2):
        s = draw(st.integers(0, 5))
        if s == 3:
            recs.append(EdgeRecord(u, v))
        elif s == 4:
            recs.append(EdgeRecord(u, v, ARC))
        elif s == 5:
            recs.append(EdgeRecord(v, u, ARC))
    return MixedGraph(n, tuple(recs))


def rand_graph(rng: random.Random, n: int, p: float = 0.4) -> MixedGraph:
    recs = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            k = rng.randrange(3)
            if k == 0:
                recs.append(EdgeRecord(u, v))
            elif k == 1:
                recs.append(EdgeRecord(u, v, ARC))
            else:
                recs.append(EdgeRecord(v, u, ARC))
    return MixedGraph(n, tuple(recs))


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
