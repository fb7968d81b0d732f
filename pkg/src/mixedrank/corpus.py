"""Seeded random and exhaustive corpora of labeled mixed graphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import budgets
from .errors import InvalidParameters
from .graph import ARC, UNDIRECTED, EdgeRecord, MixedGraph

EXHAUSTIVE = "exhaustive"
RANDOM = "random"


@dataclass(frozen=True)
class CorpusSpec:
    mode: str
    n_range: tuple[int, int]
    edge_probability: float = 0.3
    # probabilities of (undirected, arc u->v, arc v->u) for a present pair u < v
    orientation_distribution: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.n_range
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise InvalidParameters(f"unknown corpus mode {self.mode!r}")
        if lo < 0 or hi < lo:
            raise InvalidParameters(f"bad n range {self.n_range}")
        if self.trials < 1:
            raise InvalidParameters("trials must be at least 1")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise InvalidParameters("edge probability outside [0, 1]")
        probs = self.orientation_distribution
        if len(probs) != 3 or min(probs) < 0 or not math.isclose(sum(probs), 1.0):
            raise InvalidParameters("orientation distribution must be 3 probabilities summing to 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameters("seed must fit in 64 bits")
        if self.mode == EXHAUSTIVE and hi > budgets.exhaustive_max_n():
            raise InvalidParameters(
                f"exhaustive mode is capped at n={budgets.exhaustive_max_n()}"
            )

    def size(self) -> int:
        lo, hi = self.n_range
        if self.mode == RANDOM:
            return self.trials * (hi - lo + 1)
        return sum(4 ** (n * (n - 1) // 2) for n in range(lo, hi + 1))


def _pair_records(u: int, v: int) -> tuple[None, EdgeRecord, EdgeRecord, EdgeRecord]:
    return (None, EdgeRecord(u, v, UNDIRECTED), EdgeRecord(u, v, ARC), EdgeRecord(v, u, ARC))


def exhaustive_graphs(n: int) -> Iterator[MixedGraph]:
    """All ``4**C(n,2)`` labeled mixed graphs on ``n`` vertices.

    Pair states are absent / undirected / arc u->v / arc v->u, enumerated with
    the pair list in lexicographic order and the last pair varying fastest.
    """
    opts = [_pair_records(u, v) for u, v in itertools.combinations(range(n), 2)]
    for choice in itertools.product(*opts):
        yield MixedGraph(n, tuple(r for r in choice if r is not None))


def random_graph(n: int, p: float, probs, seed: int, trial: int) -> MixedGraph:
    """A pure function of its arguments; ``(seed, n, trial)`` seeds the generator."""
    rng = np.random.default_rng([seed, n, trial])
    pairs = list(itertools.combinations(range(n), 2))
    present = rng.random(len(pairs)) < p
    states = rng.choice(3, size=len(pairs), p=probs)
    recs = []
    for (u, v), keep, s in zip(pairs, present, states):
        if keep:
            recs.append(_pair_records(u, v)[int(s) + 1])
    return MixedGraph(n, tuple(recs))


def generate_corpus(spec: CorpusSpec) -> Iterator[MixedGraph]:
    lo, hi = spec.n_range
    for n in range(lo, hi + 1):
        if spec.mode == EXHAUSTIVE:
            yield from exhaustive_graphs(n)
        else:
            for t in range(spec.trials):
                yield random_graph(
                    n, spec.edge_probability, spec.orientation_distribution, spec.seed, t
                )
