"""Exact oracles and witness checkers.

* :func:`enumerate_orders` runs an algorithm under every arrival order and
  returns the exact distribution of the number of colors.
* :func:`reach_tree` rebuilds the set of vertices joined to ``v`` by a path
  whose arrival times increase towards ``v``.
* :func:`check_increasing_paths` and :func:`check_error_paths` verify the
  path witnesses that bound FirstFit and ParityFirstFit colors.  Both work
  from the graph, the arrival order and the final colors only.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .algorithms import make_algorithm
from .errors import ConfigurationError, ParameterError
from .graph import Graph
from .reveal import PredictionVector, play

DEFAULT_CAP = 9


# -- exact distribution over all arrival orders ----------------------------------

@dataclass(frozen=True)
class ExactDistribution:
    instance_hash: str
    algorithm: str
    n: int
    counts: dict  # X -> number of orders
    total: int

    def probability(self, x: int) -> Fraction:
        return Fraction(self.counts.get(x, 0), self.total)

    def tail(self, ell: int) -> Fraction:
        """P[X >= ell]."""
        return Fraction(sum(c for x, c in self.counts.items() if x >= ell), self.total)

    @property
    def expectation(self) -> Fraction:
        return Fraction(sum(x * c for x, c in self.counts.items()), self.total)

    @property
    def max_colors(self) -> int:
        return max(self.counts)

    def to_dict(self) -> dict:
        return {
            "instance_hash": self.instance_hash,
            "algorithm": self.algorithm,
            "n": self.n,
            "orders": self.total,
            "counts": {str(x): self.counts[x] for x in sorted(self.counts)},
            "probabilities": {str(x): _frac(self.probability(x)) for x in sorted(self.counts)},
            "expectation": _frac(self.expectation),
        }


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _count_block(graph, algorithm_name, advice, first):
    algo = make_algorithm(algorithm_name)
    rest = [v for v in range(graph.n) if v != first]
    counts: dict[int, int] = {}
    for tail in itertools.permutations(rest):
        x = max(play(graph, (first,) + tail, advice, algo))
        counts[x] = counts.get(x, 0) + 1
    return counts


def enumerate_orders(
    graph: Graph,
    algorithm: str,
    predictions: Optional[PredictionVector] = None,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> ExactDistribution:
    """Distribution of the color count over all ``n!`` arrival orders.

    Work is split into blocks by the first arriving vertex; the merged
    counts do not depend on ``jobs``.
    """
    n = graph.n
    if n > cap:
        raise ParameterError(f"n={n} exceeds the enumeration cap {cap} ({n}! orders); use Monte Carlo instead")
    algo = make_algorithm(algorithm)
    if algo.requires_advice and predictions is None:
        raise ConfigurationError(f"algorithm {algorithm} needs predictions")
    advice = None if predictions is None else predictions.delivered
    if jobs > 1 and n > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_count_block, *zip(*[(graph, algorithm, advice, v) for v in range(n)])))
    else:
        parts = [_count_block(graph, algorithm, advice, v) for v in range(n)]
    counts: dict[int, int] = {}
    for part in parts:
        for x, c in part.items():
            counts[x] = counts.get(x, 0) + c
    total = math.factorial(n)
    assert sum(counts.values()) == total
    return ExactDistribution(graph.instance_hash(), algorithm, n, dict(sorted(counts.items())), total)


# -- oriented reach trees ------------------------------------------------------

@dataclass(frozen=True)
class OrientedReachTree:
    root: int
    members: frozenset
    in_edges: dict = field(hash=False)  # member -> earlier neighbors inside the tree

    def __contains__(self, v):
        return v in self.members


def reach_tree(graph: Graph, times: Sequence[int], v: int) -> OrientedReachTree:
    """All ``w`` joined to ``v`` by a path whose arrival times increase towards ``v``."""
    adj = graph.adjacency
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for u in adj[x]:
            if times[u] < times[x] and u not in seen:
                seen.add(u)
                queue.append(u)
    in_edges = {x: tuple(u for u in adj[x] if times[u] < times[x]) for x in seen}
    return OrientedReachTree(v, frozenset(seen), in_edges)


def longest_increasing_paths(graph: Graph, order: Sequence[int]) -> list[int]:
    """For every vertex, the most vertices on an arrival-increasing path ending there."""
    adj = graph.adjacency
    best = [0] * graph.n
    for v in order:
        b = 0
        for u in adj[v]:
            if best[u] > b:  # best[u] > 0 iff u already arrived
                b = best[u]
        best[v] = b + 1
    return best


def most_errors_on_paths(graph: Graph, order: Sequence[int], wrong: Sequence[bool]) -> list[int]:
    """For every vertex, the most wrongly predicted vertices on an arrival-increasing path ending there."""
    adj = graph.adjacency
    n = graph.n
    best = [0] * n
    arrived = [False] * n
    for v in order:
        b = 0
        for u in adj[v]:
            if arrived[u] and best[u] > b:
                b = best[u]
        best[v] = b + (1 if wrong[v] else 0)
        arrived[v] = True
    return best


def increasing_path_to(graph: Graph, order: Sequence[int], v: int) -> list[int]:
    """One longest arrival-increasing path ending at ``v`` (first vertex first)."""
    best = longest_increasing_paths(graph, order)
    times = [0] * graph.n
    for i, x in enumerate(order):
        times[x] = i
    path = [v]
    while best[path[-1]] > 1:
        x = path[-1]
        path.append(next(u for u in graph.adjacency[x] if times[u] < times[x] and best[u] == best[x] - 1))
    return path[::-1]


@dataclass
class WitnessReport:
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_increasing_paths(graph: Graph, order: Sequence[int], colors: Sequence[int]) -> WitnessReport:
    """Every vertex of color ``l`` ends an arrival-increasing path of ``>= l`` vertices."""
    best = longest_increasing_paths(graph, order)
    report = WitnessReport(graph.n)
    for v in range(graph.n):
        if best[v] < colors[v]:
            report.violations.append({"vertex": v, "color": colors[v], "longest_path": best[v], "table": best})
    return report


def check_error_paths(
    graph: Graph, order: Sequence[int], colors: Sequence[int], predictions: PredictionVector
) -> WitnessReport:
    """Every vertex of color ``l`` ends an arrival-increasing path holding
    ``>= (l - 1) // 4`` wrongly predicted vertices."""
    wrong = [d != t for d, t in zip(predictions.delivered, predictions.truth)]
    best = most_errors_on_paths(graph, order, wrong)
    report = WitnessReport(graph.n)
    for v in range(graph.n):
        need = (colors[v] - 1) // 4
        if best[v] < need:
            report.violations.append({"vertex": v, "color": colors[v], "errors_on_path": best[v],
                                      "required": need, "table": best})
    return report


def check_transcript_paths(transcript, graph: Graph) -> WitnessReport:
    """Increasing-path check on a recorded transcript."""
    return check_increasing_paths(graph, transcript.order, transcript.colors)


def check_transcript_errors(transcript, graph: Graph, predictions: Optional[PredictionVector] = None) -> WitnessReport:
    predictions = predictions if predictions is not None else transcript.predictions
    if predictions is None:
        raise ParameterError("error-path check needs the prediction vector")
    return check_error_paths(graph, transcript.order, transcript.colors, predictions)


# -- small trees up to isomorphism ------------------------------------------------

def rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of all rooted trees on ``n`` vertices (root level 1).

    Successor rule of Beyer and Hedetniemi, from the path down to the star.
    """
    if n < 1:
        return
    seq = list(range(1, n + 1))
    while True:
        yield list(seq)
        p = max((i for i in range(n) if seq[i] > 2), default=None)
        if p is None:
            return
        q = max(j for j in range(p) if seq[j] == seq[p] - 1)
        shift = p - q
        for i in range(p, n):
            seq[i] = seq[i - shift]


def tree_from_levels(levels: Sequence[int]) -> Graph:
    last_at: dict[int, int] = {}
    edges = []
    for i, lev in enumerate(levels):
        if lev > 1:
            edges.append((last_at[lev - 1], i))
        last_at[lev] = i
    return Graph(len(levels), edges)


def tree_centers(graph: Graph) -> list[int]:
    n = graph.n
    if n <= 2:
        return list(range(n))
    degree = [len(a) for a in graph.adjacency]
    layer = [v for v in range(n) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for u in graph.adjacency[leaf]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def canonical_tree_code(graph: Graph) -> str:
    """Isomorphism invariant of a tree: smallest center-rooted parenthesis code."""

    def code(v, parent):
        return "(" + "".join(sorted(code(u, v) for u in graph.adjacency[v] if u != parent)) + ")"

    return min(code(c, -1) for c in tree_centers(graph))


def nonisomorphic_trees(n: int) -> list[Graph]:
    """One representative tree per isomorphism class on ``n`` vertices."""
    found: dict[str, Graph] = {}
    for levels in rooted_level_sequences(n):
        tree = tree_from_levels(levels)
        found.setdefault(canonical_tree_code(tree), tree)
    return list(found.values())
