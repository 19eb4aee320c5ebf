"""The online referee: arrival orders, predictions, and transcript recording.

The referee reveals one vertex at a time and hands the algorithm only the
already-revealed neighbors of that vertex (with their colors) plus an
optional advice bit.  It owns the transcript and rejects any color that
clashes with a revealed neighbor.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from .errors import ConfigurationError, ParameterError, ProtocolViolation
from .graph import Bipartition, Graph
from .rng import make_rng


# -- arrival orders ----------------------------------------------------------

@dataclass(frozen=True)
class ArrivalOrder:
    order: tuple[int, ...]
    provenance: str = "given"  # "given" | "uniform-random" | strategy name
    seed: Optional[int] = None

    def __len__(self):
        return len(self.order)

    def arrival_times(self) -> list[int]:
        times = [0] * len(self.order)
        for i, v in enumerate(self.order):
            times[v] = i
        return times


def given_order(order: Sequence[int], n: Optional[int] = None) -> ArrivalOrder:
    order = tuple(int(v) for v in order)
    n = len(order) if n is None else n
    if len(order) != n or sorted(order) != list(range(n)):
        raise ParameterError(f"order is not a permutation of 0..{n - 1}")
    return ArrivalOrder(order, "given")


def sample_order(n: int, seed: int) -> ArrivalOrder:
    """Uniform random permutation of ``0..n-1`` (Fisher-Yates via NumPy)."""
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    perm = make_rng(seed).permutation(n)
    return ArrivalOrder(tuple(perm.tolist()), "uniform-random", seed)


def adversarial_orders(graph: Graph, side: Optional[Sequence[int]] = None) -> dict[str, ArrivalOrder]:
    """A handful of deterministic, structure-driven orders.

    ``bfs``/``dfs`` start at vertex 0 and keep every prefix connected;
    ``reverse-bfs`` reveals far vertices first; ``leaves-first`` sorts by
    degree; ``side-first`` reveals one shore completely before the other,
    so every first-shore vertex arrives isolated.
    """
    n = graph.n
    adj = graph.adjacency
    bfs = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            bfs.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    dfs = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        while stack:
            x = stack.pop()
            if seen[x]:
                continue
            seen[x] = True
            dfs.append(x)
            stack.extend(y for y in reversed(adj[x]) if not seen[y])
    orders = {
        "bfs": bfs,
        "dfs": dfs,
        "reverse-bfs": bfs[::-1],
        "leaves-first": sorted(range(n), key=lambda v: (len(adj[v]), v)),
    }
    if side is not None:
        orders["side-first"] = sorted(range(n), key=lambda v: (-side[v], v))
    return {name: ArrivalOrder(tuple(o), name) for name, o in orders.items()}


# -- predictions --------------------------------------------------------------

@dataclass(frozen=True)
class PredictionVector:
    truth: tuple[int, ...]
    delivered: tuple[int, ...]
    error_set: frozenset
    k: int
    k_min: int

    @property
    def n(self) -> int:
        return len(self.truth)


def min_error_count(bip: Bipartition, delivered: Sequence[int]) -> int:
    """Errors against the best of the two 2-colorings of every component."""
    flips: dict[int, int] = {}
    sizes: dict[int, int] = {}
    for v, c in enumerate(bip.component):
        sizes[c] = sizes.get(c, 0) + 1
        if delivered[v] != bip.side[v]:
            flips[c] = flips.get(c, 0) + 1
    return sum(min(flips.get(c, 0), size - flips.get(c, 0)) for c, size in sizes.items())


def make_predictions(
    bip: Bipartition,
    error_mode: str = "none",
    k: Optional[int] = None,
    errors: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> PredictionVector:
    """Advice bits: truth is the canonical side, flipped on the chosen error set.

    ``error_mode`` is ``"none"``, ``"random"`` (exactly ``k`` distinct
    positions chosen uniformly with ``seed``) or ``"explicit"`` (``errors``).
    """
    n = bip.n
    truth = tuple(bip.side)
    if error_mode == "none":
        chosen: set[int] = set()
    elif error_mode == "random":
        if k is None or seed is None:
            raise ParameterError("random error mode needs k and seed")
        if not 0 <= k <= n:
            raise ParameterError(f"k={k} must lie in [0, n={n}]")
        chosen = set(make_rng(seed).choice(n, size=k, replace=False).tolist())
    elif error_mode == "explicit":
        chosen = set(int(v) for v in (errors or ()))
        bad = [v for v in chosen if not 0 <= v < n]
        if bad:
            raise ParameterError(f"error positions outside [0, {n}): {sorted(bad)}")
    else:
        raise ParameterError(f"unknown error mode {error_mode!r}")
    delivered = tuple(1 - t if v in chosen else t for v, t in enumerate(truth))
    return PredictionVector(truth, delivered, frozenset(chosen), len(chosen), min_error_count(bip, delivered))


# -- algorithms' contract ------------------------------------------------------

class OnlineColorer(Protocol):
    """What the referee needs from an online coloring algorithm.

    ``color_next`` receives the new vertex, its revealed neighbors, their
    colors (same order) and the advice bit (or ``None``).  Nothing about
    unrevealed vertices is ever passed in.
    """

    name: str
    requires_advice: bool

    def reset(self) -> None: ...

    def color_next(self, vertex: int, neighbors: list, neighbor_colors: list, advice: Optional[int]) -> int: ...


# -- transcripts ----------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    vertex: int
    neighbors: tuple[int, ...]
    advice: Optional[int]
    color: int


@dataclass
class ColoringTranscript:
    algorithm: str
    order: tuple[int, ...]
    colors: tuple[int, ...]  # indexed by vertex id
    steps: Optional[list[Step]] = None
    predictions: Optional[PredictionVector] = None
    instance_hash: Optional[str] = None
    seeds: dict = field(default_factory=dict)

    @property
    def X(self) -> int:
        return max(self.colors, default=0)

    @property
    def distinct_colors(self) -> int:
        return len(set(self.colors))

    @property
    def k(self) -> Optional[int]:
        return None if self.predictions is None else self.predictions.k

    @property
    def k_min(self) -> Optional[int]:
        return None if self.predictions is None else self.predictions.k_min

    def arrival_times(self) -> list[int]:
        times = [0] * len(self.order)
        for i, v in enumerate(self.order):
            times[v] = i
        return times

    def to_dict(self) -> dict:
        steps = self.steps
        if steps is None:
            raise ValueError("transcript was recorded without steps; rerun with record=True")
        return {
            "instance_hash": self.instance_hash,
            "seeds": dict(self.seeds),
            "algorithm": self.algorithm,
            "steps": [
                {"vertex": s.vertex, "neighbors": list(s.neighbors), "advice": s.advice, "color": s.color}
                for s in steps
            ],
            "X": self.X,
            "k": self.k,
            "k_min": self.k_min,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _advice_list(predictions, algorithm, n):
    if predictions is None:
        if getattr(algorithm, "requires_advice", False):
            raise ConfigurationError(f"algorithm {algorithm.name} needs predictions")
        return None
    if predictions.n != n:
        raise ParameterError(f"predictions cover {predictions.n} vertices, graph has {n}")
    return predictions.delivered


def play(graph: Graph, order: Sequence[int], advice: Optional[Sequence[int]], algorithm, steps=None) -> list[int]:
    """Drive ``algorithm`` through ``order``; return the color of every vertex.

    Lean inner loop shared by :func:`run`, the exact oracle and the harness.
    When ``steps`` is a list, one :class:`Step` per reveal is appended to it.
    """
    n = graph.n
    if len(order) != n:
        raise ParameterError(f"order has {len(order)} vertices, graph has {n}")
    adj = graph.adjacency
    colors = [0] * n
    algorithm.reset()
    color_next = algorithm.color_next
    for i, v in enumerate(order):
        if colors[v]:
            raise ParameterError(f"vertex {v} appears twice in the order")
        nb = [u for u in adj[v] if colors[u]]
        nc = [colors[u] for u in nb]
        a = None if advice is None else advice[v]
        c = color_next(v, nb, nc, a)
        if type(c) is not int or c < 1:
            raise ProtocolViolation(i, v, c, "colors must be positive integers")
        if c in nc:
            raise ProtocolViolation(i, v, c, f"same color as revealed neighbor {nb[nc.index(c)]}")
        colors[v] = c
        if steps is not None:
            steps.append(Step(v, tuple(nb), a, c))
    return colors


def run(
    graph: Graph,
    order: ArrivalOrder,
    predictions: Optional[PredictionVector],
    algorithm,
    record: bool = True,
) -> ColoringTranscript:
    """Referee one online run and return its transcript."""
    advice = _advice_list(predictions, algorithm, graph.n)
    steps = [] if record else None
    colors = play(graph, order.order, advice, algorithm, steps)
    seeds = {}
    if order.seed is not None:
        seeds["order"] = order.seed
    return ColoringTranscript(
        algorithm=algorithm.name,
        order=tuple(order.order),
        colors=tuple(colors),
        steps=steps,
        predictions=predictions,
        instance_hash=graph.instance_hash(),
        seeds=seeds,
    )


def replay(graph: Graph, data: dict, algorithm) -> ColoringTranscript:
    """Re-run a serialized transcript's order and advice against ``graph``."""
    if data.get("instance_hash") not in (None, graph.instance_hash()):
        raise ParameterError("transcript was recorded on a different instance")
    order = [s["vertex"] for s in data["steps"]]
    advice = [0] * graph.n
    has_advice = False
    for s in data["steps"]:
        if s["advice"] is not None:
            has_advice = True
            advice[s["vertex"]] = s["advice"]
    steps: list[Step] = []
    colors = play(graph, given_order(order, graph.n).order, advice if has_advice else None, algorithm, steps)
    return ColoringTranscript(algorithm.name, tuple(order), tuple(colors), steps,
                              instance_hash=graph.instance_hash(), seeds=dict(data.get("seeds", {})))


class OnlineSession:
    """Incremental referee for instances built on the fly (adversary games).

    Vertices get ids in reveal order; ``reveal`` takes the new vertex's
    neighbors among already revealed vertices.
    """

    def __init__(self, algorithm):
        self.algorithm = algorithm
        algorithm.reset()
        self.colors: list[int] = []
        self.advice: list[Optional[int]] = []
        self.edges: list[tuple[int, int]] = []
        self.steps: list[Step] = []

    def __len__(self):
        return len(self.colors)

    def reveal(self, neighbors: Sequence[int], advice: Optional[int]) -> int:
        v = len(self.colors)
        nb = sorted(set(neighbors))
        if any(not 0 <= u < v for u in nb):
            raise ParameterError(f"neighbors of vertex {v} must be revealed vertices")
        nc = [self.colors[u] for u in nb]
        c = self.algorithm.color_next(v, list(nb), nc, advice)
        if type(c) is not int or c < 1:
            raise ProtocolViolation(v, v, c, "colors must be positive integers")
        if c in nc:
            raise ProtocolViolation(v, v, c, f"same color as revealed neighbor {nb[nc.index(c)]}")
        self.colors.append(c)
        self.advice.append(advice)
        self.edges.extend((u, v) for u in nb)
        self.steps.append(Step(v, tuple(nb), advice, c))
        return c

    def graph(self) -> Graph:
        return Graph(len(self.colors), self.edges)

    def transcript(self) -> ColoringTranscript:
        g = self.graph()
        n = g.n
        return ColoringTranscript(self.algorithm.name, tuple(range(n)), tuple(self.colors), list(self.steps),
                                  instance_hash=g.instance_hash())
