"""Instance generators: fixed tree families, uniform labeled trees, random bipartite graphs."""
from __future__ import annotations

import heapq
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .errors import ParameterError
from .graph import Graph, read_edge_list
from .rng import check_seed, make_rng

FAMILIES = (
    "path",
    "star",
    "complete-binary-tree",
    "spider",
    "random-labeled-tree",
    "random-bipartite",
    "from-file",
)
TREE_FAMILIES = frozenset({"path", "star", "complete-binary-tree", "spider", "random-labeled-tree"})
RANDOM_FAMILIES = frozenset({"random-labeled-tree", "random-bipartite"})


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    n: int = 0
    seed: Optional[int] = None
    p: Optional[float] = None  # random-bipartite edge probability
    legs: Optional[int] = None  # spider leg count
    path: Optional[str] = None  # from-file source

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceSpec":
        return cls(**data)

    def with_seed(self, seed: int) -> "InstanceSpec":
        return InstanceSpec(self.family, self.n, seed, self.p, self.legs, self.path)

    @property
    def is_random(self) -> bool:
        return self.family in RANDOM_FAMILIES


def generate(spec: InstanceSpec) -> Graph:
    """Build the graph described by ``spec``; a pure function of the spec."""
    family, n = spec.family, spec.n
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family == "from-file":
        if not spec.path:
            raise ParameterError("from-file needs a path")
        return read_edge_list(spec.path)
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if family == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if family == "star":
        return Graph(n, [(0, i) for i in range(1, n)])
    if family == "complete-binary-tree":
        if (n + 1) & n:
            raise ParameterError(f"complete binary tree needs n = 2^h - 1, got {n}")
        return Graph(n, [(i, c) for i in range(n) for c in (2 * i + 1, 2 * i + 2) if c < n])
    if family == "spider":
        return _spider(n, spec.legs)
    if spec.seed is None:
        raise ParameterError(f"family {family} requires a seed")
    rng = make_rng(check_seed(spec.seed))
    if family == "random-labeled-tree":
        if n == 1:
            return Graph(1)
        return prufer_decode(rng.integers(0, n, size=n - 2).tolist(), n)
    # random-bipartite
    p = spec.p
    if p is None or not 0.0 <= p <= 1.0:
        raise ParameterError(f"random-bipartite needs edge probability p in [0, 1], got {p!r}")
    left = (n + 1) // 2
    right = n - left
    hits = rng.random((left, right)) < p
    us, vs = hits.nonzero()
    return Graph(n, zip(us.tolist(), (vs + left).tolist()))


def _spider(n, legs):
    if legs is None or legs < 1:
        raise ParameterError(f"spider needs a positive leg count, got {legs!r}")
    if (n - 1) % legs:
        raise ParameterError(f"spider with {legs} legs needs n = 1 + legs * length, got n={n}")
    length = (n - 1) // legs
    edges = []
    for j in range(legs):
        prev = 0
        for i in range(length):
            v = 1 + j * length + i
            edges.append((prev, v))
            prev = v
    return Graph(n, edges)


def prufer_decode(sequence: Sequence[int], n: int) -> Graph:
    """Labeled tree on ``0..n-1`` whose Prüfer sequence is ``sequence`` (linear time)."""
    if n < 2:
        raise ParameterError(f"Prüfer decoding needs n >= 2, got {n}")
    seq = list(sequence)
    if len(seq) != n - 2:
        raise ParameterError(f"Prüfer sequence for n={n} must have length {n - 2}, got {len(seq)}")
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ParameterError(f"Prüfer label {x} outside [0, {n})")
        degree[x] += 1
    ptr = degree.index(1)
    leaf = ptr
    edges = []
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return Graph(n, edges)


def prufer_encode(graph: Graph) -> list[int]:
    """Prüfer sequence of a labeled tree, by repeatedly pruning the smallest leaf."""
    n = graph.n
    if n < 2 or not graph.is_tree():
        raise ParameterError("Prüfer encoding needs a tree with at least 2 vertices")
    degree = [len(a) for a in graph.adjacency]
    removed = [False] * n
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    out = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        nbr = next(u for u in graph.adjacency[leaf] if not removed[u])
        out.append(nbr)
        degree[nbr] -= 1
        if degree[nbr] == 1:
            heapq.heappush(leaves, nbr)
    return out
