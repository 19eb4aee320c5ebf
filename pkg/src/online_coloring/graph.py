"""Simple undirected graphs, validation, canonical bipartitions, edge-list I/O."""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EdgeListFormatError, GraphValidationError, NotBipartiteError


@dataclass(frozen=True)
class Violation:
    kind: str  # "self-loop" | "duplicate" | "out-of-range" | "bad-vertex-count"
    edge: tuple[int, int] | None
    detail: str

    def __str__(self):
        return self.detail


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(str(v) for v in self.violations)


def validate_edges(n: int, edges: Iterable[tuple[int, int]]) -> ValidationReport:
    """Check vertex count, self-loops, duplicates and endpoint ranges."""
    found = []
    if not isinstance(n, int) or n < 1:
        found.append(Violation("bad-vertex-count", None, f"vertex count must be a positive integer, got {n!r}"))
        return ValidationReport(tuple(found))
    seen = set()
    for u, v in edges:
        if u == v:
            found.append(Violation("self-loop", (u, v), f"self-loop at {u}"))
            continue
        if not (0 <= u < n and 0 <= v < n):
            found.append(Violation("out-of-range", (u, v), f"endpoint out of range in edge ({u}, {v}) for n={n}"))
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            found.append(Violation("duplicate", key, f"duplicate edge {key}"))
            continue
        seen.add(key)
    return ValidationReport(tuple(found))


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored normalized as ``(u, v)`` with ``u < v``; ``adjacency[v]``
    is the sorted tuple of neighbors of ``v``.
    """

    __slots__ = ("n", "edges", "adjacency", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        edges = list(edges)
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2) if edges else np.zeros((0, 2), np.int64)
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if (
            not isinstance(n, int) or n < 1
            or (lo == hi).any() or (lo < 0).any() or (hi >= n).any()
            or np.unique(lo * n + hi).size != lo.size
        ):
            raise GraphValidationError(validate_edges(n, [(int(u), int(v)) for u, v in edges]))
        perm = np.argsort(lo * n + hi, kind="stable")
        lo, hi = lo[perm], hi[perm]
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        idx = np.lexsort((dst, src))
        flat = dst[idx].tolist()
        off = np.concatenate([[0], np.cumsum(np.bincount(src, minlength=n))]).tolist()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(zip(lo.tolist(), hi.tolist())))
        object.__setattr__(self, "adjacency", tuple(tuple(flat[off[i]:off[i + 1]]) for i in range(n)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        return len(components(self)) == 1

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabeled to ``0..len(vertices)-1``, plus the id map."""
        ids = list(vertices)
        index = {v: i for i, v in enumerate(ids)}
        sub = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(ids), sub), ids

    def instance_hash(self) -> str:
        """SHA-256 of the canonical edge-list text."""
        h = self._hash
        if h is None:
            h = hashlib.sha256(to_edge_list(self).encode()).hexdigest()
            object.__setattr__(self, "_hash", h)
        return h


def validate(graph: Graph) -> ValidationReport:
    """Re-check the invariants of an existing graph (adjacency included)."""
    report = validate_edges(graph.n, graph.edges)
    if not report.ok:
        return report
    problems = []
    for v, nbrs in enumerate(graph.adjacency):
        for u in nbrs:
            key = (u, v) if u < v else (v, u)
            if v not in graph.adjacency[u]:
                problems.append(Violation("adjacency", key, f"adjacency of {u} lacks {v}"))
    if sum(len(a) for a in graph.adjacency) != 2 * graph.m:
        problems.append(Violation("adjacency", None, "adjacency size does not match edge count"))
    return ValidationReport(tuple(problems))


def components(graph: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * graph.n
    comps = []
    adj = graph.adjacency
    for s in range(graph.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class Bipartition:
    """Canonical 2-coloring: in every component the lowest vertex id has side 1."""

    side: tuple[int, ...]
    component: tuple[int, ...]
    canonical: bool = field(default=True)

    @property
    def n(self) -> int:
        return len(self.side)

    def coloring(self) -> list[int]:
        """Side 1 -> color 1, side 0 -> color 2."""
        return [1 if s == 1 else 2 for s in self.side]

    def component_members(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(self.component):
            groups.setdefault(c, []).append(v)
        return [groups[c] for c in sorted(groups)]


def bipartition(graph: Graph) -> Bipartition:
    """Canonical bipartition by BFS from each component's lowest vertex.

    Raises NotBipartiteError carrying an odd cycle when none exists.
    """
    n = graph.n
    adj = graph.adjacency
    side = [-1] * n
    comp = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    cid = 0
    for s in range(n):
        if side[s] != -1:
            continue
        side[s] = 1
        comp[s] = cid
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    comp[y] = cid
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotBipartiteError(_odd_cycle(x, y, parent, depth))
        cid += 1
    return Bipartition(tuple(side), tuple(comp))


def _odd_cycle(x, y, parent, depth):
    # climb both BFS-tree paths to their lowest common ancestor
    left, right = [x], [y]
    a, b = x, y
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        left.append(a)
        right.append(b)
    # left ends at the ancestor; right repeats it
    return left[::-1] + right[:-1]


def is_proper_coloring(graph: Graph, colors: Sequence[int]) -> bool:
    if len(colors) != graph.n:
        return False
    return all(colors[u] != colors[v] for u, v in graph.edges)


# -- edge-list text format ---------------------------------------------------

def to_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based, u < v)."""
    rows = [(i + 1, line.split()) for i, line in enumerate(text.splitlines())]
    rows = [(i, toks) for i, toks in rows if toks]
    if not rows:
        raise EdgeListFormatError(1, "empty input")
    lineno, head = rows[0]
    n, m = _ints(lineno, head, 2)
    if n < 1:
        raise EdgeListFormatError(lineno, f"vertex count must be positive, got {n}")
    if m < 0:
        raise EdgeListFormatError(lineno, f"edge count must be non-negative, got {m}")
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise EdgeListFormatError(where, f"header declares {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for lineno, toks in body:
        u, v = _ints(lineno, toks, 2)
        if u == v:
            raise EdgeListFormatError(lineno, f"self-loop at {u}")
        if u > v:
            raise EdgeListFormatError(lineno, f"endpoints must satisfy u < v, got {u} {v}")
        if u < 0 or v >= n:
            raise EdgeListFormatError(lineno, f"endpoint out of range [0, {n})")
        if (u, v) in seen:
            raise EdgeListFormatError(lineno, f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)


def _ints(lineno, toks, count):
    if len(toks) != count:
        raise EdgeListFormatError(lineno, f"expected {count} integers, got {len(toks)} fields")
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise EdgeListFormatError(lineno, f"non-integer field in {' '.join(toks)!r}") from None


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(graph: Graph, path) -> None:
    Path(path).write_text(to_edge_list(graph))
