"""Adaptive adversary forcing many colors on small trees.

The adversary plays against any advice-consuming online algorithm.  It
reveals pairs of isolated probes carrying advice 1 and 0, recursively builds
vertex-disjoint subtrees ``T_3 .. T_{l-1}`` that each force one more color,
picks in every subtree a representative whose color is new, and finally
reveals a vertex adjacent to both probes and all representatives.  The tree
has exactly ``3 * 2**(l-3)`` vertices.

A consistent algorithm must give all isolated advice-0 vertices one color and
all isolated advice-1 vertices another.  If the algorithm breaks this on the
probes currently isolated, the adversary closes them off with two punishing
vertices (one adjacent to the advice-0 probes, one adjacent to the advice-1
probes and the first punisher).  That component is a tree on which the
delivered advice is error free, yet it carries at least three colors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ColoringError, ParameterError
from .graph import Graph, bipartition
from .reveal import ColoringTranscript, OnlineSession, min_error_count

CONNECTOR_ADVICE = 0

FORCED = "forced"
INCONSISTENT = "inconsistency-witness"


class AdversaryError(ColoringError):
    """The construction itself went wrong (budget overrun, missing fresh color)."""


class _Inconsistent(Exception):
    pass


def tree_size(ell: int) -> int:
    return 3 * 2 ** (ell - 3)


@dataclass
class AdversaryOutcome:
    verdict: str  # FORCED or INCONSISTENT
    ell: int
    graph: Graph
    advice: tuple[int, ...]
    transcript: ColoringTranscript
    witness: Optional[tuple[int, ...]] = None  # component closed off by the punishing vertices
    witness_k_min: Optional[int] = None
    witness_colors: Optional[int] = None

    @property
    def X(self) -> int:
        return self.transcript.X

    @property
    def vertices_used(self) -> int:
        return self.graph.n

    def completion(self) -> tuple[Graph, list[int], list[int]]:
        """The witness component relabeled: graph, advice bits, algorithm colors."""
        if self.witness is None:
            raise ValueError("no inconsistency witness in a forced outcome")
        sub, ids = self.graph.induced(self.witness)
        return sub, [self.advice[v] for v in ids], [self.transcript.colors[v] for v in ids]

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "ell": self.ell,
            "vertices": self.graph.n,
            "budget": tree_size(self.ell),
            "X": self.X,
            "advice": list(self.advice),
            "colors": list(self.transcript.colors),
            "edges": [list(e) for e in self.graph.edges],
            "transcript": self.transcript.to_dict(),
        }
        if self.witness is not None:
            out["witness"] = {
                "vertices": list(self.witness),
                "k_min": self.witness_k_min,
                "colors_used": self.witness_colors,
            }
        return out


class _Game:
    def __init__(self, algorithm, budget: Optional[int]):
        self.session = OnlineSession(algorithm)
        self.budget = budget
        self.isolated: list[int] = []  # probes not yet attached to anything

    def reveal(self, neighbors, advice):
        if self.budget is not None and len(self.session) >= self.budget:
            raise AdversaryError(f"vertex budget {self.budget} exceeded")
        return self.session.reveal(neighbors, advice)

    def probe(self):
        """Reveal an advice-1 and an advice-0 isolated vertex; check consistency."""
        s = self.session
        v1 = len(s)
        self.reveal((), 1)
        v0 = len(s)
        self.reveal((), 0)
        self.isolated += [v1, v0]
        if not self.consistent():
            raise _Inconsistent
        return v1, v0

    def consistent(self) -> bool:
        colors, advice = self.session.colors, self.session.advice
        by_bit = {0: set(), 1: set()}
        for v in self.isolated:
            by_bit[advice[v]].add(colors[v])
        return len(by_bit[0]) == 1 and len(by_bit[1]) == 1 and by_bit[0] != by_bit[1]

    def punish(self):
        advice = self.session.advice
        zeros = [v for v in self.isolated if advice[v] == 0]
        ones = [v for v in self.isolated if advice[v] == 1]
        self.budget = None
        w0 = len(self.session)
        self.reveal(zeros, 1)
        w1 = len(self.session)
        self.reveal(ones + [w0], 0)
        return tuple(sorted(self.isolated + [w0, w1]))

    def build(self, ell):
        """Reveal a tree forcing ``ell`` colors; return its vertex ids."""
        v1, v0 = self.probe()
        colors = self.session.colors
        members = [v1, v0]
        reps = [v1, v0]
        excluded = {colors[v1], colors[v0]}
        for i in range(3, ell):
            sub = self.build(i)
            members += sub
            fresh = sorted({colors[v] for v in sub} - excluded)
            if not fresh:
                raise AdversaryError(f"subtree T_{i} shows no color outside {sorted(excluded)}")
            c = fresh[0]
            reps.append(next(v for v in sub if colors[v] == c))
            excluded.add(c)
        w = len(self.session)
        self.reveal(reps, CONNECTOR_ADVICE)
        self.isolated.remove(v1)
        self.isolated.remove(v0)
        return members + [w]


def force(ell: int, algorithm) -> AdversaryOutcome:
    """Play the recursive construction for ``ell >= 3`` against ``algorithm``."""
    if ell < 3:
        raise ParameterError(f"ell must be at least 3, got {ell}")
    game = _Game(algorithm, tree_size(ell))
    try:
        game.build(ell)
    except _Inconsistent:
        witness = game.punish()
        return _outcome(INCONSISTENT, ell, game, witness)
    if len(game.session) != tree_size(ell):
        raise AdversaryError(f"built {len(game.session)} vertices, expected {tree_size(ell)}")
    return _outcome(FORCED, ell, game, None)


def _outcome(verdict, ell, game, witness):
    s = game.session
    graph = s.graph()
    transcript = s.transcript()
    advice = tuple(s.advice)
    out = AdversaryOutcome(verdict, ell, graph, advice, transcript)
    if witness is not None:
        sub, ids = graph.induced(witness)
        out.witness = witness
        out.witness_k_min = min_error_count(bipartition(sub), [advice[v] for v in ids])
        out.witness_colors = len({transcript.colors[v] for v in ids})
    return out


@dataclass
class ProbeResult:
    colors: tuple[int, int]  # (advice-1 probe, advice-0 probe)
    triggered: bool
    outcome: AdversaryOutcome


def probe_isolated(algorithm) -> ProbeResult:
    """Show a fresh algorithm two isolated vertices with advice 1 and 0.

    If it colors them alike, the punishing vertices are revealed and the
    resulting witness is attached to the result.
    """
    game = _Game(algorithm, None)
    try:
        game.probe()
        triggered, witness = False, None
    except _Inconsistent:
        triggered, witness = True, game.punish()
    colors = game.session.colors
    outcome = _outcome(INCONSISTENT if triggered else "probed", 3, game, witness)
    return ProbeResult((colors[0], colors[1]), triggered, outcome)
