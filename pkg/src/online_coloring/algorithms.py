"""Online coloring algorithms for trees and bipartite graphs.

Colors are positive integers.  Advice bit 1 stands for the odd class
(color 1), advice bit 0 for the even class (color 2).
"""
from __future__ import annotations

from .errors import ConfigurationError, NotBipartiteError


def smallest_missing(colors) -> int:
    """Least positive integer not in ``colors``."""
    taken = set(colors)
    c = 1
    while c in taken:
        c += 1
    return c


def _lowest_clear(bits: int) -> int:
    # color c occupies bit c-1; return the first color whose bit is clear
    return (~bits & (bits + 1)).bit_length()


class FirstFit:
    name = "first-fit"
    requires_advice = False

    def reset(self):
        pass

    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        c = 1
        while c in neighbor_colors:
            c += 1
        return c


class AdviceFirstFit:
    """Trust the advice on isolated vertices, otherwise first fit."""

    name = "advice-first-fit"
    requires_advice = True

    def reset(self):
        pass

    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        if advice is None:
            raise ConfigurationError(f"{self.name} needs an advice bit for vertex {vertex}")
        if not neighbors:
            return 1 if advice == 1 else 2
        c = 1
        while c in neighbor_colors:
            c += 1
        return c


class ParityFirstFit:
    """Smallest color whose parity matches the advice (1 -> odd, 0 -> even)."""

    name = "parity-first-fit"
    requires_advice = True

    def reset(self):
        pass

    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        if advice is None:
            raise ConfigurationError(f"{self.name} needs an advice bit for vertex {vertex}")
        c = 1 if advice == 1 else 2
        while c in neighbor_colors:
            c += 2
        return c


class ShoreState:
    """Union-find over revealed vertices with parity to the component root.

    Every root keeps two color bitsets, one per shore; shore ``s`` holds
    the vertices whose parity relative to the root is ``s``.
    """

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.parity: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.shores: dict[int, list[int]] = {}

    def add(self, v):
        self.parent[v] = v
        self.parity[v] = 0
        self.size[v] = 1
        self.shores[v] = [0, 0]

    def find(self, v):
        """Return ``(root, parity of v relative to root)`` with path compression."""
        parent = self.parent
        path = []
        while parent[v] != v:
            path.append(v)
            v = parent[v]
        root = v
        # rewrite from the top so each node's parity is already relative to root
        acc = 0
        for x in reversed(path):
            acc ^= self.parity[x]
            self.parity[x] = acc
            parent[x] = root
        return root, (self.parity[path[0]] if path else 0)

    def join_opposite(self, v, u):
        """Record edge ``v-u``: the two endpoints must end up on opposite shores."""
        rv, pv = self.find(v)
        ru, pu = self.find(u)
        if rv == ru:
            if pv == pu:
                raise NotBipartiteError((v, u), f"edge {v}-{u} closes an odd cycle")
            return
        # parity of the attached root relative to the surviving root
        d = pv ^ pu ^ 1
        if self.size[rv] < self.size[ru]:
            rv, ru = ru, rv
        self.parent[ru] = rv
        self.parity[ru] = d
        self.size[rv] += self.size.pop(ru)
        small = self.shores.pop(ru)
        big = self.shores[rv]
        big[d] |= small[0]
        big[1 ^ d] |= small[1]

    def add_color(self, v, color):
        root, p = self.find(v)
        self.shores[root][p] |= 1 << (color - 1)

    def opposite_colors(self, v) -> int:
        root, p = self.find(v)
        return self.shores[root][1 - p]

    def shore_colors(self, v):
        """``(own shore colors, opposite shore colors)`` as sorted lists."""
        root, p = self.find(v)
        return _bits_to_colors(self.shores[root][p]), _bits_to_colors(self.shores[root][1 - p])


def _bits_to_colors(bits):
    return [i + 1 for i in range(bits.bit_length()) if bits >> i & 1]


class CBip:
    """Smallest color absent from the opposite shore of the vertex's component."""

    name = "cbip"
    requires_advice = False

    def reset(self):
        self.state = ShoreState()

    def _merge(self, vertex, neighbors):
        state = self.state
        state.add(vertex)
        for u in neighbors:
            state.join_opposite(vertex, u)

    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        self._merge(vertex, neighbors)
        c = _lowest_clear(self.state.opposite_colors(vertex))
        self.state.add_color(vertex, c)
        return c


class AdviceCBip(CBip):
    """CBip, except that isolated vertices are colored by their advice bit."""

    name = "advice-cbip"
    requires_advice = True

    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        if advice is None:
            raise ConfigurationError(f"{self.name} needs an advice bit for vertex {vertex}")
        if neighbors:
            return super().color_next(vertex, neighbors, neighbor_colors, advice)
        self.state.add(vertex)
        c = 1 if advice == 1 else 2
        self.state.add_color(vertex, c)
        return c


ALGORITHMS = {
    cls.name: cls for cls in (FirstFit, CBip, AdviceFirstFit, AdviceCBip, ParityFirstFit)
}
ADVICE_ALGORITHMS = frozenset(name for name, cls in ALGORITHMS.items() if cls.requires_advice)
BIPARTITE_ONLY = frozenset({"cbip", "advice-cbip"})


def make_algorithm(name: str):
    try:
        cls = ALGORITHMS[name]
    except KeyError:
        raise ConfigurationError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
    algo = cls()
    algo.reset()
    return algo
