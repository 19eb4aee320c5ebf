"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from online_coloring.graph import Graph
from online_coloring.instances import prufer_decode


@st.composite
def trees(draw, min_n=1, max_n=30):
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return Graph(1)
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_decode(seq, n)


@st.composite
def bipartite_graphs(draw, max_n=14):
    n = draw(st.integers(1, max_n))
    left = draw(st.integers(0, n))
    pairs = [(u, v) for u in range(left) for v in range(left, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, chosen)


@st.composite
def tree_with_order(draw, min_n=1, max_n=30):
    g = draw(trees(min_n, max_n))
    order = draw(st.permutations(list(range(g.n))))
    return g, tuple(order)
