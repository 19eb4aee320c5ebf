import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from online_coloring.errors import EdgeListFormatError, GraphValidationError, NotBipartiteError
from online_coloring.graph import (
    Graph,
    bipartition,
    components,
    is_proper_coloring,
    parse_edge_list,
    read_edge_list,
    to_edge_list,
    validate,
    validate_edges,
    write_edge_list,
)

from strategies import bipartite_graphs, trees


def test_edges_are_normalized_and_sorted():
    g = Graph(4, [(3, 2), (1, 0), (2, 0)])
    assert g.edges == ((0, 1), (0, 2), (2, 3))
    assert g.adjacency == ((1, 2), (0,), (0, 3), (2,))
    assert g.m == 3 and g.degree(0) == 2


@pytest.mark.parametrize("n, edges, kind", [
    (3, [(1, 1)], "self-loop"),
    (3, [(0, 1), (1, 0)], "duplicate"),
    (3, [(0, 3)], "out-of-range"),
    (3, [(-1, 2)], "out-of-range"),
    (0, [], "bad-vertex-count"),
])
def test_invalid_graphs_report_the_violation(n, edges, kind):
    with pytest.raises(GraphValidationError) as info:
        Graph(n, edges)
    assert [v.kind for v in info.value.report.violations] == [kind]


def test_validation_report_lists_every_problem():
    rep = validate_edges(4, [(0, 0), (0, 1), (1, 0), (2, 9)])
    assert not rep.ok
    assert sorted(v.kind for v in rep.violations) == ["duplicate", "out-of-range", "self-loop"]
    assert validate(Graph(3, [(0, 1)])).ok


def test_graph_is_immutable():
    g = Graph(2, [(0, 1)])
    with pytest.raises(AttributeError):
        g.n = 5


def test_components_and_tree_predicates():
    g = Graph(6, [(0, 1), (1, 2), (4, 5)])
    assert components(g) == [[0, 1, 2], [3], [4, 5]]
    assert not g.is_connected() and not g.is_tree()
    assert Graph(3, [(0, 1), (1, 2)]).is_tree()
    assert Graph(1).is_tree()


def test_canonical_bipartition_puts_lowest_vertex_on_side_one():
    g = Graph(5, [(1, 2), (2, 3), (0, 4)])
    bip = bipartition(g)
    assert bip.side == (1, 1, 0, 1, 0)
    assert bip.coloring() == [1, 1, 2, 1, 2]
    assert bip.component_members() == [[0, 4], [1, 2, 3]]


def test_odd_cycle_is_reported():
    with pytest.raises(NotBipartiteError) as info:
        bipartition(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert sorted(info.value.cycle) == [0, 1, 2]


@given(st.integers(1, 6).map(lambda h: 2 * h + 1), st.integers(0, 20))
def test_odd_cycle_witness_is_a_real_odd_cycle(length, extra):
    n = length + extra
    edges = [(i, (i + 1) % length) for i in range(length)] + [(length - 1 + i, length + i) for i in range(extra)]
    g = Graph(n, edges)
    with pytest.raises(NotBipartiteError) as info:
        bipartition(g)
    cyc = info.value.cycle
    assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
    es = set(g.edges)
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert (min(a, b), max(a, b)) in es


@given(bipartite_graphs())
def test_bipartition_is_proper_and_canonical(g):
    bip = bipartition(g)
    assert is_proper_coloring(g, bip.coloring())
    for comp in components(g):
        assert bip.side[comp[0]] == 1
    assert nx.is_bipartite(nx.Graph(list(g.edges))) or g.m == 0


@given(trees(max_n=40))
def test_edge_list_round_trip(g):
    text = to_edge_list(g)
    assert parse_edge_list(text) == g
    assert parse_edge_list(text).instance_hash() == g.instance_hash()


def test_edge_list_files(tmp_path):
    g = Graph(4, [(0, 1), (1, 2), (1, 3)])
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert path.read_text() == "4 3\n0 1\n1 2\n1 3\n"
    assert read_edge_list(path) == g


def test_path_on_two_vertices_text():
    assert to_edge_list(Graph(2, [(0, 1)])) == "2 1\n0 1\n"


@pytest.mark.parametrize("text, line, fragment", [
    ("", 1, "empty"),
    ("3\n", 1, "expected 2"),
    ("3 x\n", 1, "non-integer"),
    ("3 2\n0 1\n", 3, "declares 2"),
    ("3 1\n0 1\n1 2\n", 3, "declares 1"),
    ("3 1\n1 1\n", 2, "self-loop"),
    ("3 1\n2 1\n", 2, "u < v"),
    ("3 1\n0 5\n", 2, "out of range"),
    ("3 2\n0 1\n0 1\n", 3, "duplicate"),
    ("0 0\n", 1, "positive"),
])
def test_parser_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(EdgeListFormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_instance_hash_depends_only_on_content():
    a = Graph(3, [(1, 2), (0, 1)])
    b = Graph(3, [(0, 1), (2, 1)])
    assert a.instance_hash() == b.instance_hash()
    assert a.instance_hash() != Graph(3, [(0, 1)]).instance_hash()


def test_induced_subgraph_relabels():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    sub, ids = g.induced([3, 1, 2])
    assert ids == [3, 1, 2]
    assert sub.edges == ((0, 2), (1, 2))
