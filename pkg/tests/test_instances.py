import math
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from online_coloring.errors import ParameterError
from online_coloring.graph import Graph, bipartition, write_edge_list
from online_coloring.instances import InstanceSpec, generate, prufer_decode, prufer_encode


def test_prufer_all_zeros_gives_a_star():
    g = prufer_decode([0, 0], 4)
    assert g.edges == ((0, 1), (0, 2), (0, 3))


def test_prufer_small_cases():
    assert prufer_decode([], 2).edges == ((0, 1),)
    with pytest.raises(ParameterError):
        prufer_decode([], 1)
    with pytest.raises(ParameterError):
        prufer_decode([0], 4)
    with pytest.raises(ParameterError):
        prufer_decode([0, 7], 4)


@given(st.integers(2, 40).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1),
                                                                           min_size=n - 2, max_size=n - 2))))
def test_prufer_matches_independent_decoder(case):
    n, seq = case
    ours = prufer_decode(seq, n)
    theirs = nx.from_prufer_sequence(seq) if n > 2 else nx.Graph([(0, 1)])
    assert set(ours.edges) == {(min(e), max(e)) for e in theirs.edges}
    assert ours.is_tree()
    assert prufer_encode(ours) == seq


def test_random_labeled_trees_are_uniform():
    # 4^(4-2) = 16 labeled trees on 4 vertices, each with probability 1/16
    samples = 16_000
    counts = Counter(generate(InstanceSpec("random-labeled-tree", 4, seed=s)).edges for s in range(samples))
    assert len(counts) == 16
    mean = samples / 16
    sigma = math.sqrt(samples * (1 / 16) * (15 / 16))
    assert all(abs(c - mean) <= 5 * sigma for c in counts.values())


@pytest.mark.parametrize("spec, edges", [
    (InstanceSpec("path", 4), ((0, 1), (1, 2), (2, 3))),
    (InstanceSpec("star", 4), ((0, 1), (0, 2), (0, 3))),
    (InstanceSpec("complete-binary-tree", 7), ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6))),
    (InstanceSpec("spider", 5, legs=2), ((0, 1), (0, 3), (1, 2), (3, 4))),
])
def test_fixed_families(spec, edges):
    assert generate(spec).edges == edges


@pytest.mark.parametrize("spec", [
    InstanceSpec("complete-binary-tree", 6),
    InstanceSpec("spider", 6, legs=2),
    InstanceSpec("random-labeled-tree", 10),
    InstanceSpec("random-bipartite", 10, seed=1),
    InstanceSpec("random-bipartite", 10, seed=1, p=1.5),
    InstanceSpec("path", 0),
    InstanceSpec("from-file"),
    InstanceSpec("hypercube", 8),
])
def test_bad_specs_are_rejected(spec):
    with pytest.raises(ParameterError):
        generate(spec)


@given(st.integers(1, 60), st.integers(0, 2**32), st.sampled_from([0.0, 0.1, 0.5, 1.0]))
def test_random_bipartite_shores(n, seed, p):
    g = generate(InstanceSpec("random-bipartite", n, seed=seed, p=p))
    left = (n + 1) // 2
    assert all(u < left <= v for u, v in g.edges)
    bipartition(g)
    if p == 1.0:
        assert g.m == left * (n - left)
    if p == 0.0:
        assert g.m == 0


def test_generation_is_a_pure_function_of_the_spec():
    spec = InstanceSpec("random-labeled-tree", 500, seed=42)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(spec.with_seed(43))


def test_from_file(tmp_path):
    g = Graph(3, [(0, 2)])
    write_edge_list(g, tmp_path / "g.txt")
    assert generate(InstanceSpec("from-file", path=str(tmp_path / "g.txt"))) == g


def test_spec_dict_round_trip():
    spec = InstanceSpec("random-bipartite", 10, seed=3, p=0.2)
    assert InstanceSpec.from_dict(spec.to_dict()) == spec
    assert spec.to_dict() == {"family": "random-bipartite", "n": 10, "seed": 3, "p": 0.2}
