import itertools
import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from online_coloring.algorithms import make_algorithm
from online_coloring.analysis import (
    canonical_tree_code,
    check_error_paths,
    check_increasing_paths,
    check_transcript_errors,
    check_transcript_paths,
    enumerate_orders,
    increasing_path_to,
    longest_increasing_paths,
    most_errors_on_paths,
    nonisomorphic_trees,
    reach_tree,
    rooted_level_sequences,
    tree_centers,
)
from online_coloring.errors import ConfigurationError, ParameterError
from online_coloring.graph import Graph, bipartition
from online_coloring.instances import InstanceSpec, generate
from online_coloring.reveal import given_order, make_predictions, play, run, sample_order

from strategies import bipartite_graphs, tree_with_order, trees


# -- brute-force oracles ------------------------------------------------------

def increasing_paths_ending_at(graph, times, v):
    """Every path (as a vertex list) whose arrival times increase towards v."""
    out = []

    def extend(path):
        out.append(path)
        head = path[0]
        for u in graph.adjacency[head]:
            if times[u] < times[head] and u not in path:
                extend([u] + path)

    extend([v])
    return out


def first_fit_counts(graph):
    counts = {}
    for order in itertools.permutations(range(graph.n)):
        colors = {}
        for v in order:
            used = {colors[u] for u in graph.adjacency[v] if u in colors}
            c = 1
            while c in used:
                c += 1
            colors[v] = c
        x = max(colors.values())
        counts[x] = counts.get(x, 0) + 1
    return counts


# -- exact enumeration ----------------------------------------------------------

def test_p4_distribution():
    dist = enumerate_orders(generate(InstanceSpec("path", 4)), "first-fit")
    assert dist.counts == {2: 18, 3: 6}
    assert dist.probability(3) == Fraction(1, 4)
    assert dist.expectation == Fraction(9, 4)
    data = dist.to_dict()
    assert data["expectation"] == "9/4" and data["probabilities"]["3"] == "1/4"


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_matches_plain_permutation_loop(n):
    for tree in nonisomorphic_trees(n):
        assert enumerate_orders(tree, "first-fit").counts == first_fit_counts(tree)


@pytest.mark.parametrize("spec, algo, counts", [
    (InstanceSpec("path", 5), "first-fit", {2: 80, 3: 40}),
    (InstanceSpec("star", 5), "first-fit", {2: 120}),
    (InstanceSpec("complete-binary-tree", 7), "first-fit", {2: 3360, 3: 1680}),
    (InstanceSpec("path", 6), "first-fit", {2: 370, 3: 350}),
    (InstanceSpec("path", 6), "cbip", {2: 370, 3: 326, 4: 24}),
])
def test_frozen_distributions(spec, algo, counts):
    assert enumerate_orders(generate(spec), algo).counts == counts


@pytest.mark.parametrize("algo, counts", [
    ("advice-first-fit", {2: 86, 3: 34}),
    ("advice-cbip", {2: 86, 3: 34}),
    ("parity-first-fit", {4: 120}),
])
def test_frozen_distributions_with_one_error(algo, counts):
    g = generate(InstanceSpec("path", 5))
    preds = make_predictions(bipartition(g), "explicit", errors=[2])
    assert enumerate_orders(g, algo, preds).counts == counts


def test_enumeration_is_independent_of_jobs():
    g = generate(InstanceSpec("random-labeled-tree", 7, seed=3))
    assert enumerate_orders(g, "first-fit", jobs=2) == enumerate_orders(g, "first-fit", jobs=1)


def test_enumeration_guards():
    with pytest.raises(ParameterError):
        enumerate_orders(generate(InstanceSpec("path", 10)), "first-fit")
    with pytest.raises(ConfigurationError):
        enumerate_orders(generate(InstanceSpec("path", 3)), "advice-first-fit")


@pytest.mark.parametrize("n", range(1, 7))
def test_first_fit_tail_bound_exact(n):
    for tree in nonisomorphic_trees(n):
        dist = enumerate_orders(tree, "first-fit")
        assert sum(dist.counts.values()) == math.factorial(n)
        for ell in range(1, n + 2):
            assert dist.tail(ell) <= Fraction(n * n, math.factorial(ell))


# -- reach trees and path dynamic programs ------------------------------------------

def test_reach_tree_on_a_path():
    # a-b-c arriving at times 3, 1, 2: only b reaches c by an increasing path
    g = Graph(3, [(0, 1), (1, 2)])
    t = reach_tree(g, [3, 1, 2], 2)
    assert t.members == {1, 2}
    assert t.in_edges == {2: (1,), 1: ()}
    assert 0 not in t


@given(tree_with_order(max_n=12))
def test_reach_tree_matches_brute_force(case):
    g, order = case
    times = given_order(order).arrival_times()
    for v in range(g.n):
        members = {u for p in increasing_paths_ending_at(g, times, v) for u in p}
        assert reach_tree(g, times, v).members == members


@given(st.one_of(tree_with_order(max_n=12),
                 bipartite_graphs(max_n=9).flatmap(lambda g: st.tuples(st.just(g),
                                                                        st.permutations(list(range(g.n)))))),
       st.data())
def test_path_dynamic_programs_match_brute_force(case, data):
    g, order = case
    times = given_order(order).arrival_times()
    wrong = data.draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    longest = longest_increasing_paths(g, order)
    errors = most_errors_on_paths(g, order, wrong)
    for v in range(g.n):
        paths = increasing_paths_ending_at(g, times, v)
        assert longest[v] == max(len(p) for p in paths)
        assert errors[v] == max(sum(wrong[u] for u in p) for p in paths)
        witness = increasing_path_to(g, order, v)
        assert witness in paths and len(witness) == longest[v]


@given(trees(max_n=200), st.integers(0, 2**32))
def test_first_fit_colors_have_increasing_path_witnesses(g, seed):
    order = sample_order(g.n, seed).order
    colors = play(g, order, None, make_algorithm("first-fit"))
    assert check_increasing_paths(g, order, colors).ok


@given(trees(min_n=2, max_n=200), st.integers(0, 2**32), st.data())
def test_parity_first_fit_colors_have_error_path_witnesses(g, seed, data):
    k = data.draw(st.integers(0, min(32, g.n)))
    preds = make_predictions(bipartition(g), "random", k=k, seed=seed)
    t = run(g, sample_order(g.n, seed), preds, make_algorithm("parity-first-fit"))
    assert check_transcript_errors(t, g).ok


def test_checkers_flag_fabricated_colorings():
    g = Graph(3, [(0, 1), (1, 2)])
    order = (0, 1, 2)
    rep = check_increasing_paths(g, order, [1, 2, 4])
    assert [v["vertex"] for v in rep.violations] == [2]
    preds = make_predictions(bipartition(g))
    rep = check_error_paths(g, order, [1, 2, 5], preds)
    assert rep.violations[0]["required"] == 1 and rep.violations[0]["errors_on_path"] == 0


def test_transcript_checkers():
    g = generate(InstanceSpec("path", 5))
    t = run(g, sample_order(5, 1), None, make_algorithm("first-fit"))
    assert check_transcript_paths(t, g).ok
    with pytest.raises(ParameterError):
        check_transcript_errors(t, g)


# -- small trees up to isomorphism ----------------------------------------------------

def test_tree_counts():
    # number of unlabeled trees on n vertices
    assert [len(nonisomorphic_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@pytest.mark.parametrize("n", range(1, 9))
def test_representatives_are_pairwise_nonisomorphic(n):
    reps = nonisomorphic_trees(n)
    assert all(t.is_tree() for t in reps)
    ours = [nx.Graph(list(t.edges)) if t.m else nx.empty_graph(1) for t in reps]
    for a, b in itertools.combinations(ours, 2):
        assert not nx.is_isomorphic(a, b)
    assert len(reps) == sum(1 for _ in nx.nonisomorphic_trees(n)) if n > 1 else len(reps) == 1


def test_level_sequences_start_with_path_and_end_with_star():
    seqs = list(rooted_level_sequences(4))
    assert seqs[0] == [1, 2, 3, 4] and seqs[-1] == [1, 2, 2, 2]
    assert len(seqs) == 4  # rooted trees on 4 vertices


@given(trees(max_n=25), st.randoms(use_true_random=False))
def test_canonical_code_ignores_labels(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    relabeled = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
    assert canonical_tree_code(relabeled) == canonical_tree_code(g)
    assert len(tree_centers(g)) in (1, 2)
