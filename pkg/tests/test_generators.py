from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girthtree.digraph import Digraph, Graph, find_forbidden_cycle, is_connected, is_oriented, underlying_girth
from girthtree.generators import (
    GenerationError,
    balanced_orientation,
    catalog_graph,
    catalog_names,
    connected_graph_masks,
    cycle_graph,
    directed_cycle,
    enumerate_connected_graphs,
    enumerate_trees,
    eulerian_circuits,
    random_host_with_retries,
    random_oriented_host,
    random_regular_high_girth,
    regular_high_girth,
    sharpness_instance,
)
from girthtree.trees import canonical_form, is_antidirected, is_tree

from oracles import all_graphs, naive_tree_classes

# independent counts from brute-force permutation canonicalisation (tests/oracles.py)
FREE_ORACLE = [1, 1, 1, 2, 3, 6]  # n = 1..6 vertices
ORIENTED_ORACLE = [1, 1, 3, 8, 27]  # n = 1..5
ANTIDIRECTED_ORACLE = [1, 1, 2, 3, 6, 10]  # n = 1..6
ALL_GRAPHS_ORACLE = [1, 2, 4, 11, 34, 156, 1044]  # n = 1..7, connected or not


# catalog ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name,n,d,g",
    [("petersen", 10, 3, 5), ("heawood", 14, 3, 6), ("mcgee", 24, 3, 7), ("robertson", 19, 4, 5), ("C7", 7, 2, 7)],
)
def test_catalog_graphs(name, n, d, g):
    G = catalog_graph(name)
    assert G.n == n
    assert {G.degree(v) for v in range(n)} == {d}
    assert underlying_girth(G) == g
    assert nx.girth(nx.Graph(list(G.edges))) == g


def test_catalog_unknown_name():
    with pytest.raises(KeyError, match="unknown"):
        catalog_graph("nonesuch")
    assert "petersen" in catalog_names()
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_regular_high_girth_prefers_catalog():
    assert regular_high_girth(3, 5) == catalog_graph("petersen")
    assert regular_high_girth(3, 7) == catalog_graph("mcgee")
    assert regular_high_girth(4, 5) == catalog_graph("robertson")
    assert regular_high_girth(2, 9) == catalog_graph("C9")
    with pytest.raises(GenerationError):
        regular_high_girth(5, 5)


def test_random_regular_high_girth():
    G = random_regular_high_girth(16, 3, 5, seed=1)
    assert {G.degree(v) for v in range(16)} == {3}
    assert underlying_girth(G) >= 5
    assert G == random_regular_high_girth(16, 3, 5, seed=1)
    G = regular_high_girth(5, 4, n=30, seed=2)
    assert {G.degree(v) for v in range(30)} == {5}


# orientations -------------------------------------------------------------------


@pytest.mark.parametrize("name", ["robertson", "C5", "C8"])
def test_balanced_orientation(name):
    G = catalog_graph(name)
    D = balanced_orientation(G)
    assert D.underlying() == G
    assert is_oriented(D)
    assert all(D.out_degree(v) == D.in_degree(v) for v in range(G.n))


def test_balanced_orientation_needs_even_degrees():
    with pytest.raises((GenerationError, ValueError)):
        balanced_orientation(catalog_graph("petersen"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_balanced_orientation_of_random_even_graphs(seed):
    G = random_regular_high_girth(12, 4, 3, seed=seed)
    D = balanced_orientation(G)
    assert all(D.out_degree(v) == D.in_degree(v) == 2 for v in range(12))


def test_eulerian_circuits_cover_every_edge_once():
    G = catalog_graph("robertson")
    used = []
    for circ in eulerian_circuits(G):
        assert circ[0] == circ[-1]
        used.extend((min(a, b), max(a, b)) for a, b in zip(circ, circ[1:]))
    assert sorted(used) == G.sorted_edges()


def test_directed_cycle():
    D = directed_cycle(5)
    assert all(D.out_degree(v) == 1 for v in range(5))


@pytest.mark.parametrize("d,ell", [(2, 2), (2, 3), (3, 2)])
def test_sharpness_instance(d, ell):
    D, T = sharpness_instance(d, ell)
    assert D.summary.min_semidegree == d - 1
    assert D.girth >= 2 * ell + 1
    assert T.out_degree(0) == d and T.k == d


# trees --------------------------------------------------------------------------


def test_tree_counts_match_oracle():
    assert [len(list(enumerate_trees(n - 1, "free"))) for n in range(1, 7)] == FREE_ORACLE
    assert [len(list(enumerate_trees(n - 1, "oriented"))) for n in range(1, 6)] == ORIENTED_ORACLE
    assert [len(list(enumerate_trees(n - 1, "antidirected"))) for n in range(1, 7)] == ANTIDIRECTED_ORACLE


def test_oracle_itself_on_smallest_cases():
    assert [naive_tree_classes(n, "free") for n in range(1, 6)] == FREE_ORACLE[:5]
    assert [naive_tree_classes(n, "oriented") for n in range(1, 5)] == ORIENTED_ORACLE[:4]


def test_free_tree_counts_known_sequence():
    # number of unlabeled trees on n vertices
    expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301]
    assert [len(list(enumerate_trees(n - 1))) for n in range(1, 14)] == expected
    assert [len(list(enumerate_trees(k, "oriented"))) for k in range(7)] == [1, 1, 3, 8, 27, 91, 350]
    assert [len(list(enumerate_trees(k, "antidirected"))) for k in range(7)] == [1, 1, 2, 3, 6, 10, 22]


def test_enumerated_trees_are_distinct_and_canonical():
    trees = list(enumerate_trees(5, "oriented"))
    forms = [canonical_form(T) for T in trees]
    assert forms == sorted(set(forms))
    assert all(T.k == 5 for T in trees)
    assert all(is_antidirected(T) for T in enumerate_trees(6, "antidirected"))
    assert all(is_tree(T) for T in enumerate_trees(8))


def test_enumerate_trees_max_degree_and_caps():
    paths = list(enumerate_trees(4, "oriented", max_degree=2))
    assert len(paths) == 10
    assert all(T.max_degree() <= 2 for T in paths)
    with pytest.raises(GenerationError):
        list(enumerate_trees(8, "oriented"))
    with pytest.raises(GenerationError):
        list(enumerate_trees(14))
    with pytest.raises(ValueError):
        list(enumerate_trees(3, "bogus"))


# connected graphs ----------------------------------------------------------------


def test_connected_graph_counts():
    assert [len(connected_graph_masks(n)) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]


def test_connected_graphs_against_all_graphs_oracle():
    for n in range(1, 7):
        total = all_graphs(n)
        assert len(total) == ALL_GRAPHS_ORACLE[n - 1]
        conn = sum(is_connected(Graph(n, e)) for e in total)
        assert conn == len(connected_graph_masks(n))
    for G in enumerate_connected_graphs(6):
        assert is_connected(G)


# random hosts ---------------------------------------------------------------------


@pytest.mark.parametrize("star", [False, True])
@pytest.mark.parametrize("oriented", [True, False])
def test_random_host_is_maximal_and_free(star, oriented):
    ell = 2
    D = random_oriented_host(9, ell, 1, seed=4, star_variant=star, oriented=oriented)
    assert find_forbidden_cycle(D, ell, star) is None
    if oriented:
        assert is_oriented(D)
    assert D.summary.min_semidegree >= 1
    for u in range(D.n):
        for v in range(D.n):
            if u == v or (u, v) in D.arcs:
                continue
            if oriented and (v, u) in D.arcs:
                continue
            bigger = Digraph(D.n, list(D.arcs) + [(u, v)])
            assert find_forbidden_cycle(bigger, ell, star) is not None


def test_random_host_deterministic_and_budget():
    a = random_host_with_retries(10, 2, 1, 9, star_variant=True, oriented=False)
    b = random_host_with_retries(10, 2, 1, 9, star_variant=True, oriented=False)
    assert a == b
    with pytest.raises(GenerationError):
        random_oriented_host(5, 2, 3, seed=0, budget=5)
