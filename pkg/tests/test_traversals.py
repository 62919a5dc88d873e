import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings

from strategies import graphs, graphs_with_order
from travlab.families import all_graphs, cycle_graph, figure_tree, path_graph
from travlab.structures import LinearOrder, graph
from travlab.traversals import (
    canonical_bft, classify_order, components, deterministic_dft, deterministic_traversal,
    distance, distances, is_quasi_level, quasi_level, quasi_levels, same_quasi_level,
    search_orders,
)


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.size))
    G.add_edges_from(g.relation("E"))
    return G


@pytest.mark.parametrize("n", range(1, 5))
def test_sentences_match_search_runs(n):
    for g in all_graphs(n):
        runs = {k: search_orders(g, k) for k in ("generic", "bfs", "dfs")}
        for order in LinearOrder.all_orders(n):
            c = classify_order(g, order)
            assert c.traversal == (order in runs["generic"])
            assert c.bft == (order in runs["bfs"])
            assert c.dft == (order in runs["dfs"])


@settings(max_examples=150)
@given(graphs_with_order())
def test_kernel_engine_matches_sentences(go):
    g, order = go
    assert classify_order(g, order, "fo") == classify_order(g, order, "kernel")


@given(graphs_with_order())
def test_search_hierarchy(go):
    g, order = go
    c = classify_order(g, order, "kernel")
    assert c.traversal or not (c.bft or c.dft)


def test_four_cycle():
    c4 = cycle_graph(4)
    assert canonical_bft(c4).sequence == (0, 1, 3, 2)
    assert classify_order(c4, LinearOrder.identity(4)).traversal
    assert not classify_order(c4, LinearOrder.identity(4)).bft
    assert len(search_orders(c4, "bfs")) == 8


def test_path_classification():
    c = classify_order(path_graph(3), LinearOrder.identity(3))
    assert (c.traversal, c.bft, c.dft) == (True, True, True)
    c = classify_order(path_graph(3), LinearOrder.from_sequence([0, 2, 1]))
    assert not c.traversal


def least_path_key(G, order, v):
    root = min(nx.node_connected_component(G, v), key=order.ranks.__getitem__)
    best = min(tuple(order.ranks[u] for u in p) for p in nx.all_shortest_paths(G, root, v))
    return len(best), best


@settings(max_examples=150)
@given(graphs_with_order())
def test_canonical_bft_sorts_by_least_shortest_path(go):
    g, order = go
    G = to_nx(g)
    comps = sorted((sorted(c, key=order.ranks.__getitem__) for c in nx.connected_components(G)),
                   key=lambda c: order.ranks[c[0]])
    expected = [v for c in comps for v in sorted(c, key=lambda v: least_path_key(G, order, v))]
    assert list(canonical_bft(g, order).sequence) == expected


@given(graphs_with_order())
def test_deterministic_orders_are_searches(go):
    g, order = go
    assert classify_order(g, canonical_bft(g, order), "kernel").bft
    assert classify_order(g, deterministic_traversal(g, order), "kernel").bft
    assert classify_order(g, deterministic_dft(g, order), "kernel").dft


@given(graphs())
def test_distances_match_networkx(g):
    G = to_nx(g)
    for s in range(g.size):
        lengths = nx.single_source_shortest_path_length(G, s)
        assert distances(g, s) == [lengths.get(v, math.inf) for v in range(g.size)]
        assert distance(g, s, 0) == lengths.get(0, math.inf)


@given(graphs())
def test_components_match_networkx(g):
    ours = {frozenset(c) for c in components(g)}
    assert ours == {frozenset(c) for c in nx.connected_components(to_nx(g))}


@settings(max_examples=150)
@given(graphs_with_order())
def test_first_vertex_of_a_layer_starts_that_layer(go):
    g, order = go
    bft = canonical_bft(g, order)
    G = to_nx(g)
    root = bft.sequence[0]
    comp = nx.node_connected_component(G, root)
    layers = {}
    for v, d in nx.single_source_shortest_path_length(G, root).items():
        layers.setdefault(d, []).append(v)
    for d, members in layers.items():
        if d == 0:
            continue
        first = min(members, key=bft.ranks.__getitem__)
        assert set(quasi_level(g, bft, first)) & comp == set(members)


@settings(max_examples=60)
@given(graphs_with_order(max_n=6))
def test_same_quasi_level_formula(go):
    g, order = go
    bft = canonical_bft(g, order)
    for v, w in itertools.product(range(g.size), repeat=2):
        expected = v == w or w in quasi_level(g, bft, v) or v in quasi_level(g, bft, w)
        assert same_quasi_level(g, bft, v, w) == expected


def test_quasi_levels_are_intervals():
    for g in all_graphs(5):
        bft = canonical_bft(g)
        for q in quasi_levels(g, bft):
            lo, hi = bft.ranks[q.first], bft.ranks[q.last]
            assert list(q.members) == list(bft.sequence[lo:hi + 1])
            assert is_quasi_level(g, bft, q.members)


def test_figure_tree_quasi_levels():
    g = figure_tree()
    order = LinearOrder.identity(15)

    def vs(*labels):
        return [v - 1 for v in labels]

    for s in (vs(2, 3), vs(3, 4, 5), vs(*range(6, 12)), vs(13, 14, 15)):
        assert is_quasi_level(g, order, s)
    for s in (vs(*range(5, 12)), vs(4, 5, 6)):
        assert not is_quasi_level(g, order, s)


def test_quasi_levels_need_a_bft():
    with pytest.raises(ValueError, match="breadth-first"):
        quasi_levels(cycle_graph(4), LinearOrder.identity(4))


def test_search_orders_rejects_unknown_kind():
    with pytest.raises(ValueError):
        search_orders(graph(2, []), "sideways")


def test_deterministic_traversal_puts_components_in_order():
    assert deterministic_traversal(graph(4, [(2, 3)])).sequence == (0, 1, 2, 3)
    assert deterministic_traversal(graph(3, [(1, 2)])).sequence == (0, 1, 2)
    assert deterministic_traversal(path_graph(3)).sequence == (0, 1, 2)
