import random

import pytest
from hypothesis import given, settings

from mwbm.cover import cover_feasible, extract_matching, min_weight_cover, tight_subgraph
from mwbm.decomposition import decomposition_step, solve_weight
from mwbm.errors import ExtractionStuck, InfeasibleCover
from mwbm.graph import BipartiteGraph, Cover, top_two_weights
from mwbm.matching import UNMATCHED, max_cardinality_matching
from mwbm.oracle import oracle_enumerate, oracle_mwm

from conftest import graphs, random_graph


def test_min_cover_example(example_graph):
    c = min_weight_cover(example_graph)
    assert c == Cover((5, 0), (4, 0))
    assert cover_feasible(example_graph, c)
    assert c.weight == oracle_enumerate(example_graph) == 9


def test_min_cover_single_edge():
    g = BipartiteGraph(1, 1, [(0, 0, 7)])
    c = min_weight_cover(g)
    assert c.weight == 7 and sorted(c.left + c.right) == [0, 7]


def test_min_cover_empty():
    c = min_weight_cover(BipartiteGraph(2, 3))
    assert c == Cover.zeros(2, 3) and c.weight == 0


def test_feasibility_checks(example_graph):
    assert cover_feasible(example_graph, Cover((5, 0), (4, 0)))
    assert not cover_feasible(example_graph, Cover.zeros(2, 2))
    assert cover_feasible(BipartiteGraph(2, 2), Cover((3, 0), (0, 1)))
    assert not cover_feasible(example_graph, Cover((5,), (4, 0)))


def test_tight_subgraph(example_graph):
    tight = tight_subgraph(example_graph, Cover((5, 0), (4, 0)))
    # per-edge equality: a-x 5+4=9, b-x 0+4=4, a-y 5+0>4
    assert list(tight.pairs()) == [(0, 0), (1, 0)]
    assert tight_subgraph(example_graph, Cover((100, 100), (100, 100))).num_edges == 0
    single = BipartiteGraph(1, 1, [(0, 0, 7)])
    assert list(tight_subgraph(single, Cover((7,), (0,))).pairs()) == [(0, 0)]
    with pytest.raises(InfeasibleCover):
        tight_subgraph(example_graph, Cover.zeros(2, 2))


def test_extract_example(example_graph):
    m = extract_matching(example_graph, Cover((5, 0), (4, 0)))
    assert m.pairs() == [(0, 0)] and m.weight(example_graph) == 9


def test_extract_repairs_stranded_vertex():
    # Same graph with the left vertices swapped: MCM on the tight edges picks the
    # weight-4 edge first and the cover-5 vertex must be rescued by a flip.
    g = BipartiteGraph(2, 2, [(1, 0, 9), (1, 1, 4), (0, 0, 4)])
    c = Cover((0, 5), (4, 0))
    first = max_cardinality_matching(tight_subgraph(g, c))
    assert first.pairs() == [(0, 0)] and first.weight(g) == 4
    m = extract_matching(g, c)
    assert m.pairs() == [(1, 0)] and m.weight(g) == 9 == oracle_enumerate(g)


def test_extract_single_and_uniform():
    single = BipartiteGraph(1, 1, [(0, 0, 7)])
    assert extract_matching(single, min_weight_cover(single)).pairs() == [(0, 0)]
    g = BipartiteGraph(2, 2, [(u, v, 7) for u in range(2) for v in range(2)])
    m = extract_matching(g, min_weight_cover(g))
    assert m.cardinality == 2 and m.weight(g) == 14


def test_extract_rejects_non_minimum_cover(example_graph):
    with pytest.raises(ExtractionStuck):
        extract_matching(example_graph, Cover((9, 4), (0, 0)))


def _check_extraction(g):
    c = min_weight_cover(g)
    m = extract_matching(g, c)
    assert m.is_valid_for(g)
    assert m.weight(g) == c.weight
    for u, x in enumerate(c.left):
        assert x == 0 or m.pair_left[u] != UNMATCHED
    for v, x in enumerate(c.right):
        assert x == 0 or m.pair_right[v] != UNMATCHED
    for u, v in m.pairs():
        assert c.left[u] + c.right[v] == g.weight(u, v)
    return c, m


@settings(max_examples=300, deadline=None)
@given(graphs(max_side=6, max_weight=40))
def test_duality_and_extraction(g):
    c, m = _check_extraction(g)
    assert c.weight == solve_weight(g)[0] == oracle_mwm(g)[0]


def test_duality_dense_random():
    rng = random.Random(7)
    for _ in range(200):
        _check_extraction(random_graph(rng, max_side=7, max_weight=12, density=0.8))


@settings(max_examples=150, deadline=None)
@given(graphs(max_side=5, max_weight=30, min_edges=1))
def test_lemma_composition(g):
    h1, h2 = top_two_weights(g)
    _, c_h, delta = decomposition_step(g, h1 - h2)
    combined = c_h + min_weight_cover(delta)
    assert cover_feasible(g, combined)
    assert combined.weight == oracle_mwm(g)[0]
