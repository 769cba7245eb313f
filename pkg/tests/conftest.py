import random

import pytest
from hypothesis import strategies as st

from mwbm.graph import BipartiteGraph

# a=0, b=1 on the left; x=0, y=1 on the right.
EXAMPLE_EDGES = [(0, 0, 9), (0, 1, 4), (1, 0, 4)]


@pytest.fixture
def example_graph():
    return BipartiteGraph(2, 2, EXAMPLE_EDGES)


@st.composite
def graphs(draw, max_side=6, max_weight=30, min_edges=0):
    n1 = draw(st.integers(1, max_side))
    n2 = draw(st.integers(1, max_side))
    pairs = draw(st.sets(st.tuples(st.integers(0, n1 - 1), st.integers(0, n2 - 1)),
                         min_size=min_edges))
    edges = [(u, v, draw(st.integers(1, max_weight))) for u, v in sorted(pairs)]
    return BipartiteGraph(n1, n2, edges)


def random_graph(rng: random.Random, max_side=6, max_weight=30, density=None) -> BipartiteGraph:
    n1, n2 = rng.randint(1, max_side), rng.randint(1, max_side)
    p = rng.random() if density is None else density
    edges = [(u, v, rng.randint(1, max_weight))
             for u in range(n1) for v in range(n2) if rng.random() < p]
    return BipartiteGraph(n1, n2, edges)
