import random

import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from modfactor.matching import matching_size, max_matching


@given(st.integers(1, 12), st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=30))
def test_matching_size_matches_networkx(n, raw):
    edges = [(u % n, v % n) for u, v in raw if u % n != v % n]
    mate = max_matching(n, edges)
    H = nx.Graph()
    H.add_nodes_from(range(n))
    H.add_edges_from(edges)
    assert matching_size(mate) == len(nx.max_weight_matching(H, maxcardinality=True))
    present = {frozenset(e) for e in edges}
    for v, w in enumerate(mate):
        if w is not None and w >= 0:
            assert mate[w] == v and frozenset((v, w)) in present


def test_odd_cycle_blossom():
    # pentagon with a pendant: needs blossom handling to reach size 3
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]
    assert matching_size(max_matching(6, edges)) == 3


def test_dense_random():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(10, 30)
        edges = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(n, 3 * n))]
        H = nx.Graph(edges)
        H.add_nodes_from(range(n))
        assert matching_size(max_matching(n, edges)) == len(nx.max_weight_matching(H, maxcardinality=True))
