import itertools

import pytest
from hypothesis import given

from conftest import multigraphs
from modfactor import oracle
from modfactor.bipartite import (
    bounded_degree_odd_subgraph,
    edge_disjoint_odd_cycles,
    eulerian_odd_size_factors,
    eulerian_plus_bipartite_decompose,
    max_bipartite_factor,
    parity_forest,
)
from modfactor.connectivity import tree_pack
from modfactor.errors import HypothesisError, Infeasible
from modfactor.generators import gen_tree_connected
from modfactor.graph import Multigraph


def _half_cut_ok(G, H):
    for r in range(1, G.n):
        for A in itertools.combinations(range(G.n), r):
            if 2 * H.host.edge_subgraph(H.edge_ids).cut_degree(A) < G.cut_degree(A):
                return False
    return True


def test_max_bipartite_examples(C4, K4, triangle):
    assert max_bipartite_factor(C4).factor.edge_ids == frozenset(range(4))
    H = max_bipartite_factor(K4).factor
    assert H.degrees() == (2, 2, 2, 2) and len(H.edge_ids) == 4
    assert _half_cut_ok(K4, H)
    assert len(max_bipartite_factor(triangle).factor.edge_ids) == 2


@given(multigraphs(min_n=2, max_n=8, max_m=16, loops=True))
def test_max_bipartite_half_cuts(G):
    bf = max_bipartite_factor(G)
    assert oracle.is_bipartite_edge_set(G, bf.factor.edge_ids)
    assert _half_cut_ok(G, bf.factor)


def test_odd_cycles_examples(triangle, C4):
    assert [len(c) for c in edge_disjoint_odd_cycles(triangle, 1)] == [3]
    with pytest.raises(Infeasible):
        edge_disjoint_odd_cycles(C4, 1)
    bowtie = Multigraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    cyc = edge_disjoint_odd_cycles(bowtie, 2)
    assert sorted(sorted(c) for c in cyc) == [[0, 1, 2], [3, 4, 5]]


def test_bounded_degree_examples(triangle):
    assert bounded_degree_odd_subgraph(triangle, 1, check=False).degrees() == (2, 2, 2)
    bowtie = Multigraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    with pytest.raises(HypothesisError):
        bounded_degree_odd_subgraph(bowtie, 2)
    for seed in range(5):
        G = gen_tree_connected(6, 4, seed=seed, noise=3)
        if G.is_bipartite():
            continue
        H = bounded_degree_odd_subgraph(G, 1)
        assert max(H.degrees()) <= 2 and not H.host.edge_subgraph(H.edge_ids).is_bipartite()


def test_parity_forest_examples():
    path = Multigraph(3, [(0, 1), (1, 2)])
    assert parity_forest(path, [0, 1], [0, 0, 0]) == frozenset()
    star = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    assert parity_forest(star, [0, 1, 2], [0, 1, 1, 0]) == frozenset({0, 1})


def test_eulerian_plus_bipartite():
    G = gen_tree_connected(6, 6, seed=3, noise=4)
    S = eulerian_plus_bipartite_decompose(G, 1, 2)
    assert all(d % 2 == 0 for d in S.G1.degrees())
    B = S.bipartition
    cross = [e for e in S.G2.edge_ids if (G.edges[e][0] in B.X) != (G.edges[e][1] in B.X)]
    inside = [e for e in S.G2.edge_ids if e not in cross]
    assert tree_pack(G.edge_subgraph(cross), 1)
    assert len(inside) == min(2, len(B.intra_edges(G)))
    assert S.G1.edge_ids | S.G2.edge_ids == frozenset(range(G.m))


def test_eulerian_odd_size():
    G = gen_tree_connected(5, 4, seed=1, noise=2)
    assert not G.is_bipartite()
    (H,) = eulerian_odd_size_factors(G, 1)
    sub = G.edge_subgraph(H.edge_ids)
    assert len(H.edge_ids) % 2 == 1 and sub.is_eulerian() and sub.is_connected()
    with pytest.raises(HypothesisError):
        eulerian_odd_size_factors(Multigraph.cycle(4).multiplied(4), 1)
