import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import multigraphs
from modfactor import oracle
from modfactor.connectivity import (
    PartitionCertificate,
    TreePacking,
    bipartite_index,
    cut_size,
    edge_connectivity,
    essential_edge_connectivity,
    is_essentially_edge_connected,
    is_partition_connected,
    max_cut_exact,
    max_cut_local,
    min_cut,
    partition_connected_decompose,
    tree_connectivity,
    tree_pack,
)
from modfactor.errors import Infeasible
from modfactor.graph import Multigraph


def _nx(G):
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(e for e in G.edges if e[0] != e[1])
    return H


def test_edge_connectivity_examples(C4, K4):
    assert edge_connectivity(C4) == 2
    assert edge_connectivity(K4) == 3
    assert edge_connectivity(Multigraph.complete_bipartite(3, 3, 3)) == 9


def test_essential_examples(K4):
    assert essential_edge_connectivity(K4) == 4
    star = Multigraph(6, [(0, i) for i in range(1, 6)])
    # sentinel: larger than any cut
    assert essential_edge_connectivity(star) == star.m + 1
    assert essential_edge_connectivity(Multigraph.cycle(6)) == 2


def _brute_essential(G):
    best = G.m + 1
    for r in range(2, G.n - 1):
        for A in itertools.combinations(range(G.n), r):
            A = set(A)
            cut = [e for e in G.edges if (e[0] in A) != (e[1] in A)]
            if not cut:
                continue
            if any(all(v in e for e in cut) for v in range(G.n)):
                continue
            best = min(best, len(cut))
    return best


@given(multigraphs(min_n=4, max_n=7, max_m=14, connected=True))
def test_essential_matches_brute(G):
    assert essential_edge_connectivity(G) == _brute_essential(G)


@given(multigraphs(min_n=2, max_n=8, max_m=16, loops=True))
def test_edge_connectivity_matches_oracle(G):
    lam = edge_connectivity(G)
    assert lam == oracle.oracle_edge_connectivity(G)
    assert (lam > 0) == nx.is_connected(_nx(G))
    val, S = min_cut(G)
    assert val == lam and G.cut_degree(S) == lam


def test_tree_pack_examples(C4, K4):
    P = tree_pack(K4, 2)
    assert isinstance(P, TreePacking) and len(P.trees) == 2
    for T in P.trees:
        assert len(T) == 3 and Multigraph(4, [K4.edges[e] for e in T]).is_connected()
    assert set(P.trees[0]).isdisjoint(P.trees[1])
    path = Multigraph(4, [(0, 1), (1, 2), (1, 3)])
    assert set(tree_pack(path, 1).trees[0]) == {0, 1, 2}
    cert = tree_pack(C4, 2)
    assert isinstance(cert, PartitionCertificate) and not cert
    assert cert.crossing_edges == 4 and len(cert.parts) == 4 and cert.verify(C4)


def test_tree_connectivity_examples(C4, K4):
    assert tree_connectivity(K4) == 2
    assert tree_connectivity(C4) == 1


@given(multigraphs(min_n=2, max_n=7, max_m=16, loops=True))
def test_tree_connectivity_matches_partitions(G):
    assert tree_connectivity(G) == oracle.oracle_tree_connectivity(G)


@given(multigraphs(min_n=2, max_n=7, max_m=16))
def test_tree_pack_certificate_is_valid(G):
    lam = tree_connectivity(G)
    P = tree_pack(G, lam + 1)
    assert isinstance(P, PartitionCertificate) and P.verify(G)


def test_partition_connected_examples(C4):
    tree = Multigraph(4, [(0, 1), (1, 2), (2, 3)])
    dec = partition_connected_decompose(tree, 1, [0] * 4)
    assert dec.remainder.edge_ids == frozenset()
    doubled = tree.multiplied(2)
    dec = partition_connected_decompose(doubled, 1, [0] * 4)
    assert len(dec.remainder.edge_ids) == 3
    with pytest.raises(Infeasible):
        partition_connected_decompose(C4, 1, [1] * 4)
    assert not is_partition_connected(C4, 1, [1] * 4)


@given(multigraphs(min_n=2, max_n=6, max_m=14, connected=True))
def test_partition_connected_output(G):
    l0 = [1 if v % 2 else 0 for v in range(G.n)]
    try:
        dec = partition_connected_decompose(G, 1, l0)
    except Infeasible:
        return
    assert oracle.oracle_is_tree_connected(G, dec.packing.trees[0], 1)
    assert all(a >= b for a, b in zip(dec.out_degrees(), l0))


def test_bipartite_index_examples(C4, K4, triangle):
    assert bipartite_index(C4).value == 0
    assert bipartite_index(triangle).value == 1
    assert bipartite_index(K4).value == 2


@given(multigraphs(min_n=1, max_n=8, max_m=16, loops=True))
def test_bipartite_index_matches_oracle(G):
    bi = bipartite_index(G)
    assert bi.value == oracle.oracle_bipartite_index(G)
    assert G.m - cut_size(G, bi.bipartition) == bi.value
    val, _ = max_cut_exact(G)
    lval, lB = max_cut_local(G)
    assert lval <= val and cut_size(G, lB) == lval


def test_is_essentially_vacuous_small(triangle):
    assert is_essentially_edge_connected(triangle, 10)
