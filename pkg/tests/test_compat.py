import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import multigraphs, residue_maps
from modfactor import oracle
from modfactor.compat import compatible_all, compatible_wrt, unique_bipartition
from modfactor.errors import HypothesisError
from modfactor.graph import Bipartition, Factor, Multigraph, ResidueMap


def test_wrt_examples(C4, triangle):
    ok, w = compatible_wrt(C4, ResidueMap(3, [0] * 4), Bipartition.from_side(4, [0, 2]))
    assert ok and w.value == 0
    assert not compatible_wrt(triangle, ResidueMap(2, [1] * 3), Bipartition.from_side(3, [0]))[0]
    # the y correction would need 2 intra edges on the pair side, x has none
    assert not compatible_wrt(triangle, ResidueMap(3, [1] * 3), Bipartition.from_side(3, [0]))[0]


def test_all_examples(triangle, K4, C4):
    assert compatible_all(triangle, ResidueMap(2, [1] * 3)).verdict is False
    assert compatible_all(K4, ResidueMap(5, [0] * 4)).verdict is True
    assert compatible_all(K4, ResidueMap(3, [0] * 4), "sufficient").verdict is True
    assert compatible_all(C4, ResidueMap(2, [1, 0, 0, 0])).verdict is False


def test_unique_bipartition_examples(C4, triangle):
    B = unique_bipartition(C4, 1)
    assert {B.X, B.Y} == {frozenset({0, 2}), frozenset({1, 3})}
    B = unique_bipartition(Multigraph.complete_bipartite(3, 3, 3), 9)
    assert {B.X, B.Y} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
    # a triangle is only 2-edge-connected; three bipartitions tie at m = 3
    with pytest.raises(HypothesisError):
        unique_bipartition(triangle, 3)


@given(multigraphs(min_n=1, max_n=7, max_m=12, loops=True), st.data())
def test_exact_matches_oracle(G, data):
    f = data.draw(residue_maps(G))
    assert compatible_all(G, f).verdict == oracle.oracle_compatible(G, f)


@given(multigraphs(min_n=1, max_n=7, max_m=12), st.data())
def test_sufficient_is_sound(G, data):
    f = data.draw(residue_maps(G, max_k=6))
    if compatible_all(G, f, "sufficient").verdict:
        assert compatible_all(G, f).verdict


@given(multigraphs(min_n=1, max_n=7, max_m=12, loops=True), st.integers(1, 5), st.data())
def test_realised_maps_are_compatible(G, k, data):
    ids = data.draw(st.sets(st.integers(0, G.m - 1))) if G.m else set()
    f = ResidueMap(k, Factor(G, ids).degrees())
    assert compatible_all(G, f).verdict


@given(multigraphs(min_n=2, max_n=6, max_m=10), st.integers(1, 5))
def test_zero_map_always_compatible(G, k):
    assert compatible_all(G, ResidueMap(k, [0] * G.n)).verdict
