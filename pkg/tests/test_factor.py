import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modfactor import oracle
from modfactor.errors import HypothesisError, Infeasible, InputError
from modfactor.factor import (
    Trail,
    bipartite_f_factor,
    bipartite_f_factor_tree,
    bipartite_f_factor_window,
    choose_special_vertex,
    derived_half_factors,
    eulerian_half_factor,
    general_f_factor,
    half_factor,
    half_window,
    high_tree_f_factor,
    high_tree_window,
    is_exceptional,
    mod2_18_edge_eulerian,
    near_bipartite_f_factor,
    select_alternate,
    tree_bound,
    x_parity_trails,
)
from modfactor.generators import gen_compatible_f, gen_edge_connected, gen_eulerian, gen_tree_connected
from modfactor.graph import Bipartition, Factor, Multigraph, ResidueMap

K33x3 = Multigraph.complete_bipartite(3, 3, 3)


def _assert_factor(G, H, f, lower, upper):
    assert not oracle.check_factor(G, H.edge_ids, f, lower, upper)


# bipartite graphs -----------------------------------------------------------


def test_bipartite_examples(C4):
    H = bipartite_f_factor(K33x3, ResidueMap(3, [0] * 6))
    assert set(H.degrees()) <= {3, 6}
    assert bipartite_f_factor(C4, ResidueMap(1, [0] * 4)).degrees() == (1, 1, 1, 1)
    with pytest.raises(HypothesisError) as exc:
        bipartite_f_factor(C4, ResidueMap(2, [1, 0, 0, 0]))
    assert exc.value.clause == "compatibility"


def test_bipartite_rejects_non_bipartite(triangle):
    with pytest.raises(HypothesisError) as exc:
        bipartite_f_factor(triangle, ResidueMap(2, [0] * 3))
    assert exc.value.clause == "bipartite"


def test_bipartite_pinned_vertex():
    lo, hi = half_window(K33x3, 3)
    H = bipartite_f_factor(K33x3, ResidueMap(3, [0] * 6), z=0, z_target=6)
    assert H.degree(0) == 6


@settings(max_examples=25)
@given(st.integers(2, 4), st.integers(0, 10**6))
def test_bipartite_generated(k, seed):
    G = gen_edge_connected(8, 3 * k - 3, bipartite=True, seed=seed)
    f = gen_compatible_f(G, k, seed=seed)
    H = bipartite_f_factor(G, f)
    lo, hi = half_window(G, k)
    _assert_factor(G, H, f, lo, hi)


def test_window_examples():
    G = K33x3
    f = ResidueMap(3, [1] * 6)
    H = bipartite_f_factor_window(G, f, [1] * 6, [1] * 6, [1] * 6)
    _assert_factor(G, H, f, [1] * 6, [8] * 6)
    with pytest.raises(InputError):
        bipartite_f_factor_window(G, f, [5] * 6, [3] * 6, [5] * 6)
    with pytest.raises(HypothesisError):
        bipartite_f_factor_window(G, ResidueMap(2, [0] * 6), [0] * 6, [0] * 6, [0] * 6)


def test_tree_examples():
    assert tree_bound(3) == 1 and tree_bound(4) == 1 and tree_bound(5) == 2
    G = Multigraph.complete_bipartite(3, 3, 4)
    H = bipartite_f_factor_tree(G, ResidueMap(3, [0] * 6))
    assert all(x >= 3 and x % 3 == 0 for x in H.degrees())
    with pytest.raises(InputError):
        bipartite_f_factor_tree(Multigraph(3, []), ResidueMap(3, [0] * 3))
    with pytest.raises(InputError):
        bipartite_f_factor_tree(G, ResidueMap(2, [0] * 6))


# trails -------------------------------------------------------------------


def test_trail_decomposition_examples():
    G = Multigraph(3, [(0, 1), (1, 2)])
    assert x_parity_trails(Factor(G, []), {0, 2}).trails == ()
    dec = x_parity_trails(Factor(G, [0, 1]), {0, 2})
    assert len(dec.trails) == 1 and len(dec.trails[0].edges) == 2
    single = Multigraph(2, [(0, 1)])
    with pytest.raises(Infeasible):
        x_parity_trails(Factor(single, [0]), {0, 1}, [Trail(0, (0,))])


def test_select_alternate():
    G = Multigraph(3, [(0, 1), (1, 2)])
    assert select_alternate(G, Trail(0, (0, 1)), 0, frozenset({0, 2})) == [0]
    assert select_alternate(G, Trail(0, (0, 1)), 0, frozenset({1})) == [1]


# near-bipartite and general -------------------------------------------------


def test_near_bipartite_on_bipartite_input():
    B = Bipartition.from_side(6, [0, 1, 2])
    f = ResidueMap(3, [0] * 6)
    H = near_bipartite_f_factor(K33x3, f, B, Factor.full(K33x3), Factor(K33x3, []))
    lo, hi = half_window(K33x3, 3)
    _assert_factor(K33x3, H, f, lo, hi)


def test_general_examples():
    G = Multigraph.complete(6, 3)
    H = general_f_factor(G, ResidueMap(3, [1] * 6))
    d = G.degrees()
    _assert_factor(G, H, ResidueMap(3, [1] * 6), [x // 2 - 2 for x in d], [x // 2 + 3 for x in d])
    with pytest.raises(HypothesisError):
        general_f_factor(Multigraph.complete(5, 2), ResidueMap(3, [0] * 5))


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_general_k2_generated(seed):
    G = gen_edge_connected(7, 5, seed=seed)
    if G.is_bipartite():
        return
    f = gen_compatible_f(G, 2, seed=seed)
    H = general_f_factor(G, f)
    d = G.degrees()
    _assert_factor(G, H, f, [x // 2 - 1 for x in d], [x // 2 + 2 for x in d])


def test_half_factor_window():
    G = Multigraph.complete(5).multiplied(3)
    H = half_factor(G)
    assert all(x // 2 <= h <= x // 2 + 1 for h, x in zip(H.degrees(), G.degrees()))


# Eulerian half factors ------------------------------------------------------


def test_eulerian_half_examples(C4, triangle):
    assert eulerian_half_factor(C4, 0).degrees() == (1, 1, 1, 1)
    H = eulerian_half_factor(triangle, 0)
    assert H.degree(0) == 2 and H.degree(1) == H.degree(2) == 1
    assert eulerian_half_factor(Multigraph.cycle(4, 2), 3).degrees() == (2, 2, 2, 2)


@given(st.integers(3, 8), st.integers(0, 4), st.integers(0, 10**6), st.data())
def test_eulerian_half_property(n, cycles, seed, data):
    G = gen_eulerian(n, cycles, seed=seed)
    z = data.draw(st.integers(0, n - 1))
    H = eulerian_half_factor(G, z)
    d = G.degrees()
    for v in range(n):
        if v != z:
            assert 2 * H.degree(v) == d[v]
    assert H.degree(z) - d[z] // 2 == G.m % 2


# high tree-connectivity -------------------------------------------------------


def test_exceptional_detector():
    G = Multigraph.complete(7, 7)  # 42-regular, |E| = 147 odd
    f = ResidueMap(3, [21] * 7)
    assert is_exceptional(G, f)
    assert not is_exceptional(G, ResidueMap(3, [20] * 7))
    assert not is_exceptional(Multigraph.complete(7, 2), ResidueMap(3, [6] * 7))


def test_exceptional_factor_window():
    G = Multigraph.complete(7, 7)
    f = ResidueMap(3, [21] * 7)
    H = high_tree_f_factor(G, f)
    z = choose_special_vertex(G, f)
    lo, hi = high_tree_window(G, f, z)
    _assert_factor(G, H, f, lo, hi)


def test_high_tree_generated():
    G = gen_tree_connected(6, 16, seed=2)
    f = gen_compatible_f(G, 3, seed=2)
    H = high_tree_f_factor(G, f)
    lo, hi = high_tree_window(G, f, None if not is_exceptional(G, f) else choose_special_vertex(G, f))
    _assert_factor(G, H, f, lo, hi)


def test_high_tree_bipartite_route():
    G = gen_tree_connected(6, 10, seed=4, bipartite=True)
    f = gen_compatible_f(G, 2, seed=4)
    H = high_tree_f_factor(G, f, z=0)
    lo, hi = high_tree_window(G, f, 0)
    _assert_factor(G, H, f, lo, hi)


# derived sets -----------------------------------------------------------------


def test_derived_odd_half():
    H = derived_half_factors(K33x3, 3, "odd-half")
    assert set(H.degrees()) <= {3, 6}


def test_derived_pm_k():
    G = Multigraph.complete_bipartite(4, 4, 2)  # 8-regular, 8-edge-connected
    H = derived_half_factors(G, 1, "eulerian-pm-k")
    assert set(H.degrees()) <= {3, 5}


def test_derived_f_or_f_plus_k():
    G = Multigraph.complete(6, 3)  # 15-regular
    H = derived_half_factors(G, 2, "f-or-f-plus-k-edge", [7] * 6)
    assert set(H.degrees()) <= {7, 9}
    with pytest.raises(InputError):
        derived_half_factors(G, 2, "f-or-f-plus-k-edge", [8] * 6)
    with pytest.raises(InputError):
        derived_half_factors(G, 2, "nope")


def test_mod2_18():
    with pytest.raises(HypothesisError):
        mod2_18_edge_eulerian(Multigraph.complete_bipartite(4, 4, 6))
    with pytest.raises(HypothesisError):
        mod2_18_edge_eulerian(Multigraph.complete(7, 3))  # |E| = 63
    G = Multigraph.complete(5, 9)
    H = mod2_18_edge_eulerian(G)
    assert set(H.degrees()) <= {16, 20}
