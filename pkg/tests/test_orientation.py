import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import multigraphs
from modfactor import oracle
from modfactor.errors import Infeasible, InputError
from modfactor.graph import Multigraph, ResidueMap
from modfactor.orientation import (
    DegreeWindow,
    PreOrientation,
    check_p_orientation,
    euler_circuits,
    eulerian_orientation,
    find_p_orientation,
    orient_interval,
    orient_with_out_degrees,
)


def test_exact_out_degrees(C4, triangle):
    D = orient_with_out_degrees(C4, [1, 1, 1, 1])
    assert D.out_degrees() == (1, 1, 1, 1)
    path = Multigraph(3, [(0, 1), (1, 2)])
    assert orient_with_out_degrees(path, [0, 2, 0]).out_degrees() == (0, 2, 0)
    bad = orient_with_out_degrees(triangle, [3, 0, 0])
    assert bad == frozenset({1, 2})


def test_exact_out_degrees_rejects_bad_sum(C4):
    with pytest.raises(InputError):
        orient_with_out_degrees(C4, [1, 1, 1, 0])


@given(multigraphs(min_n=2, max_n=6, max_m=10), st.data())
def test_out_degree_certificate(G, data):
    t = [0] * G.n
    for _ in range(G.m):
        t[data.draw(st.integers(0, G.n - 1))] += 1
    r = orient_with_out_degrees(G, t)
    if isinstance(r, frozenset):
        assert G.internal_edges(r) > sum(t[v] for v in r)
        assert oracle.enum_orientations(G, lambda D: D.out_degrees() == tuple(t), first=True) is None
    else:
        assert r.out_degrees() == tuple(t)


def test_p_orientation_examples(C4):
    D = find_p_orientation(C4, ResidueMap(2, [1] * 4), DegreeWindow([0] * 4, [2] * 4))
    assert D.out_degrees() == (1, 1, 1, 1)
    G = Multigraph.cycle(3, mult=2)
    D = find_p_orientation(G, ResidueMap(3, [0, 0, 0]))
    assert sorted(D.out_degrees()) == [0, 3, 3]
    with pytest.raises(InputError):
        find_p_orientation(C4, ResidueMap(3, [0, 0, 0, 0]))


def test_p_orientation_infeasible(triangle):
    # every vertex needs out-degree 0 or 3 but only 3 edges: impossible with sum 3
    with pytest.raises(Infeasible):
        find_p_orientation(triangle, ResidueMap(3, [1, 1, 1]), DegreeWindow([0] * 3, [0] * 3))


def test_pre_orientation_honoured(K4):
    pre = PreOrientation(0, {0: 0, 1: 0, 2: 0})
    p = ResidueMap(3, [0, 1, 1, 1])
    D = find_p_orientation(K4, p, pre=pre)
    assert not check_p_orientation(D, p, pre=pre)
    assert D.out_degrees() == (3, 1, 1, 1)
    # the same anchor cannot reach the all-zero map: the triangle left over
    # would need a vertex of out-degree 3
    with pytest.raises(Infeasible):
        find_p_orientation(K4, ResidueMap(3, [0] * 4), pre=pre)


def test_euler_orientation_examples(C4, K4):
    assert eulerian_orientation(C4).out_degrees() == (1, 1, 1, 1)
    assert eulerian_orientation(Multigraph(2, [(0, 1), (0, 1)])).out_degrees() == (1, 1)
    assert eulerian_orientation(Multigraph.complete(5)).out_degrees() == (2,) * 5


def test_euler_circuits_cover_edges():
    G = Multigraph.complete(5).multiplied(2)
    circuits = euler_circuits(G)
    used = [e for c in circuits for e, _ in c]
    assert sorted(used) == list(range(G.m))


@given(multigraphs(min_n=2, max_n=6, max_m=12), st.data())
def test_interval_orientation_or_certificate(G, data):
    d = G.degrees()
    lo = [data.draw(st.integers(0, x)) for x in d]
    hi = [data.draw(st.integers(a, x)) for a, x in zip(lo, d)]
    try:
        D = orient_interval(G, lo, hi)
    except Infeasible:
        assert oracle.enum_orientations(G, first=True, lower=lo, upper=hi) is None
        return
    assert all(a <= x <= b for a, x, b in zip(lo, D.out_degrees(), hi))


@given(multigraphs(min_n=2, max_n=6, max_m=11), st.integers(1, 4), st.data())
def test_p_orientation_agrees_with_oracle(G, k, data):
    vals = [data.draw(st.integers(0, k - 1)) for _ in range(G.n - 1)]
    vals.append((G.m - sum(vals)) % k)
    p = ResidueMap(k, vals)
    witness = oracle.enum_orientations(
        G, first=True, vertex_ok=lambda v, x: (x - p[v]) % k == 0
    )
    try:
        D = find_p_orientation(G, p)
    except Infeasible:
        assert witness is None
        return
    assert witness is not None
    assert not check_p_orientation(D, p)


def test_loops_rejected():
    with pytest.raises(InputError):
        find_p_orientation(Multigraph(1, [(0, 0)]), ResidueMap(1, [0]))
