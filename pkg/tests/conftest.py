import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from modfactor.graph import Multigraph, ResidueMap

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def multigraphs(draw, min_n=1, max_n=7, max_m=14, loops=False, connected=False):
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected and n > 1:
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    m = draw(st.integers(0, max(0, max_m - len(edges))))
    for _ in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u == v and (not loops or n == 1):
            if n == 1:
                continue
            v = (u + 1) % n
        edges.append((u, v))
    return Multigraph(n, edges)


@st.composite
def residue_maps(draw, G, k=None, max_k=4):
    k = k or draw(st.integers(1, max_k))
    return ResidueMap(k, [draw(st.integers(0, k - 1)) for _ in range(G.n)])


def rand_graph(rng: random.Random, n: int, m: int, loops: bool = False) -> Multigraph:
    edges = []
    for _ in range(m):
        if loops and rng.random() < 0.1:
            v = rng.randrange(n)
            edges.append((v, v))
        else:
            edges.append(tuple(rng.sample(range(n), 2)))
    return Multigraph(n, edges)


@pytest.fixture
def C4():
    return Multigraph.cycle(4)


@pytest.fixture
def K4():
    return Multigraph.complete(4)


@pytest.fixture
def triangle():
    return Multigraph.cycle(3)
