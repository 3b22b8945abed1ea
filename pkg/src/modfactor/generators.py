"""Seeded instance generators.  Each output is checked against the property
it advertises before it is returned; the same seed gives the same graph."""

from __future__ import annotations

import random

from .compat import COMPAT_MAX_N, compatible_all
from .connectivity import is_edge_connected, is_essentially_edge_connected, min_cut, tree_pack
from .errors import InputError, LimitExceeded
from .graph import Factor, Multigraph, ResidueMap

RETRIES = 200


def _sides(rng: random.Random, n: int) -> list[int]:
    order = list(range(n))
    rng.shuffle(order)
    a = max(1, n // 2)
    color = [0] * n
    for v in order[a:]:
        color[v] = 1
    return color


def _random_edge(rng: random.Random, n: int, color: list[int] | None) -> tuple[int, int]:
    if color is None:
        u, v = rng.sample(range(n), 2)
        return (u, v)
    X = [v for v in range(n) if color[v] == 0]
    Y = [v for v in range(n) if color[v] == 1]
    return (rng.choice(X), rng.choice(Y))


def _spanning_tree(rng: random.Random, n: int, color: list[int] | None) -> list[tuple[int, int]]:
    """Random spanning tree by random attachment (respecting sides if given)."""
    order = list(range(n))
    rng.shuffle(order)
    if color is not None:
        # start from one vertex of each side so every later vertex has a partner
        first = next(v for v in order if color[v] == 0)
        second = next(v for v in order if color[v] == 1)
        order = [first, second] + [v for v in order if v not in (first, second)]
        edges = [(first, second)]
        placed = [first, second]
        for v in order[2:]:
            partner = rng.choice([u for u in placed if color[u] != color[v]])
            edges.append((partner, v))
            placed.append(v)
        return edges
    edges = []
    for i in range(1, n):
        edges.append((rng.choice(order[:i]), order[i]))
    return edges


def gen_edge_connected(
    n: int,
    lam: int,
    bipartite: bool = False,
    essential_lambda: int | None = None,
    seed: int = 0,
    noise: int | None = None,
) -> Multigraph:
    """Loopless multigraph with edge connectivity at least ``lam``.

    A random spanning tree plus ``noise`` random edges is patched across its
    current minimum cut until the target holds; an essential target is then
    met by further random edges.
    """
    if n < 2:
        raise InputError("need at least two vertices")
    if lam < 0:
        raise InputError("lambda must be nonnegative")
    rng = random.Random(seed)
    color = _sides(rng, n) if bipartite else None
    edges = _spanning_tree(rng, n, color)
    for _ in range(rng.randint(0, n) if noise is None else noise):
        edges.append(_random_edge(rng, n, color))
    for _ in range(RETRIES * max(lam, 1) * n):
        G = Multigraph(n, edges)
        val, S = min_cut(G)
        if val >= lam:
            break
        S = sorted(S)
        T = [v for v in range(n) if v not in S]
        pairs = [(u, v) for u in S for v in T if color is None or color[u] != color[v]]
        edges.append(rng.choice(pairs))
    G = Multigraph(n, edges)
    if essential_lambda is not None and n >= 4:
        for _ in range(RETRIES * n):
            if is_essentially_edge_connected(G, essential_lambda):
                break
            edges.append(_random_edge(rng, n, color))
            G = Multigraph(n, edges)
    _verify_edge(G, lam, bipartite, essential_lambda)
    return G


def _verify_edge(G: Multigraph, lam: int, bipartite: bool, essential_lambda: int | None) -> None:
    if not is_edge_connected(G, lam):
        raise LimitExceeded("generator retry budget exhausted (edge connectivity)")
    if bipartite and not G.is_bipartite():  # pragma: no cover
        raise RuntimeError("bipartite generator produced an odd cycle")
    if essential_lambda is not None and not is_essentially_edge_connected(G, essential_lambda):
        raise LimitExceeded("generator retry budget exhausted (essential connectivity)")


def gen_tree_connected(n: int, m: int, seed: int = 0, noise: int = 0, bipartite: bool = False) -> Multigraph:
    """Union of ``m`` random spanning trees plus ``noise`` random edges."""
    if n < 1 or m < 0:
        raise InputError("need n >= 1 and m >= 0")
    if bipartite and n < 2:
        raise InputError("a bipartite scaffold needs two vertices")
    rng = random.Random(seed)
    color = _sides(rng, n) if bipartite else None
    edges: list[tuple[int, int]] = []
    if n >= 2:
        for _ in range(m):
            edges.extend(_spanning_tree(rng, n, color))
        for _ in range(noise):
            edges.append(_random_edge(rng, n, color))
    G = Multigraph(n, edges)
    if not tree_pack(G, m):  # pragma: no cover
        raise RuntimeError("tree union is not m-tree-connected")
    return G


def random_factor(G: Multigraph, rng: random.Random) -> Factor:
    return Factor(G, [e for e in range(G.m) if rng.random() < 0.5])


def gen_compatible_f(G: Multigraph, k: int, seed: int = 0, tries: int = 20) -> ResidueMap:
    """Compatible residue map: a uniform draw accepted by the exact check on
    small graphs, otherwise the degree residues of a random factor (realised
    maps are compatible)."""
    if k < 1:
        raise InputError("k must be positive")
    rng = random.Random(seed)
    if G.n <= COMPAT_MAX_N:
        for _ in range(tries):
            f = ResidueMap(k, [rng.randrange(k) for _ in range(G.n)])
            if compatible_all(G, f, "exact").verdict:
                return f
    f = ResidueMap(k, random_factor(G, rng).degrees())
    if G.n <= COMPAT_MAX_N and not compatible_all(G, f, "exact").verdict:  # pragma: no cover
        raise RuntimeError("realised residue map reported incompatible")
    return f


def gen_eulerian(n: int, cycles: int, seed: int = 0, odd_size: bool | None = None, mult: int = 1) -> Multigraph:
    """Connected loopless multigraph with all degrees even: a Hamiltonian
    cycle plus random cycles, each edge repeated ``mult`` times.  With
    ``odd_size`` set, triangles are added or dropped until the parity of
    ``|E|`` matches."""
    if n < 3:
        raise InputError("need at least three vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[(i + 1) % n]) for i in range(n)]
    for _ in range(cycles):
        length = rng.randint(3, n)
        cyc = rng.sample(range(n), length)
        edges.extend((cyc[i], cyc[(i + 1) % length]) for i in range(length))
    edges = edges * mult
    if odd_size is not None and (len(edges) % 2 == 1) != odd_size:
        if mult % 2 == 0:
            raise InputError("an even multiplier fixes the size parity")
        cyc = rng.sample(range(n), 3)
        edges.extend([(cyc[0], cyc[1]), (cyc[1], cyc[2]), (cyc[2], cyc[0])] * mult)
    G = Multigraph(n, edges)
    if not G.is_eulerian():  # pragma: no cover
        raise RuntimeError("generator produced a non-Eulerian graph")
    return G


def gen_regular_bipartite(side: int, q: int, seed: int = 0) -> Multigraph:
    """q-regular bipartite multigraph on ``2 * side`` vertices as a union of
    ``q`` random perfect matchings (vertices ``0..side-1`` on one side)."""
    if side < 1 or q < 0:
        raise InputError("need side >= 1 and q >= 0")
    rng = random.Random(seed)
    edges = []
    for _ in range(q):
        perm = list(range(side))
        rng.shuffle(perm)
        edges.extend((i, side + perm[i]) for i in range(side))
    G = Multigraph(2 * side, edges)
    if any(d != q for d in G.degrees()):  # pragma: no cover
        raise RuntimeError("regular generator check failed")
    return G


def gen_random_multigraph(n: int, m: int, seed: int = 0, loops: bool = False) -> Multigraph:
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        if loops and rng.random() < 0.1:
            v = rng.randrange(n)
            edges.append((v, v))
        elif n >= 2:
            edges.append(tuple(rng.sample(range(n), 2)))
    return Multigraph(n, edges)
