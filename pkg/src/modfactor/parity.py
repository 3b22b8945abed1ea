"""Parity (g, f)-factors and the bounded modulo-2 factor constructions.

A parity (g, f)-factor is solved by a perfect-matching gadget.  Vertex ``v``
becomes ``d(v)`` stubs (one per edge end), a set C1 of ``d - f`` vertices
joined to every stub, and a clique C2 of ``f - g`` vertices also joined to
every stub.  C1 absorbs exactly ``d - f`` stubs; C2 absorbs ``j`` more with
``f - g - j`` even (the rest pair up inside the clique).  The stubs left for
graph edges number ``f - j``, which ranges over ``g, g+2, ..., f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .connectivity import is_edge_connected, is_partition_connected
from .errors import HypothesisError, Infeasible, InputError
from .graph import Factor, Multigraph, ResidueMap
from .matching import max_matching


def _check_gf(G: Multigraph, g: Sequence[int], f: Sequence[int]) -> None:
    if len(g) != G.n or len(f) != G.n:
        raise InputError("g and f need one value per vertex")
    for v in range(G.n):
        if g[v] > f[v]:
            raise InputError(f"g({v}) > f({v})")
        if (f[v] - g[v]) % 2:
            raise InputError(f"g({v}) and f({v}) differ in parity")
    if sum(f) % 2:
        raise InputError("sum of f is odd")


def clamp_parity_window(d: int, g: int, f: int) -> tuple[int, int]:
    """Shrink ``[g, f]`` into ``[0, d]`` keeping the parity of ``f``."""
    if g < 0:
        g = f % 2
    if f > d:
        f = d if (d - f) % 2 == 0 else d - 1
    return g, f


def parity_factor(G: Multigraph, g: Sequence[int], f: Sequence[int]) -> Factor:
    """Spanning subgraph with ``g <= d_H <= f`` and ``d_H = f (mod 2)``."""
    _check_gf(G, g, f)
    d = G.degrees()
    windows = [clamp_parity_window(d[v], g[v], f[v]) for v in range(G.n)]
    if any(lo > hi for lo, hi in windows):
        v = next(v for v, (lo, hi) in enumerate(windows) if lo > hi)
        raise Infeasible(f"no admissible degree at vertex {v}", certificate=frozenset([v]))

    stubs: list[list[int]] = [[] for _ in range(G.n)]
    counter = itertools.count()
    gadget_edges: list[tuple[int, int]] = []
    edge_of: dict[tuple[int, int], int] = {}
    for e, (u, v) in enumerate(G.edges):
        a, b = next(counter), next(counter)
        stubs[u].append(a)
        stubs[v].append(b)
        gadget_edges.append((a, b))
        edge_of[(a, b)] = edge_of[(b, a)] = e
    for v, (lo, hi) in enumerate(windows):
        c1 = [next(counter) for _ in range(d[v] - hi)]
        c2 = [next(counter) for _ in range(hi - lo)]
        for c in c1 + c2:
            gadget_edges.extend((c, s) for s in stubs[v])
        gadget_edges.extend(itertools.combinations(c2, 2))
    N = next(counter)
    mate = max_matching(N, gadget_edges)
    if any(x == -1 for x in mate):
        raise Infeasible("no parity factor: the gadget has no perfect matching")
    chosen = {edge_of[(a, mate[a])] for a in range(N) if (a, mate[a]) in edge_of}
    H = Factor(G, chosen)
    for v in range(G.n):
        x = H.degree(v)
        if not (windows[v][0] <= x <= windows[v][1]) or (x - f[v]) % 2:  # pragma: no cover
            raise RuntimeError("parity gadget produced an invalid factor")
    return H


def lovasz_violation(G: Multigraph, g: Sequence[int], f: Sequence[int], max_n: int = 10):
    """Minimise ``1 + sum_A f + sum_B (d - g) - d(A, B) - omega(G - A - B)``
    over disjoint ``A, B`` with ``A | B`` nonempty.

    Returns ``(A, B, slack)`` for a minimiser; a negative slack means the
    sufficient condition fails.
    """
    _check_gf(G, g, f)
    if not G.is_connected():
        raise InputError("criterion is stated for connected graphs")
    if G.n > max_n:
        raise InputError(f"enumeration capped at n <= {max_n}")
    d = G.degrees()
    best = None
    for labels in itertools.product((0, 1, 2), repeat=G.n):
        A = frozenset(v for v in range(G.n) if labels[v] == 1)
        B = frozenset(v for v in range(G.n) if labels[v] == 2)
        if not A and not B:
            continue
        rest = [v for v in range(G.n) if labels[v] == 0]
        omega = _components_on(G, rest)
        dab = sum(1 for u, v in G.edges if (u in A and v in B) or (u in B and v in A))
        slack = 1 + sum(f[v] for v in A) + sum(d[v] - g[v] for v in B) - dab - omega
        if best is None or slack < best[2]:
            best = (A, B, slack)
    return best


def _components_on(G: Multigraph, vs: list[int]) -> int:
    keep = set(vs)
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(vs)
    for u, v in G.edges:
        if u in keep and v in keep:
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                count -= 1
    return count


# --------------------------------------------------------------------------
# modulo-2 factors with bounded degrees


def _parity_pick(options: Sequence[int], r: int) -> int:
    return next(x for x in options if (x - r) % 2 == 0)


def mod2_windows(G: Multigraph, f: ResidueMap) -> tuple[list[int], list[int]]:
    d = G.degrees()
    g2 = [_parity_pick((x // 2 - 1, x // 2), f[v]) for v, x in enumerate(d)]
    f2 = [_parity_pick(((x + 1) // 2, (x + 1) // 2 + 1), f[v]) for v, x in enumerate(d)]
    return g2, f2


def mod2_bounded_factor(
    G: Multigraph,
    f: ResidueMap,
    z: int | None = None,
    z_target: int | None = None,
    check: bool = True,
) -> Factor:
    """Factor with ``d_H = f (mod 2)`` and ``floor(d/2)-1 <= d_H <= ceil(d/2)+1``.

    With ``z`` and ``z_target`` the degree at ``z`` is pinned to the target,
    which must have the right parity and lie in the window.
    """
    f.check(G)
    if f.modulus != 2:
        raise InputError("f must be a residue map modulo 2")
    if f.total() % 2:
        raise HypothesisError("sum of f is odd", clause="parity")
    if check and G.n > 1 and not is_edge_connected(G, 2):
        raise HypothesisError("graph is not 2-edge-connected", clause="2-edge-connected")
    g2, f2 = mod2_windows(G, f)
    if z is not None and z_target is not None:
        if not 0 <= z < G.n:
            raise InputError(f"vertex {z} out of range")
        if (z_target - f[z]) % 2 or not g2[z] <= z_target <= f2[z] or not 0 <= z_target <= G.degree(z):
            raise InputError(f"target {z_target} at {z} is not plausible: need parity {f[z]} within [{g2[z]}, {f2[z]}]")
        g2[z] = f2[z] = z_target
    return parity_factor(G, g2, f2)


def mod2_partition_factor(
    G: Multigraph,
    f: ResidueMap,
    s: Sequence[int],
    s0: Sequence[int],
    l0: Sequence[int],
    check: bool = True,
) -> Factor:
    """Factor with ``d_H = f (mod 2)`` and ``s <= d_H <= d - s0`` on a
    (1, l0)-partition-connected graph."""
    f.check(G)
    if f.modulus != 2:
        raise InputError("f must be a residue map modulo 2")
    d = G.degrees()
    for v in range(G.n):
        if s[v] + s0[v] >= d[v]:
            raise InputError(f"s + s0 must stay below the degree at {v}")
        if max(s[v], s0[v]) > l0[v]:
            raise InputError(f"max(s, s0) exceeds l0 at {v}")
    if f.total() % 2:
        raise HypothesisError("sum of f is odd", clause="parity")
    if check and not is_partition_connected(G, 1, l0):
        raise HypothesisError("graph is not (1, l0)-partition-connected", clause="partition-connected")
    g2 = [_parity_pick((s[v], s[v] + 1), f[v]) for v in range(G.n)]
    f2 = [_parity_pick((d[v] - s0[v] - 1, d[v] - s0[v]), f[v]) for v in range(G.n)]
    return parity_factor(G, g2, f2)


def even_factor(G: Multigraph, check: bool = True) -> Factor:
    """Factor whose degrees are all positive and even."""
    if G.has_loops:
        raise HypothesisError("graph has loops", clause="loopless")
    if check:
        if G.min_degree() < 3:
            raise HypothesisError("minimum degree is below 3", clause="min-degree")
        if G.n > 1 and not is_edge_connected(G, 2):
            raise HypothesisError("graph is not 2-edge-connected", clause="2-edge-connected")
    d = G.degrees()
    return parity_factor(G, [2] * G.n, [x - x % 2 for x in d])


@dataclass(frozen=True)
class RegularSplit:
    first: Factor
    second: Factor


def regular_split(G: Multigraph) -> RegularSplit:
    """Split a connected 2r-regular graph with (r+1)n even into two factors
    with degrees in {r-1, r+1}."""
    d = G.degrees()
    if not d or len(set(d)) != 1 or d[0] % 2:
        raise HypothesisError("graph is not 2r-regular", clause="regular")
    r = d[0] // 2
    if ((r + 1) * G.n) % 2:
        raise HypothesisError("(r+1)|V| is odd", clause="parity")
    if not G.is_connected():
        raise HypothesisError("graph is not connected", clause="connected")
    H = mod2_bounded_factor(G, ResidueMap.constant(G.n, 2, r + 1), check=False)
    return RegularSplit(H, H.complement())
