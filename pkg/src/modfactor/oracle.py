"""Brute-force ground truth at desk scale.

Nothing here calls a solver; only the plain graph types are used.  Every
enumerator enforces a hard size cap (override through environment variables)
and raises :class:`LimitExceeded` beyond it.
"""

from __future__ import annotations

import itertools
import os
from typing import Callable, Iterator, Sequence

from .errors import InputError, LimitExceeded
from .graph import Factor, Multigraph, Orientation, ResidueMap

MAX_FACTOR_EDGES = int(os.environ.get("MODFACTOR_ORACLE_MAX_FACTOR_EDGES", "24"))
MAX_ORIENT_EDGES = int(os.environ.get("MODFACTOR_ORACLE_MAX_ORIENT_EDGES", "20"))
MAX_BIPARTITION_N = int(os.environ.get("MODFACTOR_ORACLE_MAX_BIPARTITION_N", "12"))
MAX_PARTITION_N = int(os.environ.get("MODFACTOR_ORACLE_MAX_PARTITION_N", "8"))

VertexTest = Callable[[int, int], bool]


def _closing_order(G: Multigraph) -> list[list[int]]:
    """Vertices whose last incident edge (scanning ids downward) is ``i``."""
    closes: list[list[int]] = [[] for _ in range(G.m)]
    for v in range(G.n):
        inc = G.incident(v)
        if inc:
            closes[min(inc)].append(v)
    return closes


def _enumerate(G: Multigraph, cap: int, what: str, choice, vertex_ok, bounds) -> Iterator[list[bool]]:
    """Shared DFS over one bit per edge, highest id first and 0 before 1, so
    complete assignments come out in increasing bitmask order.

    ``choice(e, bit)`` returns the per-vertex increments for that bit.
    ``bounds`` are optional (lower, upper) on the counted quantity.
    """
    if G.m > cap:
        raise LimitExceeded(f"{what} enumeration capped at |E| <= {cap}")
    closes = _closing_order(G)
    isolated = [v for v in range(G.n) if not G.incident(v)]
    if vertex_ok is not None and any(not vertex_ok(v, 0) for v in isolated):
        return
    if bounds is not None and any(not bounds[0][v] <= 0 <= bounds[1][v] for v in isolated):
        return
    # undecided edge ends per vertex, for the lower-bound prune
    left = [0] * G.n
    for u, v in G.edges:
        left[u] += 1
        left[v] += 1
    count = [0] * G.n
    bits = [False] * G.m

    def rec(e: int):
        if e < 0:
            yield list(bits)
            return
        u, v = G.edges[e]
        left[u] -= 1
        left[v] -= 1
        for bit in (False, True):
            inc = choice(e, bit)
            for x, a in inc:
                count[x] += a
            ok = True
            if bounds is not None:
                for x in {u, v}:
                    if count[x] > bounds[1][x] or count[x] + left[x] < bounds[0][x]:
                        ok = False
            if ok and vertex_ok is not None:
                ok = all(vertex_ok(x, count[x]) for x in closes[e])
            if ok:
                bits[e] = bit
                yield from rec(e - 1)
                bits[e] = False
            for x, a in inc:
                count[x] -= a
        left[u] += 1
        left[v] += 1

    yield from rec(G.m - 1)


def iter_factors(
    G: Multigraph,
    predicate: Callable[[Factor], bool] | None = None,
    vertex_ok: VertexTest | None = None,
    lower: Sequence[int] | None = None,
    upper: Sequence[int] | None = None,
) -> Iterator[Factor]:
    """Spanning subgraphs in increasing edge-bitmask order.

    ``vertex_ok(v, degree)`` is tested once all edges at ``v`` are decided;
    ``lower``/``upper`` prune on degree.  ``predicate`` filters the rest.
    """

    def choice(e, bit):
        if not bit:
            return ()
        u, v = G.edges[e]
        return ((u, 1), (v, 1))

    bounds = None
    if lower is not None or upper is not None:
        lo = list(lower) if lower is not None else [0] * G.n
        hi = list(upper) if upper is not None else list(G.degrees())
        bounds = (lo, hi)
    for bits in _enumerate(G, MAX_FACTOR_EDGES, "factor", choice, vertex_ok, bounds):
        H = Factor(G, [e for e, b in enumerate(bits) if b])
        if predicate is None or predicate(H):
            yield H


def enum_factors(G: Multigraph, predicate=None, first: bool = False, **prune):
    """All matching factors, or the first one (``None`` if there is none)."""
    it = iter_factors(G, predicate, **prune)
    if first:
        return next(it, None)
    return list(it)


def iter_orientations(
    G: Multigraph,
    predicate: Callable[[Orientation], bool] | None = None,
    vertex_ok: VertexTest | None = None,
    lower: Sequence[int] | None = None,
    upper: Sequence[int] | None = None,
) -> Iterator[Orientation]:
    """Orientations of a loopless graph; bit 1 reverses the stored direction.
    ``vertex_ok(v, outdeg)`` and the bounds apply to out-degrees."""
    if G.has_loops:
        raise InputError("orientations are only defined on loopless hosts")

    def choice(e, bit):
        u, v = G.edges[e]
        return ((v if bit else u, 1),)

    bounds = None
    if lower is not None or upper is not None:
        lo = list(lower) if lower is not None else [0] * G.n
        hi = list(upper) if upper is not None else list(G.degrees())
        bounds = (lo, hi)
    for bits in _enumerate(G, MAX_ORIENT_EDGES, "orientation", choice, vertex_ok, bounds):
        D = Orientation(G, [not b for b in bits])
        if predicate is None or predicate(D):
            yield D


def enum_orientations(G: Multigraph, predicate=None, first: bool = False, **prune):
    it = iter_orientations(G, predicate, **prune)
    if first:
        return next(it, None)
    return list(it)


# --------------------------------------------------------------------------
# independent checkers


def degrees_of(G: Multigraph, edge_ids) -> list[int]:
    d = [0] * G.n
    for e in edge_ids:
        u, v = G.edges[e]
        d[u] += 1
        d[v] += 1
    return d


def check_factor(
    G: Multigraph,
    edge_ids,
    f: ResidueMap | None = None,
    lower: Sequence[int] | None = None,
    upper: Sequence[int] | None = None,
) -> list[str]:
    """Edge-subset validity, residues and windows, recomputed from scratch."""
    ids = list(edge_ids)
    bad = []
    if len(set(ids)) != len(ids) or any(not 0 <= e < G.m for e in ids):
        bad.append("not a subset of the edge ids")
        return bad
    d = degrees_of(G, ids)
    for v in range(G.n):
        if f is not None and (d[v] - f.values[v]) % f.modulus:
            bad.append(f"residue at {v}")
        if lower is not None and d[v] < lower[v]:
            bad.append(f"below window at {v}")
        if upper is not None and d[v] > upper[v]:
            bad.append(f"above window at {v}")
    return bad


def is_bipartite_edge_set(G: Multigraph, edge_ids) -> bool:
    n = G.n
    for mask in range(1 << max(n - 1, 0)):
        side = [0] + [(mask >> i) & 1 for i in range(n - 1)]
        if all(side[G.edges[e][0]] != side[G.edges[e][1]] for e in edge_ids):
            return True
    return False


def iter_bipartitions(n: int) -> Iterator[frozenset[int]]:
    """Every side ``X`` containing vertex 0 (the whole set included)."""
    if n > MAX_BIPARTITION_N:
        raise LimitExceeded(f"bipartition enumeration capped at n <= {MAX_BIPARTITION_N}")
    if n == 0:
        yield frozenset()
        return
    for rest in itertools.product((True, False), repeat=n - 1):
        yield frozenset([0] + [v + 1 for v, keep in enumerate(rest) if keep])


def cut_edges(G: Multigraph, A: frozenset[int]) -> int:
    return sum(1 for u, v in G.edges if (u in A) != (v in A))


def oracle_edge_connectivity(G: Multigraph) -> int:
    if G.n < 2:
        raise InputError("needs at least two vertices")
    return min(cut_edges(G, X) for X in iter_bipartitions(G.n) if len(X) < G.n)


def oracle_bipartite_index(G: Multigraph) -> int:
    return min(G.m - cut_edges(G, X) for X in iter_bipartitions(G.n))


def oracle_compatible(G: Multigraph, f: ResidueMap) -> bool:
    """Direct search for the balancing ``x`` or ``y`` on every bipartition."""
    k = f.modulus
    for X in iter_bipartitions(G.n):
        ex = sum(1 for u, v in G.edges if u in X and v in X)
        ey = sum(1 for u, v in G.edges if u not in X and v not in X)
        sx = sum(f.values[v] for v in X)
        sy = sum(f.values[v] for v in range(G.n) if v not in X)
        ok = any((sx - 2 * x - sy) % k == 0 for x in range(ex + 1)) or any(
            (sx - sy + 2 * y) % k == 0 for y in range(ey + 1)
        )
        if not ok:
            return False
    return True


def iter_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of ``range(n)`` (restricted growth strings)."""
    if n > MAX_PARTITION_N:
        raise LimitExceeded(f"partition enumeration capped at n <= {MAX_PARTITION_N}")
    if n == 0:
        yield []
        return

    def rec(v: int, blocks: list[list[int]]):
        if v == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1, blocks)
            b.pop()
        blocks.append([v])
        yield from rec(v + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def oracle_tree_connectivity(G: Multigraph) -> int:
    """Largest m with ``crossing(P) >= m(|P| - 1)`` for every partition P."""
    if G.n <= 1:
        raise InputError("needs at least two vertices")
    best = None
    for parts in iter_partitions(G.n):
        if len(parts) < 2:
            continue
        where = {v: i for i, b in enumerate(parts) for v in b}
        crossing = sum(1 for u, v in G.edges if where[u] != where[v])
        val = crossing // (len(parts) - 1)
        best = val if best is None else min(best, val)
    return best


def oracle_is_tree_connected(G: Multigraph, edge_ids, m: int) -> bool:
    sub = Multigraph(G.n, [G.edges[e] for e in edge_ids])
    return m == 0 or G.n <= 1 or oracle_tree_connectivity(sub) >= m
