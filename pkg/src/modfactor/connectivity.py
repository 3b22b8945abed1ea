"""Connectivity certificates: edge and essential edge connectivity, spanning
tree packing with partition certificates, partition-connected
decompositions, and the bipartite index (via exact max cut).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import matroid
from .errors import Infeasible, InputError, LimitExceeded
from .flow import capacity_matrix, max_flow
from .graph import Bipartition, Factor, Multigraph, Orientation

log = logging.getLogger(__name__)

EXACT_CUT_MAX_N = int(os.environ.get("MODFACTOR_EXACT_CUT_MAX_N", "24"))
ESSENTIAL_MAX_N = int(os.environ.get("MODFACTOR_ESSENTIAL_MAX_N", "20"))


# --------------------------------------------------------------------------
# edge connectivity


def min_cut(G: Multigraph) -> tuple[int, frozenset[int]]:
    """Global minimum edge cut and one side of it (n-1 max-flow calls)."""
    if G.n < 2:
        raise InputError("edge connectivity needs at least two vertices")
    cap = capacity_matrix(G)
    best, side = None, frozenset()
    for t in range(1, G.n):
        val, S = max_flow(cap, 0, t, limit=best)
        if best is None or val < best:
            best, side = val, frozenset(S)
    return best, side


def edge_connectivity(G: Multigraph) -> int:
    return min_cut(G)[0]


def is_edge_connected(G: Multigraph, lam: int) -> bool:
    if lam <= 0 or G.n < 2:
        return True
    cap = capacity_matrix(G)
    return all(max_flow(cap, 0, t, limit=lam)[0] >= lam for t in range(1, G.n))


def _pair_weights(G: Multigraph) -> dict[tuple[int, int], int]:
    w: dict[tuple[int, int], int] = {}
    for u, v in G.edges:
        if u != v:
            key = (u, v) if u < v else (v, u)
            w[key] = w.get(key, 0) + 1
    return w


def _side_bits(masks: np.ndarray, n: int) -> np.ndarray:
    """0/1 side of each vertex for masks over vertices 1..n-1 (vertex 0 on side 0)."""
    bits = (masks[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
    return np.concatenate([np.zeros((len(masks), 1), dtype=np.int64), bits], axis=1)


def essential_edge_connectivity(G: Multigraph) -> int:
    """Largest λ such that every edge cut with fewer than λ edges has all of
    its edges at one common vertex.

    Only cuts with at least two vertices on each side can fail that test, so
    the answer is the smallest such cut whose edges do not share a vertex, or
    the sentinel ``G.m + 1`` when there is none.  Exact subset enumeration.
    """
    n = G.n
    if n < 4:
        raise InputError("essential edge connectivity needs at least four vertices")
    if n > ESSENTIAL_MAX_N:
        raise LimitExceeded(f"essential connectivity enumeration capped at n <= {ESSENTIAL_MAX_N}")
    pairs = _pair_weights(G)
    best = G.m + 1
    total = 1 << (n - 1)
    chunk = 1 << 15
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        s = _side_bits(masks, n)
        size = s.sum(axis=1)
        cut = np.zeros(len(masks), dtype=np.int64)
        at = np.zeros((len(masks), n), dtype=np.int64)
        for (u, v), w in pairs.items():
            x = (s[:, u] ^ s[:, v]) * w
            cut += x
            at[:, u] += x
            at[:, v] += x
        shared = (at == cut[:, None]).any(axis=1) | (cut == 0)
        ok = (size >= 2) & (size <= n - 2) & ~shared
        if ok.any():
            best = min(best, int(cut[ok].min()))
    return best


def is_essentially_edge_connected(G: Multigraph, lam: int) -> bool:
    if lam <= 0 or G.n < 4:
        return True
    return essential_edge_connectivity(G) >= lam


# --------------------------------------------------------------------------
# spanning tree packing


@dataclass(frozen=True)
class TreePacking:
    trees: tuple[frozenset[int], ...]
    leftover: frozenset[int]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class PartitionCertificate:
    """A vertex partition with fewer crossing edges than ``m(|P|-1)``."""

    parts: tuple[tuple[int, ...], ...]
    crossing_edges: int
    m: int

    def __bool__(self) -> bool:
        return False

    def verify(self, G: Multigraph) -> bool:
        where = {}
        for i, part in enumerate(self.parts):
            for v in part:
                where[v] = i
        if sorted(where) != list(range(G.n)):
            return False
        crossing = sum(1 for u, v in G.edges if where[u] != where[v])
        return crossing == self.crossing_edges and crossing < self.m * (len(self.parts) - 1)


def _strip_loops(G: Multigraph) -> list[int]:
    ids = [e for e, (u, v) in enumerate(G.edges) if u != v]
    if len(ids) != G.m:
        log.warning("ignoring %d loop(s) for tree packing", G.m - len(ids))
    return ids


def tree_pack(G: Multigraph, m: int) -> TreePacking | PartitionCertificate:
    """Either ``m`` edge-disjoint spanning trees or a Nash-Williams/Tutte
    partition showing that none exist."""
    if m < 0:
        raise InputError("tree count must be nonnegative")
    ids = _strip_loops(G)
    loops = frozenset(range(G.m)) - frozenset(ids)
    if m == 0 or G.n <= 1:
        return TreePacking(tuple(frozenset() for _ in range(m)), frozenset(range(G.m)))
    if len(ids) < m * (G.n - 1):
        # cheap counting certificate: the all-singletons partition
        return PartitionCertificate(tuple((v,) for v in range(G.n)), len(ids), m)
    forests = [matroid.ForestMatroid(G) for _ in range(m)]
    owner, leftover = matroid.partition(ids, forests)
    if all(F.full() for F in forests):
        trees = tuple(frozenset(F.edges()) for F in forests)
        return TreePacking(trees, frozenset(leftover) | loops)
    L = matroid.closure(leftover, forests, owner)
    parts = tuple(tuple(c) for c in G.components(sorted(L)))
    where = {v: i for i, c in enumerate(parts) for v in c}
    crossing = sum(1 for u, v in G.edges if where[u] != where[v])
    cert = PartitionCertificate(parts, crossing, m)
    if not cert.verify(G):  # pragma: no cover - would mean a bug in the augmentation
        raise RuntimeError("tree packing produced an invalid certificate")
    return cert


def is_tree_connected(G: Multigraph, m: int) -> bool:
    return bool(tree_pack(G, m))


def tree_connectivity(G: Multigraph) -> int:
    """Largest m such that G has m edge-disjoint spanning trees."""
    if G.n < 2:
        raise InputError("tree connectivity needs at least two vertices")
    lo, hi = 0, (G.m - G.loop_count) // (G.n - 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if tree_pack(G, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


# --------------------------------------------------------------------------
# partition-connected decomposition


@dataclass(frozen=True)
class PartitionDecomposition:
    packing: TreePacking
    remainder: Factor
    orientation: Orientation  # on remainder.as_graph()[0]
    remainder_ids: tuple[int, ...]

    def out_degrees(self) -> tuple[int, ...]:
        return self.orientation.out_degrees()


def partition_connected_decompose(G: Multigraph, m: int, l0: Sequence[int]) -> PartitionDecomposition:
    """Split G into ``m`` spanning trees plus a remainder that can be oriented
    with out-degree at least ``l0(v)`` everywhere.

    Solved exactly as one matroid partition: ``m`` forest matroids plus the
    matroid of edge sets that fit into ``l0(v)`` tail slots per vertex.  Raises
    :class:`Infeasible` when the union rank falls short.
    """
    from .orientation import orient_interval

    if len(l0) != G.n:
        raise InputError("l0 needs one value per vertex")
    if any(x < 0 for x in l0):
        raise InputError("l0 must be nonnegative")
    ids = _strip_loops(G)
    need = m * max(G.n - 1, 0) + sum(l0)
    if len(ids) < need:
        raise Infeasible(f"{len(ids)} edges cannot hold {m} spanning trees plus {sum(l0)} oriented edges")
    forests = [matroid.ForestMatroid(G) for _ in range(m)] if G.n > 1 else []
    slots = matroid.SlotMatroid(G, l0)
    owner, _ = matroid.partition(ids, [*forests, slots])
    if not all(F.full() for F in forests) or not slots.full():
        raise Infeasible("no decomposition: matroid union rank is below m(n-1) + sum(l0)")
    trees = tuple(frozenset(F.edges()) for F in forests)
    tree_ids = frozenset().union(*trees) if trees else frozenset()
    rem = Factor(G, [e for e in ids if e not in tree_ids])
    H, rem_ids = rem.as_graph()
    orient = orient_interval(H, list(l0), list(H.degrees()))
    packing = TreePacking(trees, frozenset(rem.edge_ids) | (frozenset(range(G.m)) - frozenset(ids)))
    return PartitionDecomposition(packing, rem, orient, tuple(rem_ids))


def is_partition_connected(G: Multigraph, m: int, l0: Sequence[int]) -> bool:
    try:
        partition_connected_decompose(G, m, l0)
    except Infeasible:
        return False
    return True


# --------------------------------------------------------------------------
# bipartite index / max cut


@dataclass(frozen=True)
class BipartiteIndex:
    value: int
    bipartition: Bipartition
    exact: bool


def _weight_matrix(G: Multigraph) -> np.ndarray:
    W = np.zeros((G.n, G.n))
    for u, v in G.edges:
        if u != v:
            W[u, v] += 1
            W[v, u] += 1
    return W


def max_cut_exact(G: Multigraph) -> tuple[int, Bipartition]:
    """Maximum cut by chunked enumeration of all 2^(n-1) sides.

    Vertex 0 is always in X; among optimal cuts the one whose side vector
    (vertex 1 first, X before Y) is lexicographically first wins.
    """
    n = G.n
    if n > EXACT_CUT_MAX_N:
        raise LimitExceeded(f"exact max cut capped at n <= {EXACT_CUT_MAX_N}")
    if n <= 1:
        return 0, Bipartition.from_side(n, range(n))
    W = _weight_matrix(G)
    deg = W.sum(axis=1)
    weights = 1 << np.arange(n - 2, -1, -1, dtype=np.int64)  # vertex 1 most significant
    total = 1 << (n - 1)
    chunk = 1 << 16
    best_val, best_key = -1, None
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        S = _side_bits(masks, n).astype(float)
        cut = S @ deg - ((S @ W) * S).sum(axis=1)
        top = int(round(cut.max()))
        if top < best_val:
            continue
        hit = S[np.abs(cut - top) < 0.5][:, 1:].astype(np.int64)
        key = int((hit @ weights).min())
        if top > best_val or key < best_key:
            best_val, best_key = top, key
    y = [v for v in range(1, n) if (best_key >> (n - 1 - v)) & 1]
    return best_val, Bipartition.from_side(n, set(range(n)) - set(y))


def cut_size(G: Multigraph, B: Bipartition) -> int:
    return sum(1 for u, v in G.edges if (u in B.X) != (v in B.X))


def max_cut_local(G: Multigraph) -> tuple[int, Bipartition]:
    """Single-vertex-flip local optimum: every vertex ends with at least half
    of its non-loop edges crossing."""
    side = [0] * G.n
    # greedy start in vertex order
    for v in range(G.n):
        same = [0, 0]
        for e in G.incident(v):
            w = G.other_end(e, v)
            if w < v:
                same[side[w]] += 1
        side[v] = 0 if same[1] >= same[0] else 1
    improved = True
    while improved:
        improved = False
        for v in range(G.n):
            across = same = 0
            for e in G.incident(v):
                w = G.other_end(e, v)
                if w == v:
                    continue
                if side[w] == side[v]:
                    same += 1
                else:
                    across += 1
            if same > across:
                side[v] ^= 1
                improved = True
    if side and side[0] == 1:
        side = [1 - s for s in side]
    B = Bipartition.from_colors(side)
    return cut_size(G, B), B


def bipartite_index(G: Multigraph, mode: str = "exact") -> BipartiteIndex:
    """bi(G): fewest edge deletions leaving a bipartite graph (loops always go).

    ``mode="lower-bound"`` runs local search; the value is then an upper
    estimate of bi(G) and flagged inexact.
    """
    if mode == "exact":
        cut, B = max_cut_exact(G)
        exact = True
    elif mode in ("lower-bound", "bound", "local"):
        cut, B = max_cut_local(G)
        exact = False
    else:
        raise InputError(f"unknown mode {mode!r}")
    return BipartiteIndex(G.m - cut, B, exact)
