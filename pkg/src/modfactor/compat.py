"""Compatibility of residue maps with a graph.

``f`` is compatible with respect to ``(X, Y)`` when one of the two sides can
absorb the imbalance ``sum_X f - sum_Y f`` with edges inside it: some
``x <= e(X)`` with ``sum_X f - 2x = sum_Y f (mod k)``, or the same with the
roles swapped.  Since ``2x mod k`` has period at most ``k`` only ``x < k``
needs checking.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Literal

from .connectivity import bipartite_index, edge_connectivity, is_edge_connected
from .errors import HypothesisError, InputError, LimitExceeded
from .graph import Bipartition, Multigraph, ResidueMap

COMPAT_MAX_N = int(os.environ.get("MODFACTOR_COMPAT_MAX_N", "16"))


@dataclass(frozen=True)
class CompatWitness:
    side: Literal["x", "y"]
    value: int


def _intra_counts(G: Multigraph, X: frozenset[int]) -> tuple[int, int]:
    ex = ey = 0
    for u, v in G.edges:
        a, b = u in X, v in X
        if a and b:
            ex += 1
        elif not a and not b:
            ey += 1
    return ex, ey


def _check(G: Multigraph, f: ResidueMap, sx: int, sy: int, ex: int, ey: int) -> CompatWitness | None:
    k = f.modulus
    for x in range(min(ex, k - 1) + 1):
        if (sx - 2 * x - sy) % k == 0:
            return CompatWitness("x", x)
    for y in range(min(ey, k - 1) + 1):
        if (sx - sy + 2 * y) % k == 0:
            return CompatWitness("y", y)
    return None


def compatible_wrt(G: Multigraph, f: ResidueMap, B: Bipartition) -> tuple[bool, CompatWitness | None]:
    f.check(G)
    B.check(G)
    ex, ey = _intra_counts(G, B.X)
    w = _check(G, f, f.total(B.X), f.total(B.Y), ex, ey)
    return w is not None, w


def bipartitions(n: int):
    """All unordered bipartitions as ``X`` sets containing vertex 0 (``X = V``
    included)."""
    if n == 0:
        yield frozenset()
        return
    for mask in range(1 << (n - 1)):
        yield frozenset([0] + [v for v in range(1, n) if not (mask >> (v - 1)) & 1])


@dataclass(frozen=True)
class CompatReport:
    verdict: bool | None  # None = unknown
    reason: str
    bipartition: Bipartition | None = None


def compatible_all(G: Multigraph, f: ResidueMap, mode: str = "exact") -> CompatReport:
    """Exact enumeration over all bipartitions, or the sufficient conditions
    (which may answer ``None`` for unknown)."""
    f.check(G)
    if mode == "exact":
        if G.n > COMPAT_MAX_N:
            raise LimitExceeded(f"exact compatibility capped at n <= {COMPAT_MAX_N}")
        total = f.total()
        for X in bipartitions(G.n):
            ex, ey = _intra_counts(G, X)
            sx = f.total(X)
            if _check(G, f, sx, total - sx, ex, ey) is None:
                return CompatReport(False, "incompatible bipartition", Bipartition.from_side(G.n, X))
        return CompatReport(True, "all bipartitions pass")
    if mode != "sufficient":
        raise InputError(f"unknown mode {mode!r}")
    return _sufficient(G, f)


def _sufficient(G: Multigraph, f: ResidueMap) -> CompatReport:
    k = f.modulus
    if k == 1:
        return CompatReport(True, "every map is compatible modulo 1")
    if ((k - 1) * f.total()) % 2:
        return CompatReport(None, "(k-1) sum f is odd")
    try:
        bi = bipartite_index(G, "exact")
    except LimitExceeded:
        if all(x == 0 for x in f.values):
            return CompatReport(True, "f is zero, so x = 0 always works")
        return CompatReport(None, "graph too large for an exact bipartite index")
    if k % 2 == 0 and 2 * bi.value >= k - 2:
        return CompatReport(True, "k even and bi >= k/2 - 1")
    if k % 2 == 1 and bi.value >= k - 1:
        return CompatReport(True, "k odd and bi >= k - 1")
    if bi.value <= k - 1 and G.n >= 2 and is_edge_connected(G, 2 * k - 2):
        ok, _ = compatible_wrt(G, f, bi.bipartition)
        if ok:
            return CompatReport(True, "(2k-2)-edge-connected and compatible at a near-bipartition", bi.bipartition)
    if all(x == 0 for x in f.values):
        return CompatReport(True, "f is zero, so x = 0 always works")
    return CompatReport(None, "no sufficient condition applies")


def unique_bipartition(G: Multigraph, m: int) -> Bipartition:
    """The unique bipartition with ``e(X) + e(Y) < m - bi(G)`` on an
    m-edge-connected graph with ``m >= 2 bi(G) + 1``."""
    if G.n > COMPAT_MAX_N:
        raise LimitExceeded(f"bipartition enumeration capped at n <= {COMPAT_MAX_N}")
    bi = bipartite_index(G, "exact")
    if m < 2 * bi.value + 1:
        raise HypothesisError(f"m = {m} is below 2 bi(G) + 1 = {2 * bi.value + 1}", clause="m >= 2bi+1")
    if G.n >= 2 and edge_connectivity(G) < m:
        raise HypothesisError(f"graph is not {m}-edge-connected", clause="edge-connectivity")
    hits = []
    for X in bipartitions(G.n):
        ex, ey = _intra_counts(G, X)
        if ex + ey < m - bi.value:
            hits.append(X)
    if len(hits) != 1:  # pragma: no cover - contradicts the lemma
        raise RuntimeError(f"expected one qualifying bipartition, found {len(hits)}")
    return Bipartition.from_side(G.n, hits[0])
