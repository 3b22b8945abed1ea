"""Bipartite factors with high connectivity and the decompositions built from
them: odd cycles, Eulerian-plus-bipartite splits, odd Eulerian factors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .connectivity import (
    PartitionCertificate,
    TreePacking,
    bipartite_index,
    max_cut_exact,
    max_cut_local,
    tree_pack,
)
from .errors import HypothesisError, Infeasible, InputError, LimitExceeded
from .graph import Bipartition, Factor, Multigraph

ODD_CYCLE_SEARCH_MAX_M = 40


@dataclass(frozen=True)
class BipartiteFactor:
    bipartition: Bipartition
    factor: Factor
    exact: bool


def max_bipartite_factor(G: Multigraph, mode: str = "exact") -> BipartiteFactor:
    """The bipartite factor ``G[X, Y]`` of a maximum cut (exact) or of a
    single-flip local optimum (``mode="local-search"``).

    Only the exact mode guarantees ``2 d_H(A) >= d_G(A)`` for every vertex set.
    """
    if mode == "exact":
        _, B = max_cut_exact(G)
        exact = True
    elif mode in ("local-search", "local"):
        _, B = max_cut_local(G)
        exact = False
    else:
        raise InputError(f"unknown mode {mode!r}")
    return BipartiteFactor(B, Factor(G, B.cross_edge_ids(G)), exact)


def _pack_on(G: Multigraph, ids: Sequence[int], m: int) -> TreePacking | PartitionCertificate:
    """Tree packing of the spanning subgraph on ``ids`` with ids mapped back."""
    ids = sorted(ids)
    sub = G.edge_subgraph(ids)
    res = tree_pack(sub, m)
    if not res:
        return res
    trees = tuple(frozenset(ids[e] for e in t) for t in res.trees)
    return TreePacking(trees, frozenset(ids[e] for e in res.leftover))


def tree_path(G: Multigraph, tree: frozenset[int], s: int, t: int) -> list[int]:
    """Edge ids on the unique ``s``-``t`` path of a spanning tree."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e in tree:
        u, v = G.edges[e]
        adj[u].append((e, v))
        adj[v].append((e, u))
    prev = {s: None}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == t:
            break
        for e, y in adj[x]:
            if y not in prev:
                prev[y] = (x, e)
                q.append(y)
    path = []
    x = t
    while prev[x] is not None:
        x, e = prev[x]
        path.append(e)
    return path


def _odd_cycles_by_trees(G: Multigraph, k: int) -> list[list[int]] | None:
    bf = max_bipartite_factor(G)
    intra = bf.bipartition.intra_edges(G)
    intra = [e for e in intra if G.edges[e][0] != G.edges[e][1]]
    if len(intra) < k:
        return None
    packing = _pack_on(G, bf.factor.edge_ids, k)
    if not packing:
        return None
    cycles = []
    for T, e in zip(packing.trees, intra):
        u, v = G.edges[e]
        cycles.append(tree_path(G, T, u, v) + [e])
    return cycles


def _simple_odd_cycles(G: Multigraph) -> list[frozenset[int]]:
    """All odd cycles (as edge sets) by DFS from each minimum vertex; loops
    count as odd cycles of length one."""
    out: set[frozenset[int]] = set()
    for e, (u, v) in enumerate(G.edges):
        if u == v:
            out.add(frozenset([e]))
    for s in range(G.n):

        def dfs(x: int, used_v: set[int], used_e: list[int]) -> None:
            for e in G.incident(x):
                if e in used_e:
                    continue
                y = G.other_end(e, x)
                if y == x:
                    continue
                if y == s and len(used_e) >= 1:
                    if (len(used_e) + 1) % 2 == 1 and len(used_e) + 1 >= 3:
                        out.add(frozenset(used_e + [e]))
                    continue
                if y > s and y not in used_v:
                    used_v.add(y)
                    used_e.append(e)
                    dfs(y, used_v, used_e)
                    used_e.pop()
                    used_v.discard(y)

        dfs(s, {s}, [])
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def _disjoint_pick(cycles: list[frozenset[int]], k: int) -> list[frozenset[int]] | None:
    chosen: list[frozenset[int]] = []

    def rec(i: int, used: frozenset[int]) -> bool:
        if len(chosen) == k:
            return True
        for j in range(i, len(cycles)):
            if not (cycles[j] & used):
                chosen.append(cycles[j])
                if rec(j + 1, used | cycles[j]):
                    return True
                chosen.pop()
        return False

    return list(chosen) if rec(0, frozenset()) else None


def _order_cycle(G: Multigraph, edges: frozenset[int]) -> list[int]:
    ids = sorted(edges)
    if len(ids) == 1:
        return ids
    order = [ids[0]]
    rest = set(ids[1:])
    x = G.edges[ids[0]][1]
    while rest:
        e = next(e for e in sorted(rest) if x in G.edges[e])
        rest.discard(e)
        order.append(e)
        x = G.other_end(e, x)
    return order


def edge_disjoint_odd_cycles(G: Multigraph, k: int) -> list[list[int]]:
    """``k`` pairwise edge-disjoint odd cycles, each as an edge-id sequence.

    First tries the spanning-tree route (k trees of a maximum bipartite
    factor closed by k intra edges); on small graphs where that route lacks
    connectivity a direct search over odd cycles takes over.
    """
    if k <= 0:
        return []
    bi = bipartite_index(G).value
    if bi < k:
        raise Infeasible(f"bi(G) = {bi} < {k}, so there are fewer than {k} edge-disjoint odd cycles")
    cycles = _odd_cycles_by_trees(G, k)
    if cycles is None:
        if G.m > ODD_CYCLE_SEARCH_MAX_M:
            raise LimitExceeded("tree route failed and the graph is too large for direct search")
        picked = _disjoint_pick(_simple_odd_cycles(G), k)
        if picked is None:
            raise Infeasible(f"no {k} edge-disjoint odd cycles")
        cycles = [_order_cycle(G, c) for c in picked]
    used: set[int] = set()
    for c in cycles:
        if len(c) % 2 == 0 or used & set(c):  # pragma: no cover
            raise RuntimeError("odd cycle extraction produced an invalid cycle family")
        used |= set(c)
    return cycles


def bounded_degree_odd_subgraph(G: Multigraph, k: int, check: bool = True) -> Factor:
    """Subgraph of maximum degree at most ``2k`` with ``bi >= k``."""
    if check:
        if not tree_pack(G, 2 * k):
            raise HypothesisError(f"graph is not {2 * k}-tree-connected", clause="tree-connectivity")
        if bipartite_index(G).value < k:
            raise HypothesisError(f"bi(G) < {k}", clause="bipartite-index")
    cycles = edge_disjoint_odd_cycles(G, k)
    H = Factor(G, [e for c in cycles for e in c])
    if max(H.degrees(), default=0) > 2 * k:  # pragma: no cover
        raise RuntimeError("odd-cycle union exceeds degree 2k")
    return H


# --------------------------------------------------------------------------
# parity forests and decompositions


def parity_forest(G: Multigraph, tree: Sequence[int], demand: Sequence[int]) -> frozenset[int]:
    """The unique sub-forest ``F`` of a spanning forest with
    ``d_F(v) = demand(v) (mod 2)``; leaf-to-root sweep per component."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e in tree:
        u, v = G.edges[e]
        adj[u].append((e, v))
        adj[v].append((e, u))
    need = [d % 2 for d in demand]
    seen = [False] * G.n
    chosen = set()
    for r in range(G.n):
        if seen[r]:
            continue
        order, parent = [], {r: None}
        seen[r] = True
        q = deque([r])
        while q:
            x = q.popleft()
            order.append(x)
            for e, y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = (x, e)
                    q.append(y)
        for x in reversed(order):
            if parent[x] is None:
                if need[x]:
                    raise InputError("parity demand is odd on a tree component")
                continue
            if need[x]:
                p, e = parent[x]
                chosen.add(e)
                need[x] = 0
                need[p] ^= 1
    return frozenset(chosen)


@dataclass(frozen=True)
class EulerianBipartiteSplit:
    G1: Factor
    G2: Factor
    bipartition: Bipartition


def eulerian_plus_bipartite_decompose(
    G: Multigraph, m: int, budget: int, check: bool = True
) -> EulerianBipartiteSplit:
    """Split ``E(G)`` into an Eulerian ``G1`` and ``G2`` with ``G2[X, Y]``
    m-tree-connected and exactly ``min(budget, bi(G))`` edges of ``G2`` inside
    the sides."""
    if G.has_loops:
        raise InputError("decomposition expects a loopless graph")
    bf = max_bipartite_factor(G)
    B = bf.bipartition
    packing = _pack_on(G, bf.factor.edge_ids, m + 2)
    if not packing:
        raise HypothesisError(
            f"the maximum bipartite factor is not {m + 2}-tree-connected", clause="tree-connectivity"
        )
    if check and not tree_pack(G, 2 * m + 4):
        raise HypothesisError(f"graph is not {2 * m + 4}-tree-connected", clause="tree-connectivity")
    T0, T = sorted(packing.trees[0]), sorted(packing.trees[1])
    intra = B.intra_edges(G)  # exactly bi(G) edges for a maximum cut
    size = min(budget, len(intra))
    M0 = intra[size:]
    demand = [0] * G.n
    for e in T0 + M0:
        u, v = G.edges[e]
        demand[u] += 1
        demand[v] += 1
    F = parity_forest(G, T, demand)
    G1 = Factor(G, set(T0) | set(M0) | F)
    G2 = G1.complement()
    if any(d % 2 for d in G1.degrees()):  # pragma: no cover
        raise RuntimeError("G1 is not Eulerian")
    return EulerianBipartiteSplit(G1, G2, B)


def eulerian_odd_size_factors(G: Multigraph, k: int, check: bool = True) -> list[Factor]:
    """``k`` edge-disjoint spanning connected Eulerian factors of odd size."""
    if G.has_loops:
        raise InputError("expects a loopless graph")
    bf = max_bipartite_factor(G)
    intra = bf.bipartition.intra_edges(G)
    if len(intra) < k:
        raise HypothesisError(f"bi(G) = {len(intra)} < {k}", clause="bipartite-index")
    if check and not tree_pack(G, 4 * k):
        raise HypothesisError(f"graph is not {4 * k}-tree-connected", clause="tree-connectivity")
    packing = _pack_on(G, bf.factor.edge_ids, 2 * k)
    if not packing:
        raise HypothesisError(f"bipartite factor is not {2 * k}-tree-connected", clause="tree-connectivity")
    out = []
    for i in range(k):
        Ti, Ti2 = packing.trees[i], packing.trees[k + i]
        Hi = set(Ti2) | {intra[i]}
        demand = [0] * G.n
        for e in Hi:
            u, v = G.edges[e]
            demand[u] += 1
            demand[v] += 1
        Fi = parity_forest(G, sorted(Ti), demand)
        Gi = Factor(G, Hi | Fi)
        if any(d % 2 for d in Gi.degrees()) or len(Gi) % 2 == 0:  # pragma: no cover
            raise RuntimeError("odd Eulerian factor check failed")
        out.append(Gi)
    return out
