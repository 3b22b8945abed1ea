"""Integral augmenting-path max-flow on small undirected multigraphs."""

from __future__ import annotations

from collections import deque

from .graph import Multigraph


def capacity_matrix(G: Multigraph) -> list[list[int]]:
    """Symmetric multiplicity matrix; loops are dropped."""
    cap = [[0] * G.n for _ in range(G.n)]
    for u, v in G.edges:
        if u != v:
            cap[u][v] += 1
            cap[v][u] += 1
    return cap


def max_flow(cap: list[list[int]], s: int, t: int, limit: int | None = None) -> tuple[int, set[int]]:
    """Edmonds-Karp on an adjacency-matrix network.

    Returns the flow value and the source side of a minimum cut. ``limit``
    stops early once the flow reaches it (the cut side is then not minimal).
    """
    n = len(cap)
    res = [row[:] for row in cap]
    nbrs = [[v for v in range(n) if cap[u][v] or cap[v][u]] for u in range(n)]
    flow = 0
    while limit is None or flow < limit:
        parent = [-1] * n
        parent[s] = s
        q = deque([s])
        while q and parent[t] == -1:
            u = q.popleft()
            for v in nbrs[u]:
                if parent[v] == -1 and res[u][v] > 0:
                    parent[v] = u
                    q.append(v)
        if parent[t] == -1:
            return flow, {v for v in range(n) if parent[v] != -1}
        b = float("inf")
        v = t
        while v != s:
            u = parent[v]
            b = min(b, res[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            res[u][v] -= b
            res[v][u] += b
            v = u
        flow += int(b)
    return flow, {s}
