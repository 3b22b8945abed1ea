"""Maximum cardinality matching in general graphs (Edmonds' blossom
algorithm, the O(V^3) BFS formulation with base relabelling)."""

from __future__ import annotations

from collections import deque
from typing import Sequence


def max_matching(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    """Return ``mate`` with ``mate[v]`` the partner of ``v`` or -1."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    mate = [-1] * n
    # greedy warm start, low-degree vertices first
    for v in sorted(range(n), key=lambda x: len(adj[x])):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break
    for root in range(n):
        if mate[root] == -1 and adj[root]:
            _augment_from(root, n, adj, mate)
    return mate


def _augment_from(root: int, n: int, adj, mate) -> bool:
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark(v, b, to, blossom)
                mark(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    x = to
                    while x != -1:
                        px = parent[x]
                        nxt = mate[px]
                        mate[x], mate[px] = px, x
                        x = nxt
                    return True
                used[mate[to]] = True
                q.append(mate[to])
    return False


def matching_size(mate: Sequence[int]) -> int:
    return sum(1 for v, w in enumerate(mate) if w > v)
