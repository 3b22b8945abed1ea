"""Matroid partitioning by shortest augmenting paths.

Each matroid keeps its current independent set and answers one question:
given an element ``y`` outside it, is ``I + y`` independent, and if not,
which ``z`` in ``I`` make ``I + y - z`` independent.  Two kinds are enough
here: forests of a multigraph and "edge sets orientable into bounded
per-vertex slots" (a transversal matroid).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Protocol, Sequence

from .graph import Multigraph


class Matroid(Protocol):
    def exchanges(self, y: int) -> list[int] | None:
        """``None`` if ``y`` can be added freely, else the exchangeable elements."""

    def add(self, y: int) -> None: ...

    def remove(self, z: int) -> None: ...

    def full(self) -> bool: ...


class ForestMatroid:
    """Graphic matroid of a multigraph; loops are never independent."""

    def __init__(self, G: Multigraph):
        self.G = G
        self.adj: list[dict[int, int]] = [dict() for _ in range(G.n)]  # vertex -> {edge: neighbour}
        self.size = 0

    def path(self, s: int, t: int) -> list[int] | None:
        if s == t:
            return []
        prev: dict[int, tuple[int, int]] = {s: (-1, -1)}
        q = deque([s])
        while q:
            u = q.popleft()
            for e, w in self.adj[u].items():
                if w not in prev:
                    prev[w] = (u, e)
                    if w == t:
                        out = []
                        x = t
                        while x != s:
                            x, e2 = prev[x]
                            out.append(e2)
                        return out
                    q.append(w)
        return None

    def exchanges(self, y: int) -> list[int] | None:
        u, v = self.G.edges[y]
        if u == v:
            return []
        return self.path(u, v)

    def add(self, y: int) -> None:
        u, v = self.G.edges[y]
        self.adj[u][y] = v
        self.adj[v][y] = u
        self.size += 1

    def remove(self, z: int) -> None:
        u, v = self.G.edges[z]
        del self.adj[u][z]
        del self.adj[v][z]
        self.size -= 1

    def full(self) -> bool:
        return self.size >= self.G.n - 1

    def edges(self) -> set[int]:
        return {e for row in self.adj for e in row}


class SlotMatroid:
    """Edge sets that can be oriented so vertex ``v`` is the tail of at most
    ``cap[v]`` of them."""

    def __init__(self, G: Multigraph, cap: Sequence[int]):
        self.G = G
        self.cap = list(cap)
        self.at: list[set[int]] = [set() for _ in range(G.n)]
        self.owner: dict[int, int] = {}
        self.total = sum(max(c, 0) for c in cap)

    def _search(self, y: int):
        u, v = self.G.edges[y]
        starts = [u] if u == v else [u, v]
        prev: dict[int, tuple[int, int] | None] = {w: None for w in starts}
        q = deque(starts)
        reached: list[int] = []
        while q:
            w = q.popleft()
            if len(self.at[w]) < self.cap[w]:
                return w, prev, reached
            for e in sorted(self.at[w]):
                reached.append(e)
                x = self.G.other_end(e, w)
                if x not in prev:
                    prev[x] = (w, e)
                    q.append(x)
        return None, prev, reached

    def exchanges(self, y: int) -> list[int] | None:
        free, _, reached = self._search(y)
        return None if free is not None else reached

    def add(self, y: int) -> None:
        free, prev, _ = self._search(y)
        if free is None:
            raise RuntimeError("add() on a dependent element")
        w = free
        while prev[w] is not None:
            x, e = prev[w]
            self.at[x].discard(e)
            self.at[w].add(e)
            self.owner[e] = w
            w = x
        self.at[w].add(y)
        self.owner[y] = w

    def remove(self, z: int) -> None:
        w = self.owner.pop(z)
        self.at[w].discard(z)

    def full(self) -> bool:
        return len(self.owner) >= self.total


def partition(elements: Iterable[int], matroids: Sequence[Matroid]) -> tuple[list[int], list[int]]:
    """Greedily grow a maximum set partitionable into independent sets of
    ``matroids``.

    Returns ``(owner, leftover)`` where ``owner[e]`` is the matroid index of
    element ``e`` (or -1).  Maximality follows from matroid union being a
    matroid: an element that fails once stays spanned.
    """
    elements = list(elements)
    size = max(elements, default=-1) + 1
    owner = [-1] * size
    leftover: list[int] = []
    for x in elements:
        if all(M.full() for M in matroids):
            leftover.append(x)
            continue
        if not _augment(x, matroids, owner):
            leftover.append(x)
    return owner, leftover


def _augment(x: int, matroids: Sequence[Matroid], owner: list[int]) -> bool:
    label: dict[int, int | None] = {x: None}
    q = deque([x])
    while q:
        y = q.popleft()
        for j, M in enumerate(matroids):
            if owner[y] == j:
                continue
            ex = M.exchanges(y)
            if ex is None:
                _apply(y, j, matroids, owner, label)
                return True
            for z in ex:
                if z not in label:
                    label[z] = y
                    q.append(z)
    return False


def _apply(w: int, j: int, matroids, owner, label) -> None:
    while True:
        prev = owner[w]
        if prev >= 0:
            matroids[prev].remove(w)
        matroids[j].add(w)
        owner[w] = j
        nxt = label[w]
        if nxt is None:
            return
        w, j = nxt, prev


def closure(seeds: Iterable[int], matroids: Sequence[Matroid], owner: list[int]) -> set[int]:
    """Elements reachable in the exchange graph from ``seeds``.

    Used after a maximal partition to read off a rank certificate; if an
    augmentation is discovered instead, the partition was not maximal and a
    RuntimeError is raised.
    """
    seen = set(seeds)
    q = deque(seen)
    while q:
        y = q.popleft()
        for j, M in enumerate(matroids):
            if owner[y] == j:
                continue
            ex = M.exchanges(y)
            if ex is None:
                raise RuntimeError("partition was not maximal")
            for z in ex:
                if z not in seen:
                    seen.add(z)
                    q.append(z)
    return seen
