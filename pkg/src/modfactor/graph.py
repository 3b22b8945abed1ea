"""Multigraphs with loops and parallel edges, plus the small value types
(bipartitions, residue maps, factors, orientations) every other module
passes around.

Edge ids are positions in ``Multigraph.edges`` and never change; a factor is
a set of edge ids of its host, so factors built by different routines can be
unioned directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError


def residue_normalize(n: int, k: int) -> int:
    """Representative of ``n`` modulo ``k`` in ``{-1, 0, ..., k-2}``."""
    if k < 1:
        raise InputError(f"modulus must be positive, got {k}")
    r = n % k
    return -1 if r == k - 1 else r


def _vertex_set(vs: Iterable[int]) -> frozenset[int]:
    return vs if isinstance(vs, frozenset) else frozenset(vs)


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        es = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise InputError("negative vertex count")
        for u, v in es:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", es)

    # construction helpers -------------------------------------------------

    @classmethod
    def complete(cls, n: int, mult: int = 1) -> Multigraph:
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)] * mult)

    @classmethod
    def cycle(cls, n: int, mult: int = 1) -> Multigraph:
        return cls(n, [(i, (i + 1) % n) for i in range(n)] * mult)

    @classmethod
    def complete_bipartite(cls, a: int, b: int, mult: int = 1) -> Multigraph:
        return cls(a + b, [(u, a + v) for u in range(a) for v in range(b)] * mult)

    def multiplied(self, t: int) -> Multigraph:
        return Multigraph(self.n, list(self.edges) * t)

    # basic vocabulary ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def _degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._degrees[v]

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids at ``v``; a loop is listed once."""
        return self._incidence[v]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    @property
    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def min_degree(self) -> int:
        return min(self._degrees) if self.n else 0

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"unknown vertex {v}")

    def _check_set(self, A: Iterable[int]) -> frozenset[int]:
        A = _vertex_set(A)
        for v in A:
            self._check_vertex(v)
        return A

    def cut_degree(self, A: Iterable[int]) -> int:
        """Number of edges with exactly one end in ``A`` (loops never count)."""
        A = self._check_set(A)
        if not A or len(A) == self.n:
            raise InputError("cut_degree needs a nonempty proper vertex subset")
        return sum(1 for u, v in self.edges if (u in A) != (v in A))

    def internal_edges(self, A: Iterable[int]) -> int:
        A = self._check_set(A)
        return sum(1 for u, v in self.edges if u in A and v in A)

    def cross_edges(self, A: Iterable[int], B: Iterable[int]) -> int:
        A, B = self._check_set(A), self._check_set(B)
        if A & B:
            raise InputError("cross_edges needs disjoint vertex sets")
        return sum(1 for u, v in self.edges if (u in A and v in B) or (u in B and v in A))

    def induced(self, A: Iterable[int]) -> Multigraph:
        """G[A], with the vertices of ``A`` relabelled 0.. in sorted order."""
        A = self._check_set(A)
        index = {v: i for i, v in enumerate(sorted(A))}
        return Multigraph(len(A), [(index[u], index[v]) for u, v in self.edges if u in A and v in A])

    def bipartite_between(self, A: Iterable[int], B: Iterable[int]) -> Multigraph:
        """G[A, B] as a spanning multigraph on the same vertex set."""
        A, B = self._check_set(A), self._check_set(B)
        if A & B:
            raise InputError("bipartite_between needs disjoint vertex sets")
        return Multigraph(
            self.n, [(u, v) for u, v in self.edges if (u in A and v in B) or (u in B and v in A)]
        )

    def edge_subgraph(self, edge_ids: Iterable[int]) -> Multigraph:
        """Spanning multigraph on the given edges, renumbered in id order."""
        return Multigraph(self.n, [self.edges[e] for e in sorted(edge_ids)])

    def components(self, edge_ids: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (isolated vertices are their own component)."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ids = range(self.m) if edge_ids is None else edge_ids
        for e in ids:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def two_coloring(self) -> list[int] | None:
        """0/1 side per vertex if bipartite (vertex 0 of each component on side 0)."""
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] != -1:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for e in self._incidence[u]:
                    w = self.other_end(e, u)
                    if w == u:
                        return None
                    if side[w] == -1:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return None
        return side

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def is_eulerian(self) -> bool:
        """All degrees even and all edges in one component."""
        if any(d % 2 for d in self._degrees):
            return False
        touched = [v for v in range(self.n) if self._degrees[v]]
        if not touched:
            return True
        comps = self.components()
        return sum(1 for c in comps if any(self._degrees[v] for v in c)) == 1

    def relabel_edges(self, order: Sequence[int]) -> Multigraph:
        return Multigraph(self.n, [self.edges[e] for e in order])


@dataclass(frozen=True)
class Bipartition:
    """Ordered pair (X, Y) partitioning the vertex set.

    One side may be empty; compatibility quantifies over that case too.
    """

    X: frozenset[int]
    Y: frozenset[int]

    def __init__(self, X: Iterable[int], Y: Iterable[int]):
        X, Y = _vertex_set(X), _vertex_set(Y)
        if X & Y:
            raise InputError("bipartition sides overlap")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @classmethod
    def from_side(cls, n: int, X: Iterable[int]) -> Bipartition:
        X = _vertex_set(X)
        return cls(X, frozenset(range(n)) - X)

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> Bipartition:
        return cls([v for v, c in enumerate(colors) if c == 0], [v for v, c in enumerate(colors) if c])

    def check(self, G: Multigraph) -> None:
        if self.X | self.Y != frozenset(range(G.n)):
            raise InputError("bipartition does not cover the vertex set")

    def swapped(self) -> Bipartition:
        return Bipartition(self.Y, self.X)

    def side(self, v: int) -> int:
        return 0 if v in self.X else 1

    def intra_edges(self, G: Multigraph) -> list[int]:
        return [i for i, (u, v) in enumerate(G.edges) if (u in self.X) == (v in self.X)]

    def cross_edge_ids(self, G: Multigraph) -> list[int]:
        return [i for i, (u, v) in enumerate(G.edges) if (u in self.X) != (v in self.X)]


@dataclass(frozen=True)
class ResidueMap:
    modulus: int
    values: tuple[int, ...]

    def __init__(self, modulus: int, values: Iterable[int]):
        if modulus < 1:
            raise InputError(f"modulus must be positive, got {modulus}")
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "values", tuple(int(x) % modulus for x in values))

    @classmethod
    def constant(cls, n: int, k: int, value: int = 0) -> ResidueMap:
        return cls(k, [value] * n)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def total(self, vs: Iterable[int] | None = None) -> int:
        if vs is None:
            return sum(self.values)
        return sum(self.values[v] for v in vs)

    def shifted(self, delta: Sequence[int]) -> ResidueMap:
        """Pointwise ``f(v) + delta(v)`` in the same modulus."""
        return ResidueMap(self.modulus, [a + b for a, b in zip(self.values, delta)])

    def check(self, G: Multigraph) -> None:
        if len(self.values) != G.n:
            raise InputError(f"residue map has {len(self.values)} values for {G.n} vertices")


@dataclass(frozen=True)
class Factor:
    host: Multigraph
    edge_ids: frozenset[int]

    def __init__(self, host: Multigraph, edge_ids: Iterable[int] = ()):
        ids = _vertex_set(edge_ids)
        for e in ids:
            if not 0 <= e < host.m:
                raise InputError(f"edge id {e} not in host")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "edge_ids", ids)

    @classmethod
    def full(cls, host: Multigraph) -> Factor:
        return cls(host, range(host.m))

    @cached_property
    def _degrees(self) -> tuple[int, ...]:
        deg = [0] * self.host.n
        for e in self.edge_ids:
            u, v = self.host.edges[e]
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, e: int) -> bool:
        return e in self.edge_ids

    def sorted_ids(self) -> list[int]:
        return sorted(self.edge_ids)

    def _same_host(self, other: Factor) -> None:
        if other.host is not self.host and other.host != self.host:
            raise InputError("factors live on different hosts")

    def complement(self) -> Factor:
        return Factor(self.host, frozenset(range(self.host.m)) - self.edge_ids)

    def union(self, other: Factor) -> Factor:
        self._same_host(other)
        if self.edge_ids & other.edge_ids:
            raise InputError("factor_union needs disjoint edge sets")
        return Factor(self.host, self.edge_ids | other.edge_ids)

    def minus(self, other: Factor) -> Factor:
        self._same_host(other)
        return Factor(self.host, self.edge_ids - other.edge_ids)

    def as_graph(self) -> tuple[Multigraph, list[int]]:
        """The factor as a standalone spanning multigraph plus the map from its
        edge ids back to host edge ids."""
        ids = self.sorted_ids()
        return Multigraph(self.host.n, [self.host.edges[e] for e in ids]), ids


def lift_edges(sub_ids: Iterable[int], id_map: Sequence[int], host: Multigraph) -> Factor:
    """Map edge ids of a derived graph back to its host via ``id_map``."""
    return Factor(host, [id_map[e] for e in sub_ids])


def factor_complement(F: Factor) -> Factor:
    return F.complement()


def factor_union(F1: Factor, F2: Factor) -> Factor:
    return F1.union(F2)


@dataclass(frozen=True)
class Orientation:
    """Direction per edge of a loopless host: ``forward[e]`` means u -> v for
    ``host.edges[e] == (u, v)``."""

    host: Multigraph
    forward: tuple[bool, ...] = field(default=())

    def __init__(self, host: Multigraph, forward: Iterable[bool]):
        fw = tuple(bool(x) for x in forward)
        if host.has_loops:
            raise InputError("orientations are only defined on loopless hosts")
        if len(fw) != host.m:
            raise InputError("one direction flag per edge required")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "forward", fw)

    def tail(self, e: int) -> int:
        u, v = self.host.edges[e]
        return u if self.forward[e] else v

    def head(self, e: int) -> int:
        u, v = self.host.edges[e]
        return v if self.forward[e] else u

    @cached_property
    def _out(self) -> tuple[int, ...]:
        out = [0] * self.host.n
        for e in range(self.host.m):
            out[self.tail(e)] += 1
        return tuple(out)

    def out_degrees(self) -> tuple[int, ...]:
        return self._out

    def out_degree(self, v: int) -> int:
        return self._out[v]

    def in_degree(self, v: int) -> int:
        return self.host.degree(v) - self._out[v]

    def edges_from(self, X: Iterable[int]) -> list[int]:
        """Edge ids whose tail lies in ``X`` and head outside it."""
        X = _vertex_set(X)
        return [e for e in range(self.host.m) if self.tail(e) in X and self.head(e) not in X]
