"""Orientations with prescribed or bounded out-degrees, and the modulo-k
orientation search built on top of them.

The core primitive is :func:`orient_interval`: orient a loopless multigraph
so every out-degree lands in ``[lo(v), hi(v)]``, or return a vertex set that
proves this impossible.  It works by reversing directed paths, so every
failure comes with a Hakimi-type certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import Infeasible, InputError, SolverGaveUp
from .graph import Multigraph, Orientation, ResidueMap

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class DegreeWindow:
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __init__(self, lower: Sequence[int], upper: Sequence[int]):
        lower, upper = tuple(int(x) for x in lower), tuple(int(x) for x in upper)
        if len(lower) != len(upper):
            raise InputError("window bounds differ in length")
        if any(a > b for a, b in zip(lower, upper)):
            raise InputError("window lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def full(cls, G: Multigraph) -> DegreeWindow:
        return cls([0] * G.n, G.degrees())

    @classmethod
    def around_half(cls, G: Multigraph, below: int, above: int) -> DegreeWindow:
        """``floor(d/2) - below <= d+ <= ceil(d/2) + above``."""
        d = G.degrees()
        return cls([x // 2 - below for x in d], [(x + 1) // 2 + above for x in d])

    def contains(self, v: int, x: int) -> bool:
        return self.lower[v] <= x <= self.upper[v]


@dataclass(frozen=True)
class PreOrientation:
    """Edges at ``anchor`` whose direction is fixed in advance.

    ``tails`` maps an edge id to the endpoint it leaves from.
    """

    anchor: int
    tails: Mapping[int, int]

    def check(self, G: Multigraph) -> None:
        for e, t in self.tails.items():
            if not 0 <= e < G.m:
                raise InputError(f"pre-oriented edge {e} not in graph")
            u, v = G.edges[e]
            if self.anchor not in (u, v):
                raise InputError(f"pre-oriented edge {e} does not touch the anchor {self.anchor}")
            if t not in (u, v):
                raise InputError(f"tail {t} is not an end of edge {e}")
            if u == v:
                raise InputError("loops cannot be oriented")

    def covers_anchor(self, G: Multigraph) -> bool:
        return set(G.incident(self.anchor)) <= set(self.tails)


# --------------------------------------------------------------------------
# interval orientation


class _Directed:
    """Mutable orientation of a subset of edges with out-edge lists."""

    def __init__(self, G: Multigraph, ids: Sequence[int]):
        self.G = G
        self.tail = {}
        self.out = [set() for _ in range(G.n)]
        self.inn = [set() for _ in range(G.n)]
        for e in ids:
            u, v = G.edges[e]
            self.tail[e] = u
            self.out[u].add(e)
            self.inn[v].add(e)

    def head(self, e: int) -> int:
        return self.G.other_end(e, self.tail[e])

    def flip(self, e: int) -> None:
        t, h = self.tail[e], self.head(e)
        self.out[t].discard(e)
        self.inn[h].discard(e)
        self.tail[e] = h
        self.out[h].add(e)
        self.inn[t].add(e)

    def outdeg(self, v: int) -> int:
        return len(self.out[v])


def _search(D: _Directed, start: int, forward: bool, goal) -> tuple[list[int] | None, set[int]]:
    """BFS from ``start`` along out-edges (or in-edges); returns the edge path
    to the first vertex satisfying ``goal`` and the set of reached vertices."""
    prev = {start: None}
    q = deque([start])
    while q:
        x = q.popleft()
        if x != start and goal(x):
            path = []
            while prev[x] is not None:
                x, e = prev[x]
                path.append(e)
            return path, set(prev)
        for e in sorted(D.out[x] if forward else D.inn[x]):
            y = D.head(e) if forward else D.tail[e]
            if y not in prev:
                prev[y] = (x, e)
                q.append(y)
    return None, set(prev)


def orient_interval(
    G: Multigraph,
    lo: Sequence[int],
    hi: Sequence[int],
    edge_ids: Sequence[int] | None = None,
) -> Orientation:
    """Orient ``G`` so that ``lo(v) <= d+(v) <= hi(v)`` for every vertex.

    Only the edges in ``edge_ids`` (default: all) are oriented; the returned
    orientation covers all of ``G`` with the other edges pointing u -> v.
    Raises :class:`Infeasible` whose certificate is a vertex set ``R`` with
    either ``e(R) > sum_R hi`` (kind "upper") or ``e(R) + d(R) < sum_R lo``
    (kind "lower").
    """
    if G.has_loops:
        raise InputError("orientations are only defined on loopless hosts")
    ids = list(range(G.m)) if edge_ids is None else list(edge_ids)
    D = _Directed(G, ids)
    for v in range(G.n):
        while D.outdeg(v) > hi[v]:
            path, R = _search(D, v, True, lambda x: D.outdeg(x) < hi[x])
            if path is None:
                raise Infeasible(
                    f"{sum(hi[x] for x in R)} allowed out-edges cannot cover the edges inside {sorted(R)}",
                    certificate=("upper", frozenset(R)),
                )
            for e in path:
                D.flip(e)
    for v in range(G.n):
        while D.outdeg(v) < lo[v]:
            path, R = _search(D, v, False, lambda x: D.outdeg(x) > lo[x])
            if path is None:
                raise Infeasible(
                    f"edges touching {sorted(R)} cannot give out-degree {sum(lo[x] for x in R)}",
                    certificate=("lower", frozenset(R)),
                )
            for e in path:
                D.flip(e)
    forward = [True] * G.m
    for e, t in D.tail.items():
        forward[e] = t == G.edges[e][0]
    return Orientation(G, forward)


def orient_with_out_degrees(G: Multigraph, t: Sequence[int]) -> Orientation | frozenset[int]:
    """Orientation with ``d+(v) = t(v)`` exactly, or a vertex set ``A`` with
    ``e(A) > sum_A t`` proving none exists."""
    if len(t) != G.n:
        raise InputError("one target per vertex required")
    if sum(t) != G.m or any(x < 0 for x in t):
        raise InputError("targets must be nonnegative and sum to |E|")
    try:
        return orient_interval(G, t, t)
    except Infeasible as exc:
        kind, R = exc.certificate
        if kind == "upper":
            return R
        # no edge enters R, so its complement holds too many edges
        return frozenset(range(G.n)) - R


# --------------------------------------------------------------------------
# modulo-k orientations


def _admissible(lo: int, hi: int, r: int, k: int) -> list[int]:
    first = lo + ((r - lo) % k)
    return list(range(first, hi + 1, k))


def check_p_orientation(
    D: Orientation,
    p: ResidueMap,
    window: DegreeWindow | None = None,
    pre: PreOrientation | None = None,
) -> list[str]:
    """Independent check; returns a list of violated clauses (empty = fine)."""
    bad = []
    k = p.modulus
    out = [0] * D.host.n
    for e, (u, v) in enumerate(D.host.edges):
        out[u if D.forward[e] else v] += 1
    for v in range(D.host.n):
        if (out[v] - p[v]) % k:
            bad.append(f"residue at {v}")
        if window is not None and not window.contains(v, out[v]):
            bad.append(f"window at {v}")
    if pre is not None:
        for e, t in pre.tails.items():
            u, w = D.host.edges[e]
            if (u if D.forward[e] else w) != t:
                bad.append(f"pre-orientation of edge {e}")
    return bad


class _Solver:
    def __init__(self, G, p, window, pre, pins, budget):
        self.G = G
        self.k = p.modulus
        fixed_tail = dict(pre.tails) if pre else {}
        self.fixed_tail = fixed_tail
        self.free = [e for e in range(G.m) if e not in fixed_tail]
        self.fixed_out = [0] * G.n
        for e, t in fixed_tail.items():
            self.fixed_out[t] += 1
        free_deg = [0] * G.n
        for e in self.free:
            u, v = G.edges[e]
            free_deg[u] += 1
            free_deg[v] += 1
        self.d = G.degrees()
        self.options: list[list[int]] = []
        for v in range(G.n):
            lo = max(window.lower[v], self.fixed_out[v])
            hi = min(window.upper[v], self.fixed_out[v] + free_deg[v])
            if v in pins:
                opts = [pins[v]] if lo <= pins[v] <= hi and (pins[v] - p[v]) % self.k == 0 else []
            else:
                opts = _admissible(lo, hi, p[v], self.k)
            half = self.d[v] / 2
            opts.sort(key=lambda x: (abs(x - half), x))
            self.options.append(opts)
        self.budget = budget
        self.nodes = 0

    def _orient(self, lo, hi) -> Orientation:
        flo = [a - b for a, b in zip(lo, self.fixed_out)]
        fhi = [a - b for a, b in zip(hi, self.fixed_out)]
        D = orient_interval(self.G, flo, fhi, self.free)
        fw = list(D.forward)
        for e, t in self.fixed_tail.items():
            fw[e] = t == self.G.edges[e][0]
        return Orientation(self.G, fw)

    def _feasible(self, lo, hi) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SolverGaveUp(f"orientation search exceeded {self.budget} nodes")
        m = len(self.free)
        flo = [a - b for a, b in zip(lo, self.fixed_out)]
        fhi = [a - b for a, b in zip(hi, self.fixed_out)]
        if sum(flo) > m or sum(fhi) < m:
            return False
        try:
            orient_interval(self.G, flo, fhi, self.free)
        except Infeasible:
            return False
        return True

    def heuristic(self, rounds: int = 50) -> Orientation | None:
        """Targets nearest d/2, then +-k repairs guided by violating sets."""
        n, k = self.G.n, self.k
        if any(not opts for opts in self.options):
            return None
        t = [opts[0] for opts in self.options]
        total = len(self.free) + sum(self.fixed_out)

        def step(v, s):
            return t[v] + s * k in self.options[v]

        for _ in range(rounds):
            diff = total - sum(t)
            if diff:
                s = 1 if diff > 0 else -1
                # prefer vertices whose move keeps them closest to d/2
                cands = [v for v in range(n) if step(v, s)]
                if not cands:
                    return None
                v = min(cands, key=lambda v: (abs(t[v] + s * k - self.d[v] / 2), v))
                t[v] += s * k
                continue
            flo = [a - b for a, b in zip(t, self.fixed_out)]
            try:
                D = orient_interval(self.G, flo, flo, self.free)
            except Infeasible as exc:
                kind, R = exc.certificate
                inside = R if kind == "upper" else frozenset(range(n)) - R
                # inside needs more out-degree, outside can give some up
                ups = [v for v in inside if step(v, 1)]
                downs = [v for v in range(n) if v not in inside and step(v, -1)]
                if not ups or not downs:
                    return None
                a = min(ups, key=lambda v: (abs(t[v] + k - self.d[v] / 2), v))
                b = min(downs, key=lambda v: (abs(t[v] - k - self.d[v] / 2), v))
                t[a] += k
                t[b] -= k
                continue
            fw = list(D.forward)
            for e, tl in self.fixed_tail.items():
                fw[e] = tl == self.G.edges[e][0]
            return Orientation(self.G, fw)
        return None

    def exact(self) -> Orientation:
        n = self.G.n
        lo = [opts[0] if opts else 0 for opts in self.options]
        hi = [opts[0] if opts else 0 for opts in self.options]
        if any(not opts for opts in self.options):
            raise Infeasible("some vertex has no admissible out-degree")
        for v, opts in enumerate(self.options):
            lo[v], hi[v] = min(opts), max(opts)
        if not self._feasible(lo, hi):
            raise Infeasible("no orientation even with relaxed residues", certificate=None)
        order = sorted(range(n), key=lambda v: (len(self.options[v]), v))
        result = self._dfs(order, 0, lo, hi)
        if result is None:
            raise Infeasible("exhaustive search found no p-orientation")
        return result

    def _dfs(self, order, i, lo, hi):
        if i == len(order):
            return self._orient(lo, hi)
        v = order[i]
        save = lo[v], hi[v]
        for x in self.options[v]:
            lo[v] = hi[v] = x
            if self._feasible(lo, hi):
                r = self._dfs(order, i + 1, lo, hi)
                if r is not None:
                    return r
        lo[v], hi[v] = save
        return None


def find_p_orientation(
    G: Multigraph,
    p: ResidueMap,
    window: DegreeWindow | None = None,
    pre: PreOrientation | None = None,
    pins: Mapping[int, int] | None = None,
    budget: int = DEFAULT_BUDGET,
    exact_only: bool = False,
) -> Orientation:
    """Orientation with ``d+(v) = p(v) (mod k)`` inside ``window``.

    ``pins`` fixes the exact out-degree of chosen vertices.  The search tries
    a repair heuristic first and then a complete depth-first search over
    per-vertex out-degree targets, pruned by interval feasibility.  Raises
    :class:`Infeasible` when the complete search is exhausted and
    :class:`SolverGaveUp` when the node budget runs out first.
    """
    p.check(G)
    if G.has_loops:
        raise InputError("orientations are only defined on loopless hosts")
    k = p.modulus
    if (G.m - p.total()) % k:
        raise InputError(f"|E| = {G.m} and sum p = {p.total()} differ modulo {k}")
    window = window or DegreeWindow.full(G)
    if len(window.lower) != G.n:
        raise InputError("window size does not match the graph")
    pins = dict(pins or {})
    if pre is not None:
        pre.check(G)
        if pre.covers_anchor(G):
            out = sum(1 for t in pre.tails.values() if t == pre.anchor)
            if (out - p[pre.anchor]) % k:
                raise InputError("pre-orientation out-degree at the anchor disagrees with p")
    solver = _Solver(G, p, window, pre, pins, budget)
    D = None if exact_only else solver.heuristic()
    if D is None:
        D = solver.exact()
    bad = check_p_orientation(D, p, window, pre)
    for v, x in pins.items():
        if D.out_degree(v) != x:
            bad.append(f"pin at {v}")
    if bad:  # pragma: no cover - guards against solver bugs
        raise RuntimeError("orientation failed its own check: " + ", ".join(bad))
    return D


# --------------------------------------------------------------------------
# Euler tours


def euler_circuits(G: Multigraph, edge_ids: Sequence[int] | None = None, start: int | None = None):
    """Closed trails covering the given edges, one per nontrivial component.

    Each circuit is a list of ``(edge, tail)`` pairs in traversal order.  The
    circuit of the component containing ``start`` begins there.  Raises
    :class:`InputError` if some vertex has odd degree in the edge set.
    """
    ids = list(range(G.m)) if edge_ids is None else sorted(edge_ids)
    adj: list[list[int]] = [[] for _ in range(G.n)]
    deg = [0] * G.n
    for e in ids:
        u, v = G.edges[e]
        adj[u].append(e)
        if u != v:
            adj[v].append(e)
        deg[u] += 1
        deg[v] += 1
    if any(d % 2 for d in deg):
        raise InputError("Euler tour needs every degree even")
    used = set()
    ptr = [0] * G.n
    circuits = []
    roots = ([start] if start is not None else []) + list(range(G.n))
    for r in roots:
        if ptr[r] >= len(adj[r]) and all(e in used for e in adj[r]):
            continue
        # Hierholzer
        stack = [(r, None)]
        tour = []
        while stack:
            x, via = stack[-1]
            while ptr[x] < len(adj[x]) and adj[x][ptr[x]] in used:
                ptr[x] += 1
            if ptr[x] == len(adj[x]):
                stack.pop()
                if via is not None:
                    tour.append(via)
                continue
            e = adj[x][ptr[x]]
            used.add(e)
            y = G.other_end(e, x)
            stack.append((y, (e, x)))
        tour.reverse()
        if tour:
            circuits.append(tour)
    return circuits


def eulerian_orientation(G: Multigraph) -> Orientation:
    """Orient along Euler tours so ``d+(v) = d(v)/2`` everywhere."""
    if G.has_loops:
        raise InputError("orientations are only defined on loopless hosts")
    forward = [True] * G.m
    for circ in euler_circuits(G):
        for e, t in circ:
            forward[e] = t == G.edges[e][0]
    return Orientation(G, forward)
