"""Bipartite modulo k-regular factors and subgraphs.

A factor or subgraph is modulo k-regular when every degree is positive and
divisible by k (for subgraphs: every vertex it touches).
"""

from __future__ import annotations

from typing import Sequence

from .bipartite import max_bipartite_factor
from .connectivity import EXACT_CUT_MAX_N, is_edge_connected, is_essentially_edge_connected, tree_pack
from .errors import HypothesisError, InputError, LimitExceeded, SolverGaveUp
from .factor import bipartite_f_factor, bipartite_f_factor_tree
from .graph import Factor, Multigraph, ResidueMap, lift_edges
from .parity import even_factor

SUBGRAPH_BUDGET = 2_000_000


def _bipartite_host(G: Multigraph) -> tuple[Multigraph, list[int], bool]:
    """``G`` itself when bipartite, else its maximum bipartite factor; plus
    the id map back to ``G`` and whether ``G`` was bipartite."""
    if G.is_bipartite():
        return G, list(range(G.m)), True
    bf = max_bipartite_factor(G)
    H, ids = bf.factor.as_graph()
    return H, ids, False


def _require(ok: bool, message: str, clause: str) -> None:
    if not ok:
        raise HypothesisError(message, clause=clause)


def _ess(G: Multigraph, lam: int) -> bool:
    try:
        return is_essentially_edge_connected(G, lam)
    except LimitExceeded:
        return False


def is_modk_regular(H: Factor, k: int) -> bool:
    return all(x > 0 and x % k == 0 for x in H.degrees())


def bipartite_mod2_regular(G: Multigraph, check: bool = True) -> Factor:
    """Bipartite factor with all degrees positive and even."""
    if G.has_loops:
        raise HypothesisError("graph has loops", clause="loopless")
    if check:
        _require(G.min_degree() >= 5, "minimum degree is below 5", "min-degree")
        _require(is_edge_connected(G, 3), "graph is not 3-edge-connected", "edge-connectivity")
    H, ids, _ = _bipartite_host(G)
    F = lift_edges(even_factor(H, check=check).edge_ids, ids, G)
    if not is_modk_regular(F, 2) or not F.as_graph()[0].is_bipartite():  # pragma: no cover
        raise RuntimeError("bipartite even factor failed its check")
    return F


def bipartite_modk_regular_factor(G: Multigraph, k: int, route: str = "edge", check: bool = True) -> Factor:
    """Bipartite factor whose degrees are positive multiples of ``k``.

    ``route="edge"``: (4k-1)-edge-connected and essentially (6k-7)-edge-connected
    (bipartite input: 2k and 3k-3).  ``route="tree"``: (4k-4)-tree-connected
    (bipartite input: 2k-2); needs k >= 3 since the degree floor
    ``ceil(k/2 - 1)`` vanishes below that.
    """
    if k < 1:
        raise InputError("k must be positive")
    if G.has_loops:
        raise HypothesisError("graph has loops", clause="loopless")
    if route not in ("edge", "tree"):
        raise InputError(f"unknown route {route!r}")
    if route == "tree" and k < 3:
        raise InputError("the tree route needs k >= 3")
    bip = G.is_bipartite()
    if check:
        if route == "edge":
            lam, ess = (2 * k, 3 * k - 3) if bip else (4 * k - 1, 6 * k - 7)
            _require(is_edge_connected(G, lam), f"graph is not {lam}-edge-connected", "edge-connectivity")
            _require(_ess(G, ess), f"graph is not essentially {ess}-edge-connected", "essential-connectivity")
        else:
            m = 2 * k - 2 if bip else 4 * k - 4
            _require(bool(tree_pack(G, m)), f"graph is not {m}-tree-connected", "tree-connectivity")
    H, ids, _ = _bipartite_host(G)
    f = ResidueMap.constant(H.n, k, 0)
    if route == "edge":
        F = bipartite_f_factor(H, f, check=False)
    else:
        F = bipartite_f_factor_tree(H, f, check=False)
    out = lift_edges(F.edge_ids, ids, G)
    if not is_modk_regular(out, k):  # pragma: no cover
        raise RuntimeError("modulo k-regular factor failed its check")
    return out


def modk_regular_nondiv2k(G: Multigraph, k: int, check: bool = True) -> Factor:
    """Factor with every degree congruent to ``k`` modulo ``2k``."""
    if k < 1:
        raise InputError("k must be positive")
    if G.n % 2:
        raise HypothesisError("graph has odd order", clause="even-order")
    if G.has_loops:
        raise HypothesisError("graph has loops", clause="loopless")
    bip = G.is_bipartite()
    if check:
        lam, ess = (5 * k - 1, 6 * k - 3) if bip else (10 * k - 3, 12 * k - 7)
        _require(is_edge_connected(G, lam), f"graph is not {lam}-edge-connected", "edge-connectivity")
        _require(_ess(G, ess), f"graph is not essentially {ess}-edge-connected", "essential-connectivity")
    H, ids, _ = _bipartite_host(G)
    if check:
        _require(H.min_degree() >= 5 * k - 1, f"bipartite factor has a degree below {5 * k - 1}", "min-degree")
    F = bipartite_f_factor(H, ResidueMap.constant(H.n, 2 * k, k), check=False)
    out = lift_edges(F.edge_ids, ids, G)
    if any(x % (2 * k) != k for x in out.degrees()):  # pragma: no cover
        raise RuntimeError("factor degrees are not k modulo 2k")
    return out


# --------------------------------------------------------------------------
# subgraphs


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(p for p in range(2, q + 1) if q % p == 0)
    while q % p == 0:
        q //= p
    return q == 1


def smallest_prime_power(k: int) -> int:
    q = max(k, 2)
    while not is_prime_power(q):
        q += 1
    return q


def afk_threshold(n: int, q: int, bipartite: bool = False) -> int:
    """Edge count that forces a modulo q-regular subgraph when exceeded."""
    return (q - 1) * (n - 1) if bipartite else (q - 1) * n


def mod_q_regular_subgraph(G: Multigraph, q: int, budget: int = SUBGRAPH_BUDGET) -> Factor | None:
    """Nonempty edge set whose touched vertices all have degree divisible by
    ``q``, or ``None`` when none exists.

    Branch and bound over vertices in BFS order: at each vertex the number of
    copies taken of every parallel class to a later vertex is chosen so the
    vertex closes with degree 0 mod q; later vertices must still be able to
    reach a multiple of q.  Raises :class:`SolverGaveUp` past ``budget`` nodes.
    """
    if q < 2:
        raise InputError("q must be at least 2")
    n = G.n
    order = _bfs_order(G)
    pos = {v: i for i, v in enumerate(order)}
    loops = [0] * n
    classes: list[dict[int, list[int]]] = [dict() for _ in range(n)]
    for e, (u, v) in enumerate(G.edges):
        if u == v:
            loops[u] += 1
            continue
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        classes[a].setdefault(b, []).append(e)
    rem = list(G.degrees())  # undecided edge ends per vertex
    cur = [0] * n
    chosen: list[tuple[int, int, int]] = []  # (vertex, neighbour, copies)
    nodes = 0

    def reachable(w: int) -> bool:
        need = (-cur[w]) % q
        return need <= rem[w]

    def assign(v: int, items: list[tuple[int, list[int]]], i: int, loops_taken: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SolverGaveUp(f"subgraph search exceeded {budget} nodes")
        if i == len(items):
            if cur[v] % q:
                return False
            return step(pos[v] + 1)
        w, ids = items[i]
        # copies left for v after this class
        left_v = sum(len(x) for _, x in items[i + 1 :])
        for c in range(len(ids), -1, -1):
            cur[v] += c
            cur[w] += c
            rem[v] -= len(ids)
            rem[w] -= len(ids)
            ok = reachable(w) and (-cur[v]) % q <= left_v
            if ok:
                chosen.append((v, w, c))
                if assign(v, items, i + 1, loops_taken):
                    return True
                chosen.pop()
            cur[v] -= c
            cur[w] -= c
            rem[v] += len(ids)
            rem[w] += len(ids)
        return False

    def step(i: int) -> bool:
        if i == n:
            return any(c for _, _, c in chosen) or any(loop_pick)
        v = order[i]
        items = sorted(classes[v].items(), key=lambda kv: pos[kv[0]])
        # loops first: each adds 2
        for t in range(loops[v], -1, -1):
            cur[v] += 2 * t
            rem[v] -= 2 * loops[v]
            loop_pick[v] = t
            if (-cur[v]) % q <= rem[v] and assign(v, items, 0, t):
                return True
            cur[v] -= 2 * t
            rem[v] += 2 * loops[v]
        loop_pick[v] = 0
        return False

    loop_pick = [0] * n
    if not step(0):
        return None
    ids: list[int] = []
    for v, w, c in chosen:
        ids.extend(classes[v][w][:c])
    for v in range(n):
        ids.extend([e for e in G.incident(v) if G.edges[e] == (v, v)][: loop_pick[v]])
    S = Factor(G, ids)
    if not S.edge_ids or any(x % q for x in S.degrees()):  # pragma: no cover
        raise RuntimeError("subgraph search returned an invalid witness")
    return S


def _bfs_order(G: Multigraph) -> list[int]:
    seen = [False] * G.n
    order = []
    for s in sorted(range(G.n), key=lambda v: -G.degree(v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for e in G.incident(x):
                y = G.other_end(e, x)
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def _bipartite_perfect_matching(left: int, adj: list[list[tuple[int, int]]], right: int) -> list[int]:
    """Kuhn's augmenting paths; returns the matched edge id per left vertex."""
    match_r = [-1] * right
    edge_r = [-1] * right

    def try_kuhn(u: int, seen: list[bool]) -> bool:
        for e, w in adj[u]:
            if seen[w]:
                continue
            seen[w] = True
            if match_r[w] == -1 or try_kuhn(match_r[w], seen):
                match_r[w] = u
                edge_r[w] = e
                return True
        return False

    for u in range(left):
        if not try_kuhn(u, [False] * right):
            raise RuntimeError("regular bipartite graph without a perfect matching")
    out = [-1] * left
    for w in range(right):
        if match_r[w] != -1:
            out[match_r[w]] = edge_r[w]
    return out


def split_vertices(H: Multigraph, f: Sequence[int], q: int) -> tuple[list[int], list[int], list[tuple[int, int]]]:
    """Clone each vertex ``v`` into ``f(v)`` copies, dealing its edges to the
    copies round-robin in id order.  Returns (left clones, right clones,
    clone endpoints per edge)."""
    colors = H.two_coloring()
    if colors is None:
        raise InputError("konig_scale needs a bipartite graph")
    d = H.degrees()
    for v in range(H.n):
        if f[v] < 0 or d[v] != q * f[v]:
            raise InputError(f"degree {d[v]} at {v} is not q * f(v) = {q * f[v]}")
    left_ids: dict[tuple[int, int], int] = {}
    right_ids: dict[tuple[int, int], int] = {}
    for v in range(H.n):
        table = left_ids if colors[v] == 0 else right_ids
        for c in range(f[v]):
            table[(v, c)] = len(table)
    dealt = [0] * H.n
    ends = []
    for e, (u, v) in enumerate(H.edges):
        cu, cv = dealt[u] % max(f[u], 1), dealt[v] % max(f[v], 1)
        dealt[u] += 1
        dealt[v] += 1
        a, b = (u, cu), (v, cv)
        if colors[u] == 1:
            a, b = b, a
        ends.append((left_ids[a], right_ids[b]))
    return list(left_ids.values()), list(right_ids.values()), ends


def peel_matchings(left: int, right: int, ends: Sequence[tuple[int, int]], count: int) -> list[list[int]]:
    """Remove ``count`` perfect matchings one after another from a regular
    bipartite multigraph given by clone endpoints."""
    alive = set(range(len(ends)))
    out = []
    for _ in range(count):
        adj: list[list[tuple[int, int]]] = [[] for _ in range(left)]
        for e in sorted(alive):
            a, b = ends[e]
            adj[a].append((e, b))
        M = _bipartite_perfect_matching(left, adj, right)
        out.append(M)
        alive -= set(M)
    return out


def konig_scale(H: Multigraph, f: Sequence[int], q: int, k: int) -> Factor:
    """Factor with ``d_F = k f`` of a bipartite ``H`` with ``d_H = q f``."""
    if not 0 <= k <= q:
        raise InputError("need 0 <= k <= q")
    left, right, ends = split_vertices(H, f, q)
    if len(left) != len(right):  # pragma: no cover - implied by regularity
        raise InputError("sides of the split graph differ in size")
    matchings = peel_matchings(len(left), len(right), ends, k)
    F = Factor(H, [e for M in matchings for e in M])
    if any(F.degree(v) != k * f[v] for v in range(H.n)):  # pragma: no cover
        raise RuntimeError("scaled factor has the wrong degrees")
    return F


def bipartite_modk_regular_subgraph(G: Multigraph, k: int, q: int | None = None, budget: int = SUBGRAPH_BUDGET) -> Factor:
    """Bipartite subgraph whose touched vertices have positive degrees
    divisible by ``k``, for ``|E| > (2q-2)(n-1)``."""
    if k < 1:
        raise InputError("k must be positive")
    if G.has_loops:
        raise InputError("graph must be loopless")
    q = smallest_prime_power(k) if q is None else q
    if q < k or not is_prime_power(q):
        raise InputError(f"q = {q} must be a prime power at least k")
    bound = (2 * q - 2) * (G.n - 1)
    if G.m <= bound:
        raise HypothesisError(f"|E| = {G.m} is not above (2q-2)(n-1) = {bound}", clause="threshold")
    bf = max_bipartite_factor(G, "exact" if G.n <= min(EXACT_CUT_MAX_N, 16) else "local-search")
    H, ids = bf.factor.as_graph()
    S = mod_q_regular_subgraph(H, q, budget)
    if S is None:  # pragma: no cover - excluded by the counting bound
        raise RuntimeError("no modulo q-regular subgraph above the threshold")
    Sg, sids = S.as_graph()
    f = [x // q for x in Sg.degrees()]
    F = konig_scale(Sg, f, q, k)
    out = Factor(G, [ids[sids[e]] for e in F.edge_ids])
    d = out.degrees()
    dS = Sg.degrees()
    if not out.edge_ids or any(d[v] * q != dS[v] * k or d[v] % k for v in range(G.n)):  # pragma: no cover
        raise RuntimeError("scaled subgraph failed its check")
    return out
