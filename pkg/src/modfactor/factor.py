"""f-factors modulo k with degrees close to d/2.

Bipartite graphs go through the orientation correspondence: with
``p = f`` on X and ``p = d - f`` on Y, a p-orientation yields the factor of
edges directed X -> Y.  Graphs with a few edges inside the sides go through a
trail-contracted auxiliary graph with an extra pre-oriented vertex ``z0``;
general and highly tree-connected graphs are reduced to that case.

Every routine re-checks its output and raises ``RuntimeError`` if the check
fails, so a returned factor always satisfies its stated window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bipartite import eulerian_plus_bipartite_decompose, max_bipartite_factor
from .compat import COMPAT_MAX_N, compatible_all, compatible_wrt
from .connectivity import (
    bipartite_index,
    is_essentially_edge_connected,
    is_edge_connected,
    is_partition_connected,
    tree_pack,
)
from .errors import HypothesisError, Infeasible, InputError, LimitExceeded, SolverGaveUp
from .graph import Bipartition, Factor, Multigraph, ResidueMap, lift_edges, residue_normalize
from .orientation import (
    DEFAULT_BUDGET,
    DegreeWindow,
    PreOrientation,
    euler_circuits,
    find_p_orientation,
)
from .parity import mod2_bounded_factor

# --------------------------------------------------------------------------
# checking


def factor_violations(
    H: Factor,
    f: ResidueMap | None = None,
    lower: Sequence[int] | None = None,
    upper: Sequence[int] | None = None,
) -> list[str]:
    """Vertexwise residue and window violations (empty list = valid)."""
    bad = []
    d = H.degrees()
    for v in range(H.host.n):
        if f is not None and (d[v] - f[v]) % f.modulus:
            bad.append(f"residue at {v}: {d[v]} vs {f[v]} mod {f.modulus}")
        if lower is not None and d[v] < lower[v]:
            bad.append(f"degree {d[v]} at {v} below {lower[v]}")
        if upper is not None and d[v] > upper[v]:
            bad.append(f"degree {d[v]} at {v} above {upper[v]}")
    return bad


def _ensure(H: Factor, f, lower, upper, what: str) -> Factor:
    bad = factor_violations(H, f, lower, upper)
    if bad:  # pragma: no cover - a failure here is a construction bug
        raise RuntimeError(f"{what} failed its own check: " + "; ".join(bad[:5]))
    return H


def half_window(G: Multigraph, k: int) -> tuple[list[int], list[int]]:
    """``floor(d/2) - (k-1) .. ceil(d/2) + (k-1)``."""
    d = G.degrees()
    return [x // 2 - (k - 1) for x in d], [(x + 1) // 2 + (k - 1) for x in d]


def _bipartition_of(G: Multigraph, B: Bipartition | None) -> Bipartition:
    if B is not None:
        B.check(G)
        if B.intra_edges(G):
            raise HypothesisError("given bipartition has edges inside a side", clause="bipartite")
        return B
    colors = G.two_coloring()
    if colors is None:
        raise HypothesisError("graph is not bipartite", clause="bipartite")
    return Bipartition.from_colors(colors)


def _bipartite_compatible(G: Multigraph, f: ResidueMap, B: Bipartition) -> None:
    if (f.total(B.X) - f.total(B.Y)) % f.modulus:
        raise HypothesisError(
            f"f is not compatible: side sums differ modulo {f.modulus}", clause="compatibility"
        )


def _p_from_f(G: Multigraph, f: ResidueMap, B: Bipartition) -> ResidueMap:
    d = G.degrees()
    return ResidueMap(f.modulus, [f[v] if v in B.X else d[v] - f[v] for v in range(G.n)])


def _x_to_y(G: Multigraph, D, B: Bipartition) -> Factor:
    return Factor(G, [e for e in range(G.m) if D.tail(e) in B.X])


# --------------------------------------------------------------------------
# bipartite graphs


def bipartite_f_factor(
    G: Multigraph,
    f: ResidueMap,
    z: int | None = None,
    z_target: int | None = None,
    check: bool = True,
    bipartition: Bipartition | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Factor:
    """f-factor of a bipartite graph with ``|d_H - d/2| < k`` (floor/ceil form).

    Hypotheses: f compatible (equal side sums mod k) and G either
    (3k-3)-edge-connected or essentially (3k-3)-edge-connected with
    ``d(v) >= 2k - 1 + [f(v)]_k``.  ``z_target`` pins the degree at ``z``.
    """
    f.check(G)
    k = f.modulus
    B = _bipartition_of(G, bipartition)
    _bipartite_compatible(G, f, B)
    if check and k > 1 and G.n >= 2:
        _check_bipartite_connectivity(G, f)
    lower, upper = half_window(G, k)
    if z_target is not None:
        if z is None or not 0 <= z < G.n:
            raise InputError("z_target needs a valid vertex z")
        if (z_target - f[z]) % k or not lower[z] <= z_target <= upper[z] or not 0 <= z_target <= G.degree(z):
            raise InputError(f"target {z_target} at {z} is not plausible")
    if k == 2 and G.n >= 2 and is_edge_connected(G, 2):
        H = mod2_bounded_factor(G, f, z, z_target, check=False)
        return _ensure(H, f, lower, upper, "bipartite f-factor")
    p = _p_from_f(G, f, B)
    window = DegreeWindow.around_half(G, k - 1, k - 1)
    pins = {}
    if z_target is not None:
        pins[z] = z_target if z in B.X else G.degree(z) - z_target
    D = find_p_orientation(G, p, window, pins=pins, budget=budget)
    H = _x_to_y(G, D, B)
    if z_target is not None and H.degree(z) != z_target:  # pragma: no cover
        raise RuntimeError("pinned degree not honoured")
    return _ensure(H, f, lower, upper, "bipartite f-factor")


def _check_bipartite_connectivity(G: Multigraph, f: ResidueMap) -> None:
    k = f.modulus
    lam = 3 * k - 3
    if is_edge_connected(G, lam):
        return
    d = G.degrees()
    deg_ok = all(d[v] >= 2 * k - 1 + residue_normalize(f[v], k) for v in range(G.n))
    if deg_ok and G.is_connected():
        try:
            if is_essentially_edge_connected(G, lam):
                return
        except LimitExceeded:
            pass
    raise HypothesisError(
        f"graph is neither {lam}-edge-connected nor essentially {lam}-edge-connected with large degrees",
        clause="edge-connectivity",
    )


def bipartite_f_factor_window(
    G: Multigraph,
    f: ResidueMap,
    s: Sequence[int],
    s0: Sequence[int],
    l0: Sequence[int],
    z: int | None = None,
    check: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Factor:
    """f-factor of a bipartite graph with ``s <= d_H <= d - s0``."""
    f.check(G)
    k = f.modulus
    d = G.degrees()
    for v in range(G.n):
        if s[v] + s0[v] + k - 1 > d[v]:
            raise InputError(f"s + s0 + k - 1 exceeds the degree at {v}")
    B = _bipartition_of(G, None)
    _bipartite_compatible(G, f, B)
    if check:
        if k < 3:
            raise HypothesisError("the partition-connected window theorem needs k >= 3", clause="k")
        for v in range(G.n):
            if max(s[v], s0[v]) > l0[v] + (k - 1) * (0 if v == z else 1):
                raise HypothesisError(f"max(s, s0) too large at {v}", clause="l0")
        if not is_partition_connected(G, 2 * k - 2, l0):
            raise HypothesisError(
                f"graph is not ({2 * k - 2}, l0)-partition-connected", clause="partition-connected"
            )
    lo = [s[v] if v in B.X else s0[v] for v in range(G.n)]
    hi = [d[v] - s0[v] if v in B.X else d[v] - s[v] for v in range(G.n)]
    D = find_p_orientation(G, _p_from_f(G, f, B), DegreeWindow(lo, hi), budget=budget)
    H = _x_to_y(G, D, B)
    return _ensure(H, f, list(s), [d[v] - s0[v] for v in range(G.n)], "window f-factor")


def tree_bound(k: int) -> int:
    """Integer form of the real bound ``k/2 - 1``: its ceiling."""
    return (k - 1) // 2


def bipartite_f_factor_tree(
    G: Multigraph, f: ResidueMap, check: bool = True, budget: int = DEFAULT_BUDGET
) -> Factor:
    """f-factor with ``c <= d_H <= d - c`` for ``c = ceil(k/2 - 1)`` on a
    (2k-2)-tree-connected bipartite graph, k >= 3."""
    f.check(G)
    k = f.modulus
    if G.n < 2 or G.m == 0:
        raise InputError("graph must be nontrivial")
    if k < 3:
        raise InputError("needs k >= 3")
    B = _bipartition_of(G, None)
    _bipartite_compatible(G, f, B)
    if check and not tree_pack(G, 2 * k - 2):
        raise HypothesisError(f"graph is not {2 * k - 2}-tree-connected", clause="tree-connectivity")
    c = tree_bound(k)
    d = G.degrees()
    window = DegreeWindow([c] * G.n, [x - c for x in d])
    D = find_p_orientation(G, _p_from_f(G, f, B), window, budget=budget)
    H = _x_to_y(G, D, B)
    return _ensure(H, f, [c] * G.n, [x - c for x in d], "tree f-factor")


# --------------------------------------------------------------------------
# trail decompositions


@dataclass(frozen=True)
class Trail:
    start: int
    edges: tuple[int, ...]

    def vertices(self, G: Multigraph) -> list[int]:
        vs = [self.start]
        for e in self.edges:
            u, v = G.edges[e]
            x = vs[-1]
            if x not in (u, v):
                raise InputError(f"trail breaks at edge {e}")
            vs.append(v if x == u else u)
        return vs

    def end(self, G: Multigraph) -> int:
        return self.vertices(G)[-1]

    def reversed(self, G: Multigraph) -> Trail:
        return Trail(self.end(G), tuple(reversed(self.edges)))


@dataclass(frozen=True)
class TrailDecomposition:
    trails: tuple[Trail, ...]
    X: frozenset[int]

    def violations(self, T: Factor) -> list[str]:
        G = T.host
        bad = []
        seen: list[int] = [e for tr in self.trails for e in tr.edges]
        if sorted(seen) != T.sorted_ids():
            bad.append("trails do not partition the edge set")
        for i, tr in enumerate(self.trails):
            try:
                vs = tr.vertices(G)
            except InputError as exc:
                bad.append(f"trail {i}: {exc}")
                continue
            a, b = vs[0] in self.X, vs[-1] in self.X
            if len(tr.edges) % 2 == 1 and a == b:
                bad.append(f"trail {i} has odd size but ends on one side")
            if len(tr.edges) % 2 == 0 and a != b:
                bad.append(f"trail {i} has even size but ends on both sides")
        return bad


def greedy_length2_trails(G: Multigraph, edge_ids) -> tuple[list[Trail], list[int]]:
    """Pair edges into trails of length two at shared vertices until no two
    unpaired edges meet; the unpaired rest is a matching."""
    free = set(edge_ids)
    trails = []
    for v in range(G.n):
        pending = [e for e in G.incident(v) if e in free]
        for i in range(0, len(pending) - 1, 2):
            e1, e2 = pending[i], pending[i + 1]
            free.discard(e1)
            free.discard(e2)
            trails.append(Trail(G.other_end(e1, v), (e1, e2)))
    return trails, sorted(free)


def x_parity_trails(T: Factor, X, trails: Sequence[Trail] | None = None) -> TrailDecomposition:
    """Check a given X-parity trail decomposition of ``T`` or build one from
    length-two trails (which works when every trail stays inside a side)."""
    X = frozenset(X)
    if trails is None:
        built, rest = greedy_length2_trails(T.host, T.edge_ids)
        if rest:
            raise Infeasible(f"{len(rest)} edge(s) left over after pairing into length-two trails")
        trails = built
    dec = TrailDecomposition(tuple(trails), X)
    bad = dec.violations(T)
    if bad:
        raise Infeasible("not an X-parity trail decomposition: " + "; ".join(bad))
    return dec


def select_alternate(G: Multigraph, trail: Trail, tail: int, X: frozenset[int]) -> list[int]:
    """Edges picked from a trail whose contracted edge leaves ``tail``."""
    tr = trail if trail.start == tail else trail.reversed(G)
    offset = 0 if tr.start in X else 1
    return [e for i, e in enumerate(tr.edges) if i % 2 == offset]


# --------------------------------------------------------------------------
# near-bipartite graphs


def near_bipartite_f_factor(
    G: Multigraph,
    f: ResidueMap,
    bipartition: Bipartition,
    G0: Factor,
    T: Factor,
    z: int | None = None,
    trails: Sequence[Trail] | None = None,
    check: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Factor:
    """f-factor with ``floor(d/2)-(k-1) <= d_H <= ceil(d/2)+(k-1)`` where
    ``E = E(G0) + E(T)``, T has an X-parity trail decomposition and G0 keeps
    at most k-1 edges inside the sides.  At an odd-degree ``z`` the upper
    bound drops by one.
    """
    f.check(G)
    k = f.modulus
    n = G.n
    if G0.edge_ids & T.edge_ids or len(G0) + len(T) != G.m:
        raise InputError("G0 and T must partition the edge set")
    B = bipartition
    B.check(G)
    if z is not None:
        if G.degree(z) % 2 == 0:
            raise InputError(f"z = {z} must have odd degree")
        if z in B.X:
            # the artificial edge must enter z from the Y side's point of view
            B = B.swapped()
    X = B.X
    dec = x_parity_trails(T, X, trails)
    intra0 = [e for e in G0.sorted_ids() if (G.edges[e][0] in X) == (G.edges[e][1] in X)]
    if len(intra0) != min(k - 1, len(B.intra_edges(G))):
        raise HypothesisError(
            "G0 must keep min(k-1, e(X)+e(Y)) edges inside the sides", clause="G0-intra"
        )
    if check and n >= 2 and not is_edge_connected(G.edge_subgraph(G0.edge_ids), 3 * k - 3):
        raise HypothesisError(f"G0 is not {3 * k - 3}-edge-connected", clause="edge-connectivity")
    if check and not compatible_wrt(G, f, B)[0]:
        raise HypothesisError("f is not compatible with respect to the bipartition", clause="compatibility")

    z0 = n
    MX = [e for e in intra0 if G.edges[e][0] in X]
    MY = [e for e in intra0 if G.edges[e][0] not in X]
    cross0 = [e for e in G0.sorted_ids() if e not in set(intra0)]

    w_edges: list[tuple[int, int]] = []
    origin: list[tuple] = []
    for e in cross0:
        w_edges.append(G.edges[e])
        origin.append(("cross", e))
    m_slots: dict[int, list[tuple[int, int]]] = {}
    for e in MX + MY:
        for x in G.edges[e]:
            m_slots.setdefault(e, []).append((len(w_edges), x))
            w_edges.append((z0, x))
            origin.append(("m", e))
    z_slot = None
    if z is not None:
        z_slot = len(w_edges)
        w_edges.append((z0, z))
        origin.append(("z",))
    loops = [0] * (n + 1)
    trail_slot: dict[int, int] = {}
    dT_contracted = [0] * n
    for i, tr in enumerate(dec.trails):
        a, b = tr.start, tr.end(G)
        dT_contracted[a] += 1
        dT_contracted[b] += 1
        if a == b:
            loops[a] += 1
        else:
            trail_slot[i] = len(w_edges)
            w_edges.append((a, b))
            origin.append(("trail", i))
    W = Multigraph(n + 1, w_edges)
    dT = T.degrees()
    t = [(dT[v] - dT_contracted[v]) // 2 for v in range(n)]
    dW = [W.degree(v) + 2 * loops[v] for v in range(n + 1)]
    chi = [1 if v == z else 0 for v in range(n)]
    total_edges = W.m + sum(loops)

    def split_tails(a: int, b: int) -> dict[int, int]:
        in_M = set(MX[:a]) | set(MY[b:])
        tails = {}
        for e, slots in m_slots.items():
            in_x = e in set(MX)
            toward_z0 = (in_x and e not in in_M) or (not in_x and e in in_M)
            for slot, x in slots:
                tails[slot] = x if toward_z0 else z0
        if z_slot is not None:
            tails[z_slot] = z0
        return tails

    lower = [dW[v] // 2 - (k - 1) - loops[v] for v in range(n)]
    upper = [(dW[v] + 1) // 2 + (k - 1) - loops[v] for v in range(n)]
    last_error: Exception | None = None
    tried = 0
    for a in range(len(MX) + 1):
        for b in range(len(MY) + 1):
            tails = split_tails(a, b)
            out0 = sum(1 for x in tails.values() if x == z0)
            p = []
            for v in range(n):
                if v in X:
                    p.append(f[v] - t[v])
                else:
                    p.append(dW[v] - chi[v] + t[v] - f[v])
            p.append(out0)
            if (sum(p) - total_edges) % k:
                continue
            tried += 1
            pl = ResidueMap(k, [p[v] - loops[v] for v in range(n)] + [out0])
            window = DegreeWindow(lower + [out0], upper + [out0])
            try:
                D = find_p_orientation(W, pl, window, PreOrientation(z0, tails), budget=budget)
            except (Infeasible, SolverGaveUp) as exc:
                last_error = exc
                continue
            return _assemble_near_bipartite(G, f, k, X, z, dec, MX, MY, a, b, cross0, trail_slot, origin, W, D)
    if tried == 0:
        raise HypothesisError(
            "no split of the side edges balances p against |E| modulo k (f not compatible)",
            clause="compatibility",
        )
    if isinstance(last_error, SolverGaveUp):
        raise last_error
    raise Infeasible(f"orientation search failed for all {tried} balanced splits") from last_error


def _assemble_near_bipartite(G, f, k, X, z, dec, MX, MY, a, b, cross0, trail_slot, origin, W, D) -> Factor:
    M0 = set(MX[a:]) | set(MY[:b])
    chosen = set(M0)
    for slot, tag in enumerate(origin):
        if tag[0] == "cross" and D.tail(slot) in X:
            chosen.add(tag[1])
    for i, tr in enumerate(dec.trails):
        tail = D.tail(trail_slot[i]) if i in trail_slot else tr.start
        chosen.update(select_alternate(G, tr, tail, X))
    H = Factor(G, chosen)
    lower, upper = half_window(G, k)
    if z is not None:
        upper[z] -= 1
    return _ensure(H, f, lower, upper, "near-bipartite f-factor")


# --------------------------------------------------------------------------
# general graphs


def half_factor(G: Multigraph) -> Factor:
    """Factor with ``floor(d/2) <= d_H <= floor(d/2) + 1``: pad odd vertices
    to an auxiliary vertex, walk Euler tours from it and keep alternate edges."""
    if G.has_loops:
        raise InputError("half_factor expects a loopless graph")
    d = G.degrees()
    odd = [v for v in range(G.n) if d[v] % 2]
    w = G.n
    aux = Multigraph(G.n + 1, list(G.edges) + [(v, w) for v in odd])
    chosen = set()
    for circ in euler_circuits(aux, start=w if odd else None):
        chosen.update(e for i, (e, _) in enumerate(circ) if i % 2 == 0 and e < G.m)
    H = Factor(G, chosen)
    return _ensure(H, None, [x // 2 for x in d], [x // 2 + 1 for x in d], "half factor")


def _check_compat(G: Multigraph, f: ResidueMap) -> None:
    mode = "exact" if G.n <= COMPAT_MAX_N else "sufficient"
    rep = compatible_all(G, f, mode)
    if rep.verdict is False:
        raise HypothesisError(f"f is not compatible with G ({rep.reason})", clause="compatibility")


def general_f_factor(
    G: Multigraph, f: ResidueMap, check: bool = True, budget: int = DEFAULT_BUDGET
) -> Factor:
    """f-factor with ``floor(d/2)-(k-1) <= d_H <= floor(d/2)+k`` on a graph
    whose maximum bipartite factor is (3k-3)-edge-connected."""
    f.check(G)
    if G.has_loops:
        raise InputError("general_f_factor expects a loopless graph")
    k = f.modulus
    d = G.degrees()
    lower = [x // 2 - (k - 1) for x in d]
    upper = [x // 2 + k for x in d]
    if k == 1:
        return _ensure(half_factor(G), f, lower, upper, "general f-factor")
    bf = max_bipartite_factor(G)
    B = bf.bipartition
    if check:
        if G.n >= 2 and not is_edge_connected(G.edge_subgraph(bf.factor.edge_ids), 3 * k - 3):
            raise HypothesisError(
                f"maximum bipartite factor is not {3 * k - 3}-edge-connected", clause="edge-connectivity"
            )
        _check_compat(G, f)
    if k == 2:
        if f.total() % 2:
            raise HypothesisError("sum of f is odd", clause="compatibility")
        H = mod2_bounded_factor(G, f, check=False)
        return _ensure(H, f, lower, upper, "general f-factor")
    intra = B.intra_edges(G)
    keep = intra[: k - 1]
    trails, L = greedy_length2_trails(G, intra[k - 1 :])
    dL = [0] * G.n
    for e in L:
        u, v = G.edges[e]
        if dL[u] or dL[v]:  # pragma: no cover
            raise RuntimeError("leftover intra edges are not a matching")
        dL[u] = dL[v] = 1
    rest_ids = [e for e in range(G.m) if e not in set(L)]
    sub = G.edge_subgraph(rest_ids)
    back = {e: i for i, e in enumerate(rest_ids)}
    G0 = Factor(sub, [back[e] for e in B.cross_edge_ids(G) + keep])
    T = G0.complement()
    sub_trails = [Trail(tr.start, tuple(back[e] for e in tr.edges)) for tr in trails]
    fp = f.shifted([-x for x in dL])
    F = near_bipartite_f_factor(sub, fp, B, G0, T, trails=sub_trails, check=False, budget=budget)
    H = lift_edges(F.edge_ids, rest_ids, G).union(Factor(G, L))
    return _ensure(H, f, lower, upper, "general f-factor")


# --------------------------------------------------------------------------
# high tree-connectivity


def eulerian_half_factor(G: Multigraph, z: int) -> Factor:
    """``d_H = d/2`` off ``z`` and ``d_H(z) = d(z)/2 + (|E| mod 2)`` on a
    connected Eulerian graph, by alternating along an Euler tour from ``z``."""
    if any(x % 2 for x in G.degrees()):
        raise InputError("eulerian_half_factor needs every degree even")
    if not 0 <= z < G.n:
        raise InputError(f"vertex {z} out of range")
    circuits = euler_circuits(G, start=z)
    if len(circuits) > 1 or (G.m and G.degree(z) == 0):
        raise InputError("eulerian_half_factor needs a connected graph through z")
    chosen = set()
    for circ in circuits:
        chosen.update(e for i, (e, _) in enumerate(circ) if i % 2 == 0)
    H = Factor(G, chosen)
    d = G.degrees()
    target = [x // 2 for x in d]
    target[z] += G.m % 2
    return _ensure(H, None, target, target, "Eulerian half factor")


def is_exceptional(G: Multigraph, f: ResidueMap) -> bool:
    """Eulerian, odd size, k odd and ``f = d/2 (mod k)`` everywhere: the only
    case where the sharper bound at the special vertex is out of reach."""
    d = G.degrees()
    k = f.modulus
    return (
        all(x % 2 == 0 for x in d)
        and G.m % 2 == 1
        and k % 2 == 1
        and all((f[v] - d[v] // 2) % k == 0 for v in range(G.n))
    )


def choose_special_vertex(G: Multigraph, f: ResidueMap) -> int:
    """A vertex at which the weaker upper bound costs nothing: one of odd
    degree, else one with ``f != d/2 (mod k)``, else vertex 0."""
    d = G.degrees()
    for v in range(G.n):
        if d[v] % 2:
            return v
    for v in range(G.n):
        if (f[v] - d[v] // 2) % f.modulus:
            return v
    return 0


def high_tree_window(G: Multigraph, f: ResidueMap, z: int | None = None) -> tuple[list[int], list[int]]:
    """Window that :func:`high_tree_f_factor` guarantees for the same ``z``."""
    k = f.modulus
    d = G.degrees()
    lower, upper = half_window(G, k)
    if is_exceptional(G, f):
        zz = choose_special_vertex(G, f) if z is None else z
        lower[zz] = (d[zz] + 1) // 2 - k
    elif z is not None:
        upper[z] = d[z] // 2 + k
    return lower, upper


def high_tree_f_factor(
    G: Multigraph,
    f: ResidueMap,
    z: int | None = None,
    check: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Factor:
    """f-factor on a (6k-2)-tree-connected graph with the sharp upper bound
    ``ceil(d/2)+(k-1)`` away from ``z`` and ``floor(d/2)+k`` at ``z``.

    With ``z=None`` the special vertex is picked so that the sharp bound holds
    everywhere.  In the exceptional case the sharp upper bound is kept at the
    price of the lower bound ``ceil(d/2)-k`` at ``z`` (via the complement of a
    factor for ``d - f``).
    """
    f.check(G)
    k = f.modulus
    if k < 2:
        raise InputError("needs k >= 2")
    if G.has_loops:
        raise InputError("expects a loopless graph")
    if check:
        if not tree_pack(G, 6 * k - 2):
            raise HypothesisError(f"graph is not {6 * k - 2}-tree-connected", clause="tree-connectivity")
        _check_compat(G, f)
    lower, upper = high_tree_window(G, f, z)
    zz = choose_special_vertex(G, f) if z is None else z
    if is_exceptional(G, f):
        d = G.degrees()
        fc = ResidueMap(k, [d[v] - f[v] for v in range(G.n)])
        H = _high_tree_core(G, fc, zz, budget).complement()
    else:
        H = _high_tree_core(G, f, zz, budget)
    return _ensure(H, f, lower, upper, "high tree-connectivity f-factor")


def _high_tree_core(G: Multigraph, f: ResidueMap, z: int, budget: int) -> Factor:
    k = f.modulus
    d = G.degrees()
    if k == 2:
        return mod2_bounded_factor(G, f, check=False)
    if all(x % 2 == 0 for x in d) and G.m % 2 == 0 and all((f[v] - d[v] // 2) % k == 0 for v in range(G.n)):
        return eulerian_half_factor(G, z)
    bi = bipartite_index(G)
    if bi.value <= k - 1:
        zz = z if d[z] % 2 else None
        return near_bipartite_f_factor(
            G, f, bi.bipartition, Factor.full(G), Factor(G), z=zz, check=False, budget=budget
        )
    split = eulerian_plus_bipartite_decompose(G, 3 * k - 3, k - 1, check=False)
    G1, ids1 = split.G1.as_graph()
    F1 = lift_edges(eulerian_half_factor(G1, z).edge_ids, ids1, G)
    G2, ids2 = split.G2.as_graph()
    fp = f.shifted([-x for x in F1.degrees()])
    zz = z if G2.degree(z) % 2 else None
    F2 = near_bipartite_f_factor(
        G2, fp, split.bipartition, Factor.full(G2), Factor(G2), z=zz, check=False, budget=budget
    )
    return F1.union(lift_edges(F2.edge_ids, ids2, G))


# --------------------------------------------------------------------------
# corollaries


VARIANTS = ("odd-half", "eulerian-pm-k", "merker", "f-or-f-plus-k-edge", "f-or-f-plus-k-tree")


def derived_half_factors(
    G: Multigraph,
    k: int,
    variant: str,
    f: Sequence[int] | ResidueMap | None = None,
    check: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Factor:
    """Factors whose degrees lie in small explicit sets around ``d/2``.

    ``odd-half``: bipartite, k odd, degrees in ``{d/2 - k/2, d/2, d/2 + k/2}``.
    ``eulerian-pm-k``: bipartite Eulerian of even order, degrees ``d/2 +- k``.
    ``merker``: bipartite with even degrees on X, ``d_H = d/2`` on X and
    ``f`` (mod k) within ``k`` of ``d/2`` on Y; pass ``f`` as a ResidueMap.
    ``f-or-f-plus-k-edge`` / ``-tree``: integer ``f`` with ``2f <= d``, degrees
    in ``{f, f + k}``.
    """
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    if k < 1:
        raise InputError("k must be positive")
    d = G.degrees()
    n = G.n
    if variant == "odd-half":
        if k % 2 == 0:
            raise InputError("odd-half needs odd k")
        fr = ResidueMap(k, [x // 2 if x % 2 == 0 else (x + k) // 2 for x in d])
        H = bipartite_f_factor(G, fr, check=check, budget=budget)
        bad = [v for v in range(n) if 2 * H.degree(v) not in (d[v] - k, d[v], d[v] + k)]
    elif variant == "eulerian-pm-k":
        if any(x % 2 for x in d) or n % 2:
            raise HypothesisError("needs an Eulerian graph of even order", clause="eulerian")
        if check and not is_edge_connected(G, 6 * k - 2):
            raise HypothesisError(f"graph is not {6 * k - 2}-edge-connected", clause="edge-connectivity")
        fr = ResidueMap(2 * k, [x // 2 + k for x in d])
        H = bipartite_f_factor(G, fr, check=False, budget=budget)
        bad = [v for v in range(n) if H.degree(v) not in (d[v] // 2 - k, d[v] // 2 + k)]
    elif variant == "merker":
        B = _bipartition_of(G, None)
        if any(d[v] % 2 for v in B.X):
            B = B.swapped()
        if any(d[v] % 2 for v in B.X):
            raise HypothesisError("one side must have all degrees even", clause="even-side")
        if not isinstance(f, ResidueMap) or f.modulus != k:
            raise InputError("merker variant needs f as a ResidueMap modulo k")
        if (sum(f[v] for v in B.Y) - G.m // 2) % k or G.m % 2:
            raise HypothesisError("sum of f over Y must be |E|/2 modulo k", clause="sum")
        fr = ResidueMap(k, [d[v] // 2 if v in B.X else f[v] for v in range(n)])
        H = bipartite_f_factor(G, fr, check=check, bipartition=B, budget=budget)
        bad = [v for v in B.X if 2 * H.degree(v) != d[v]]
        bad += [v for v in B.Y if abs(2 * H.degree(v) - d[v]) >= 2 * k]
    else:
        if f is None or isinstance(f, ResidueMap):
            raise InputError("this variant needs an integer-valued f")
        fi = list(f)
        if any(x <= 0 for x in fi):
            raise InputError("f must be positive")
        fr = ResidueMap(k, fi)
        if variant == "f-or-f-plus-k-edge":
            if any(not (2 * fi[v] <= d[v] <= 2 * fi[v] + 2 * k - 1) for v in range(n)):
                raise InputError("needs f <= d/2 <= f + k - 1/2")
            if check and n >= 2 and not is_edge_connected(G, 6 * k - 7):
                raise HypothesisError(f"graph is not {6 * k - 7}-edge-connected", clause="edge-connectivity")
            H = general_f_factor(G, fr, check=check, budget=budget)
        else:
            if any(not (2 * fi[v] <= d[v] <= 2 * fi[v] + 2 * k) for v in range(n)):
                raise InputError("needs f <= d/2 <= f + k")
            H = _f_or_f_plus_k_tree(G, fr, fi, check, budget)
        bad = [v for v in range(n) if H.degree(v) not in (fi[v], fi[v] + k)]
    if bad:  # pragma: no cover
        raise RuntimeError(f"{variant}: degrees out of the target set at {bad[:5]}")
    return H


def _f_or_f_plus_k_tree(G: Multigraph, fr: ResidueMap, fi: list[int], check: bool, budget: int) -> Factor:
    k = fr.modulus
    d = G.degrees()
    if check:
        if not tree_pack(G, 6 * k - 2):
            raise HypothesisError(f"graph is not {6 * k - 2}-tree-connected", clause="tree-connectivity")
        _check_compat(G, fr)
    if k == 1:
        return _ensure(half_factor(G), fr, fi, [x + 1 for x in fi], "f-or-f-plus-k factor")
    special = [v for v in range(G.n) if d[v] % 2 == 0 and 2 * fi[v] in (d[v], d[v] - 2 * k)]
    if not special:
        return high_tree_f_factor(G, fr, z=0, check=False, budget=budget)
    z = special[0]
    if 2 * fi[z] == d[z]:
        return high_tree_f_factor(G, fr, z=z, check=False, budget=budget)
    # f(z) = d(z)/2 - k: build the factor for d - f and take its complement
    fc = ResidueMap(k, [d[v] - fi[v] for v in range(G.n)])
    return high_tree_f_factor(G, fc, z=z, check=False, budget=budget).complement()


def mod2_18_edge_eulerian(G: Multigraph, check: bool = True, budget: int = DEFAULT_BUDGET) -> Factor:
    """Degrees in ``{d/2 - 2, d/2 + 2}`` on a non-bipartite 18-edge-connected
    Eulerian graph of even size."""
    d = G.degrees()
    if any(x % 2 for x in d):
        raise HypothesisError("graph is not Eulerian", clause="eulerian")
    if G.m % 2:
        raise HypothesisError("graph has odd size", clause="even-size")
    if G.is_bipartite():
        raise HypothesisError("graph is bipartite", clause="non-bipartite")
    if check and not is_edge_connected(G, 18):
        raise HypothesisError("graph is not 18-edge-connected", clause="edge-connectivity")
    f = ResidueMap(4, [x // 2 + 2 for x in d])
    H = general_f_factor(G, f, check=False, budget=budget)
    bad = [v for v in range(G.n) if H.degree(v) not in (d[v] // 2 - 2, d[v] // 2 + 2)]
    if bad:  # pragma: no cover
        raise RuntimeError("degrees out of {d/2 - 2, d/2 + 2}")
    return H
