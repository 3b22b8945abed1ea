"""Theorem audits: check hypotheses, run the engine, then re-check the
conclusion with the brute-force checkers.

Theorem ids are stable strings (see ``THEOREMS``); each entry also knows how
to generate seeded instances that satisfy its hypotheses.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from . import oracle
from .bipartite import max_bipartite_factor
from .compat import compatible_all, compatible_wrt
from .connectivity import (
    bipartite_index,
    is_edge_connected,
    is_essentially_edge_connected,
    tree_pack,
)
from .errors import HypothesisError, Infeasible, InputError, LimitExceeded, SolverGaveUp
from .factor import (
    bipartite_f_factor,
    bipartite_f_factor_tree,
    eulerian_half_factor,
    general_f_factor,
    high_tree_f_factor,
    near_bipartite_f_factor,
    tree_bound,
)
from .generators import (
    gen_compatible_f,
    gen_edge_connected,
    gen_eulerian,
    gen_random_multigraph,
    gen_regular_bipartite,
    gen_tree_connected,
)
from .graph import Bipartition, Factor, Multigraph, ResidueMap, residue_normalize
from .parity import even_factor, mod2_bounded_factor
from .regular import (
    bipartite_modk_regular_factor,
    is_prime_power,
    konig_scale,
    mod_q_regular_subgraph,
    modk_regular_nondiv2k,
)


@dataclass
class AuditInstance:
    graph: Multigraph
    f: ResidueMap | None = None
    k: int | None = None
    params: dict[str, Any] = field(default_factory=dict)


@dataclass
class AuditReport:
    theorem: str
    status: str  # pass | hypothesis-fail | fail | gave-up
    clause: str | None = None
    detail: str = ""
    degrees: list[int] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TheoremEntry:
    summary: str
    hypotheses: Callable[[AuditInstance], list[tuple[str, bool]]]
    run: Callable[[AuditInstance], Factor]
    conclude: Callable[[AuditInstance, Factor], list[str]]
    generate: Callable[[int, int], AuditInstance]
    default_k: int = 2


def _k(inst: AuditInstance) -> int:
    if inst.k is not None:
        return inst.k
    if inst.f is not None:
        return inst.f.modulus
    raise InputError("instance needs k or f")


def _f(inst: AuditInstance) -> ResidueMap:
    if inst.f is None:
        raise InputError("instance needs a residue map f")
    return inst.f


def _lazy(*checks):
    """Hypotheses evaluated in order, stopping at the first failure."""

    def hyp(inst):
        out = []
        for clause, test in checks:
            ok = bool(test(inst))
            out.append((clause, ok))
            if not ok:
                break
        return out

    return hyp


def _compat_exact(inst) -> bool:
    G, f = inst.graph, _f(inst)
    if G.n <= oracle.MAX_BIPARTITION_N:
        return oracle.oracle_compatible(G, f)
    return compatible_all(G, f, "sufficient").verdict is True


def _compat_bip(inst) -> bool:
    G = inst.graph
    B = Bipartition.from_colors(G.two_coloring())
    return compatible_wrt(G, _f(inst), B)[0]


def _window(G: Multigraph, k: int):
    d = G.degrees()
    return [x // 2 - (k - 1) for x in d], [(x + 1) // 2 + (k - 1) for x in d]


def _check_window(inst, H, lower, upper) -> list[str]:
    return oracle.check_factor(inst.graph, H.edge_ids, _f(inst), lower, upper)


def _bip_gen(k: int, seed: int, lam: int) -> AuditInstance:
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    G = gen_edge_connected(n, lam, bipartite=True, seed=seed)
    return AuditInstance(G, gen_compatible_f(G, k, seed), k)


# --------------------------------------------------------------------------
# entries


def _mod2_edge() -> TheoremEntry:
    def gen(seed, k):
        rng = random.Random(seed)
        G = gen_edge_connected(rng.randint(2, 9), 2, seed=seed)
        return AuditInstance(G, gen_compatible_f(G, 2, seed), 2)

    def conclude(inst, H):
        d = inst.graph.degrees()
        return _check_window(inst, H, [x // 2 - 1 for x in d], [(x + 1) // 2 + 1 for x in d])

    return TheoremEntry(
        "2-edge-connected: f-factor mod 2 with floor(d/2)-1 <= d_H <= ceil(d/2)+1",
        _lazy(
            ("modulus-2", lambda i: _f(i).modulus == 2),
            ("parity", lambda i: _f(i).total() % 2 == 0),
            ("2-edge-connected", lambda i: is_edge_connected(i.graph, 2)),
        ),
        lambda i: mod2_bounded_factor(i.graph, _f(i), check=False),
        conclude,
        gen,
    )


def _cor_bipartite() -> TheoremEntry:
    return TheoremEntry(
        "bipartite (3k-3)-edge-connected: f-factor mod k within k of d/2",
        _lazy(
            ("bipartite", lambda i: i.graph.is_bipartite()),
            ("compatibility", _compat_bip),
            ("edge-connectivity", lambda i: is_edge_connected(i.graph, 3 * _k(i) - 3)),
        ),
        lambda i: bipartite_f_factor(i.graph, _f(i), check=False),
        lambda i, H: _check_window(i, H, *_window(i.graph, _k(i))),
        lambda seed, k: _bip_gen(k, seed, 3 * k - 3),
        default_k=3,
    )


def _essential() -> TheoremEntry:
    def degree_ok(i):
        k, f, d = _k(i), _f(i), i.graph.degrees()
        return all(d[v] >= 2 * k - 1 + residue_normalize(f[v], k) for v in range(i.graph.n))

    def ess(i):
        try:
            return i.graph.is_connected() and is_essentially_edge_connected(i.graph, 3 * _k(i) - 3)
        except LimitExceeded:
            return False

    def gen(seed, k):
        rng = random.Random(seed)
        n = rng.randint(4, 10)
        G = gen_edge_connected(n, 2 * k - 1, bipartite=True, essential_lambda=3 * k - 3, seed=seed)
        inst = AuditInstance(G, gen_compatible_f(G, k, seed), k)
        if not degree_ok(inst):
            inst.f = ResidueMap.constant(G.n, k, 0)
        return inst

    return TheoremEntry(
        "bipartite essentially (3k-3)-edge-connected with large degrees",
        _lazy(
            ("bipartite", lambda i: i.graph.is_bipartite()),
            ("compatibility", _compat_bip),
            ("degree", degree_ok),
            ("essential-connectivity", ess),
        ),
        lambda i: bipartite_f_factor(i.graph, _f(i), check=False),
        lambda i, H: _check_window(i, H, *_window(i.graph, _k(i))),
        gen,
        default_k=3,
    )


def _two_factors() -> TheoremEntry:
    def conclude(i, H):
        c = tree_bound(_k(i))
        d = i.graph.degrees()
        return _check_window(i, H, [c] * i.graph.n, [x - c for x in d])

    def gen(seed, k):
        rng = random.Random(seed)
        G = gen_tree_connected(rng.randint(2, 7), 2 * k - 2, seed=seed, noise=rng.randint(0, 4), bipartite=True)
        return AuditInstance(G, gen_compatible_f(G, k, seed), k)

    return TheoremEntry(
        "bipartite (2k-2)-tree-connected: ceil(k/2-1) <= d_H <= d - ceil(k/2-1)",
        _lazy(
            ("bipartite", lambda i: i.graph.is_bipartite()),
            ("k>=3", lambda i: _k(i) >= 3),
            ("nontrivial", lambda i: i.graph.n >= 2 and i.graph.m > 0),
            ("compatibility", _compat_bip),
            ("tree-connectivity", lambda i: bool(tree_pack(i.graph, 2 * _k(i) - 2))),
        ),
        lambda i: bipartite_f_factor_tree(i.graph, _f(i), check=False),
        conclude,
        gen,
        default_k=3,
    )


def _max_bipartite() -> TheoremEntry:
    def m_of(i):
        return int(i.params.get("m", 1))

    def conclude(i, H):
        G = i.graph
        bad = []
        if G.n > oracle.MAX_BIPARTITION_N:
            raise LimitExceeded("cut check needs n within the oracle cap")
        if not oracle.is_bipartite_edge_set(G, H.edge_ids):
            bad.append("factor is not bipartite")
        for A in oracle.iter_bipartitions(G.n):
            if len(A) == G.n:
                continue
            dH = sum(1 for e in H.edge_ids if (G.edges[e][0] in A) != (G.edges[e][1] in A))
            dG = oracle.cut_edges(G, A)
            if 2 * dH < dG:
                bad.append(f"cut {sorted(A)}: {dH} < ceil({dG}/2)")
                break
        if G.n <= oracle.MAX_PARTITION_N:
            ok = oracle.oracle_is_tree_connected(G, H.edge_ids, m_of(i))
        else:
            ok = bool(tree_pack(Multigraph(G.n, [G.edges[e] for e in sorted(H.edge_ids)]), m_of(i)))
        if not ok:
            bad.append(f"factor is not {m_of(i)}-tree-connected")
        return bad

    def gen(seed, k):
        rng = random.Random(seed)
        m = rng.choice([1, 2])
        G = gen_tree_connected(rng.randint(2, 7), 2 * m, seed=seed, noise=rng.randint(0, 3))
        return AuditInstance(G, None, None, {"m": m})

    return TheoremEntry(
        "2m-tree-connected: maximum-cut factor is m-tree-connected and keeps half of every cut",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("tree-connectivity", lambda i: bool(tree_pack(i.graph, 2 * m_of(i)))),
        ),
        lambda i: max_bipartite_factor(i.graph).factor,
        conclude,
        gen,
    )


def _near_bipartite() -> TheoremEntry:
    def odd_z(G):
        return next((v for v in range(G.n) if G.degree(v) % 2), None)

    def run(i):
        G = i.graph
        B = bipartite_index(G).bipartition
        return near_bipartite_f_factor(G, _f(i), B, Factor.full(G), Factor(G), z=odd_z(G), check=False)

    def conclude(i, H):
        lo, hi = _window(i.graph, _k(i))
        z = odd_z(i.graph)
        if z is not None:
            hi[z] -= 1
        return _check_window(i, H, lo, hi)

    def gen(seed, k):
        rng = random.Random(seed)
        n = rng.randint(3, 9)
        G = gen_edge_connected(n, 3 * k - 3, bipartite=True, seed=seed)
        col = G.two_coloring()
        extra = []
        for _ in range(rng.randint(0, k - 1)):
            side = rng.choice([0, 1])
            vs = [v for v in range(n) if col[v] == side]
            if len(vs) >= 2:
                extra.append(tuple(rng.sample(vs, 2)))
        G = Multigraph(n, list(G.edges) + extra)
        return AuditInstance(G, gen_compatible_f(G, k, seed), k)

    return TheoremEntry(
        "bi(G) <= k-1 and (3k-3)-edge-connected: f-factor within k of d/2",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("bipartite-index", lambda i: bipartite_index(i.graph).value <= _k(i) - 1),
            ("compatibility", _compat_exact),
            ("edge-connectivity", lambda i: is_edge_connected(i.graph, 3 * _k(i) - 3)),
        ),
        run,
        conclude,
        gen,
        default_k=3,
    )


def _general(lam_of: Callable[[int], int], summary: str, via_factor: bool) -> TheoremEntry:
    def conclude(i, H):
        k = _k(i)
        d = i.graph.degrees()
        return _check_window(i, H, [x // 2 - (k - 1) for x in d], [x // 2 + k for x in d])

    def connectivity(i):
        k = _k(i)
        if via_factor:
            bf = max_bipartite_factor(i.graph)
            return is_edge_connected(i.graph.edge_subgraph(bf.factor.edge_ids), 3 * k - 3)
        return is_edge_connected(i.graph, lam_of(k))

    def gen(seed, k):
        rng = random.Random(seed)
        G = gen_edge_connected(rng.randint(3, 9), max(lam_of(k), 1), seed=seed)
        return AuditInstance(G, gen_compatible_f(G, k, seed), k)

    return TheoremEntry(
        summary,
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("compatibility", _compat_exact),
            ("edge-connectivity", connectivity),
        ),
        lambda i: general_f_factor(i.graph, _f(i), check=False),
        conclude,
        gen,
    )


def _high_tree() -> TheoremEntry:
    def exceptional(G, f):
        d = G.degrees()
        k = f.modulus
        return (
            all(x % 2 == 0 for x in d)
            and G.m % 2 == 1
            and k % 2 == 1
            and all((f[v] - d[v] // 2) % k == 0 for v in range(G.n))
        )

    def conclude(i, H):
        G, f, k = i.graph, _f(i), _k(i)
        lo, hi = _window(G, k)
        bad = oracle.check_factor(G, H.edge_ids, f, None, hi)
        dH = oracle.degrees_of(G, H.edge_ids)
        low = [v for v in range(G.n) if dH[v] < lo[v]]
        if exceptional(G, f):
            d = G.degrees()
            if len(low) > 1 or any(dH[v] < (d[v] + 1) // 2 - k for v in low):
                bad.append(f"lower bound broken at {low}")
        elif low:
            bad.append(f"lower bound broken at {low}")
        return bad

    def gen(seed, k):
        rng = random.Random(seed)
        G = gen_tree_connected(rng.randint(2, 6), 6 * k - 2, seed=seed, noise=rng.randint(0, 6))
        return AuditInstance(G, gen_compatible_f(G, k, seed), k)

    return TheoremEntry(
        "(6k-2)-tree-connected: f-factor with the sharp upper bound ceil(d/2)+(k-1)",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("k>=2", lambda i: _k(i) >= 2),
            ("compatibility", _compat_exact),
            ("tree-connectivity", lambda i: bool(tree_pack(i.graph, 6 * _k(i) - 2))),
        ),
        lambda i: high_tree_f_factor(i.graph, _f(i), check=False),
        conclude,
        gen,
    )


def _euler_half() -> TheoremEntry:
    def conclude(i, H):
        G = i.graph
        z = int(i.params.get("z", 0))
        d = G.degrees()
        target = [x // 2 for x in d]
        target[z] += G.m % 2
        return oracle.check_factor(G, H.edge_ids, None, target, target)

    def gen(seed, k):
        rng = random.Random(seed)
        n = rng.randint(3, 9)
        G = gen_eulerian(n, rng.randint(0, 4), seed=seed, mult=rng.choice([1, 2]))
        return AuditInstance(G, None, None, {"z": rng.randrange(n)})

    return TheoremEntry(
        "connected Eulerian: d_H = d/2 off z, and d(z)/2 + (|E| mod 2) at z",
        _lazy(
            ("eulerian", lambda i: i.graph.is_eulerian() and i.graph.is_connected()),
        ),
        lambda i: eulerian_half_factor(i.graph, int(i.params.get("z", 0))),
        conclude,
        gen,
    )


def _regular_conclusion(i, H, residue: Callable[[int], bool]) -> list[str]:
    G = i.graph
    d = oracle.degrees_of(G, H.edge_ids)
    bad = [f"degree {d[v]} at {v}" for v in range(G.n) if d[v] <= 0 or not residue(d[v])]
    if G.n <= oracle.MAX_BIPARTITION_N and not oracle.is_bipartite_edge_set(G, H.edge_ids):
        bad.append("factor is not bipartite")
    return bad


def _ess_ok(G, lam):
    try:
        return is_essentially_edge_connected(G, lam)
    except LimitExceeded:
        return False


def _regular() -> TheoremEntry:
    def lam(i):
        k = _k(i)
        return (2 * k, 3 * k - 3) if i.graph.is_bipartite() else (4 * k - 1, 6 * k - 7)

    def gen(seed, k):
        rng = random.Random(seed)
        G = gen_edge_connected(rng.randint(4, 9), 4 * k - 1, essential_lambda=6 * k - 7, seed=seed)
        return AuditInstance(G, None, k)

    return TheoremEntry(
        "(4k-1)-edge-connected essentially (6k-7): bipartite modulo k-regular factor",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("edge-connectivity", lambda i: is_edge_connected(i.graph, lam(i)[0])),
            ("essential-connectivity", lambda i: _ess_ok(i.graph, lam(i)[1])),
        ),
        lambda i: bipartite_modk_regular_factor(i.graph, _k(i), check=False),
        lambda i, H: _regular_conclusion(i, H, lambda x: x % _k(i) == 0),
        gen,
    )


def _nondiv2k() -> TheoremEntry:
    def lam(i):
        k = _k(i)
        return (5 * k - 1, 6 * k - 3) if i.graph.is_bipartite() else (10 * k - 3, 12 * k - 7)

    def gen(seed, k):
        rng = random.Random(seed)
        n = 2 * rng.randint(2, 4)
        G = gen_edge_connected(n, 5 * k - 1, bipartite=True, essential_lambda=6 * k - 3, seed=seed)
        return AuditInstance(G, None, k)

    return TheoremEntry(
        "even order, high (essential) edge connectivity: degrees k modulo 2k",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("even-order", lambda i: i.graph.n % 2 == 0),
            ("edge-connectivity", lambda i: is_edge_connected(i.graph, lam(i)[0])),
            ("essential-connectivity", lambda i: _ess_ok(i.graph, lam(i)[1])),
        ),
        lambda i: modk_regular_nondiv2k(i.graph, _k(i), check=False),
        lambda i, H: _regular_conclusion(i, H, lambda x: x % (2 * _k(i)) == _k(i)),
        gen,
    )


def _afk() -> TheoremEntry:
    def run(i):
        S = mod_q_regular_subgraph(i.graph, _k(i))
        if S is None:
            raise Infeasible("no modulo q-regular subgraph found")
        return S

    def conclude(i, H):
        d = oracle.degrees_of(i.graph, H.edge_ids)
        bad = [] if H.edge_ids else ["empty subgraph"]
        return bad + [f"degree {d[v]} at {v}" for v in range(i.graph.n) if d[v] % _k(i)]

    def gen(seed, k):
        rng = random.Random(seed)
        n = rng.randint(2, 9)
        return AuditInstance(gen_random_multigraph(n, (k - 1) * n + 1 + rng.randint(0, 3), seed), None, k)

    return TheoremEntry(
        "|E| > (q-1)n, q a prime power: a modulo q-regular subgraph",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("prime-power", lambda i: is_prime_power(_k(i))),
            ("size", lambda i: i.graph.m > (_k(i) - 1) * i.graph.n),
        ),
        run,
        conclude,
        gen,
        default_k=3,
    )


def _konig() -> TheoremEntry:
    def q_of(i):
        return int(i.params["q"])

    def fvals(i):
        return [x // q_of(i) for x in i.graph.degrees()]

    def conclude(i, H):
        f = fvals(i)
        d = oracle.degrees_of(i.graph, H.edge_ids)
        return [f"degree {d[v]} at {v}" for v in range(i.graph.n) if d[v] != _k(i) * f[v]]

    def gen(seed, k):
        rng = random.Random(seed)
        q = rng.randint(max(k, 2), 6)
        return AuditInstance(gen_regular_bipartite(rng.randint(1, 8), q, seed), None, k, {"q": q})

    return TheoremEntry(
        "bipartite with d = q f and k <= q: a factor with d_F = k f",
        _lazy(
            ("bipartite", lambda i: i.graph.is_bipartite()),
            ("k<=q", lambda i: 0 <= _k(i) <= q_of(i)),
            ("divisible", lambda i: all(x % q_of(i) == 0 for x in i.graph.degrees())),
        ),
        lambda i: konig_scale(i.graph, fvals(i), q_of(i), _k(i)),
        conclude,
        gen,
    )


def _even_factor() -> TheoremEntry:
    def conclude(i, H):
        d = oracle.degrees_of(i.graph, H.edge_ids)
        return [f"degree {x} at {v}" for v, x in enumerate(d) if x <= 0 or x % 2]

    def gen(seed, k):
        rng = random.Random(seed)
        return AuditInstance(gen_edge_connected(rng.randint(2, 9), 3, seed=seed), None, 2)

    return TheoremEntry(
        "2-edge-connected loopless with minimum degree 3: an even factor",
        _lazy(
            ("loopless", lambda i: not i.graph.has_loops),
            ("min-degree", lambda i: i.graph.min_degree() >= 3),
            ("2-edge-connected", lambda i: is_edge_connected(i.graph, 2)),
        ),
        lambda i: even_factor(i.graph, check=False),
        conclude,
        gen,
    )


THEOREMS: dict[str, TheoremEntry] = {
    "Factor:modulo2:thm:2:edge": _mod2_edge(),
    "cor:bipartite:factor": _cor_bipartite(),
    "thm:essentially:factor:k": _essential(),
    "thm:two-factors:modulo": _two_factors(),
    "thm:bipartite:factor": _max_bipartite(),
    "cor:bi:at-most:k-1": _near_bipartite(),
    "thm:3k-3:non-bipartite": _general(lambda k: 6 * k - 7, "maximum bipartite factor (3k-3)-edge-connected", True),
    "cor:non-bipartite:6k-7": _general(lambda k: 6 * k - 7, "(6k-7)-edge-connected general graph", False),
    "thm:high-enough-tree-connectivity": _high_tree(),
    "cor:Eulerian:1/2": _euler_half(),
    "thm:regular:essentially": _regular(),
    "thm:moduloregular:edgeversion": _nondiv2k(),
    "thm:AFK:k-subgraph": _afk(),
    "lem:kf-factor": _konig(),
    "thm:evenfactor:Eulerian": _even_factor(),
}


def theorem_audit(instance: AuditInstance, theorem_id: str) -> AuditReport:
    if theorem_id not in THEOREMS:
        raise InputError(f"unknown theorem id {theorem_id!r}")
    entry = THEOREMS[theorem_id]
    try:
        for clause, ok in entry.hypotheses(instance):
            if not ok:
                return AuditReport(theorem_id, "hypothesis-fail", clause, "hypothesis not met")
        H = entry.run(instance)
    except HypothesisError as exc:
        return AuditReport(theorem_id, "hypothesis-fail", exc.clause, str(exc))
    except SolverGaveUp as exc:
        return AuditReport(theorem_id, "gave-up", None, str(exc))
    except Infeasible as exc:
        return AuditReport(theorem_id, "fail", "engine", str(exc))
    problems = entry.conclude(instance, H)
    degrees = list(H.degrees())
    if problems:
        return AuditReport(theorem_id, "fail", "conclusion", "; ".join(problems[:5]), degrees)
    return AuditReport(theorem_id, "pass", None, "", degrees)


def audit_seeds(theorem_id: str, seeds: int, k: int | None = None, start: int = 0) -> list[AuditReport]:
    """Audit ``seeds`` generated instances (seeds ``start .. start+seeds-1``)."""
    if theorem_id not in THEOREMS:
        raise InputError(f"unknown theorem id {theorem_id!r}")
    entry = THEOREMS[theorem_id]
    kk = entry.default_k if k is None else k
    return [theorem_audit(entry.generate(s, kk), theorem_id) for s in range(start, start + seeds)]
