"""Command-line interface.

Exit codes: 0 success/true, 1 infeasible/false, 2 hypothesis failure,
3 solver gave up (or an undecided verdict), 4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from . import audit as audit_mod
from .compat import compatible_all
from .connectivity import (
    bipartite_index,
    edge_connectivity,
    essential_edge_connectivity,
    tree_connectivity,
)
from .errors import HypothesisError, Infeasible, InputError, ModFactorError
from .factor import (
    bipartite_f_factor,
    bipartite_f_factor_tree,
    bipartite_f_factor_window,
    general_f_factor,
    high_tree_f_factor,
)
from .formats import emit_graph, read_graph
from .generators import (
    gen_compatible_f,
    gen_edge_connected,
    gen_eulerian,
    gen_regular_bipartite,
    gen_tree_connected,
)
from .graph import Bipartition, Factor, Multigraph, ResidueMap
from .orientation import DegreeWindow, find_p_orientation
from .parity import mod2_bounded_factor
from .regular import bipartite_modk_regular_factor, bipartite_modk_regular_subgraph, modk_regular_nondiv2k

VERDICT_OF_CODE = {1: "infeasible", 2: "hypothesis-failure", 3: "gave-up", 4: "input-error"}


@dataclass
class Outcome:
    verdict: str
    exit_code: int = 0
    message: str = ""
    data: dict[str, Any] = field(default_factory=dict)
    text: str | None = None


def _factor_payload(H: Factor) -> dict:
    return {"edges": H.sorted_ids(), "degrees": list(H.degrees())}


def _bip_payload(B: Bipartition | None) -> dict | None:
    if B is None:
        return None
    return {"X": sorted(B.X), "Y": sorted(B.Y)}


def _need_f(f: ResidueMap | None, k: int | None, G: Multigraph, override: int | None) -> ResidueMap:
    if override is not None:
        if f is None:
            return ResidueMap.constant(G.n, override, 0)
        return ResidueMap(override, f.values)
    if f is None:
        if k is None:
            raise InputError("this command needs k (header or -k) and optionally an f line")
        return ResidueMap.constant(G.n, k, 0)
    return f


def _ints(text: str | None, n: int, name: str) -> list[int]:
    if text is None:
        raise InputError(f"--{name} is required")
    vals = [int(x) for x in text.split(",")]
    if len(vals) == 1:
        vals = vals * n
    if len(vals) != n:
        raise InputError(f"--{name} needs 1 or {n} values")
    return vals


# --------------------------------------------------------------------------
# commands


def cmd_connectivity(args) -> Outcome:
    G, _, _ = read_graph(args.graph)
    data: dict[str, Any] = {"edge_connectivity": edge_connectivity(G) if G.n >= 2 else None}
    if args.essential:
        data["essential_edge_connectivity"] = essential_edge_connectivity(G)
    if args.tree:
        data["tree_connectivity"] = tree_connectivity(G) if G.n >= 2 else None
    text = "\n".join(f"{k}: {v}" for k, v in data.items())
    return Outcome("success", data=data, text=text)


def cmd_bi_index(args) -> Outcome:
    G, _, _ = read_graph(args.graph)
    bi = bipartite_index(G, "lower-bound" if args.bound else "exact")
    data = {"bi": bi.value, "exact": bi.exact, "bipartition": _bip_payload(bi.bipartition)}
    return Outcome("success", data=data, text=f"bi: {bi.value}" + ("" if bi.exact else " (upper estimate)"))


def cmd_compat(args) -> Outcome:
    G, f, k = read_graph(args.graph)
    f = _need_f(f, k, G, args.k)
    rep = compatible_all(G, f, "sufficient" if args.sufficient else "exact")
    data = {"reason": rep.reason, "bipartition": _bip_payload(rep.bipartition)}
    if rep.verdict is None:
        return Outcome("unknown", 3, rep.reason, data, f"unknown: {rep.reason}")
    if rep.verdict:
        return Outcome("true", 0, rep.reason, data, f"compatible: {rep.reason}")
    return Outcome("false", 1, rep.reason, data, f"not compatible: {rep.reason}")


def cmd_orient(args) -> Outcome:
    G, f, k = read_graph(args.graph)
    f = _need_f(f, k, G, args.k)
    if args.p_from_f:
        colors = G.two_coloring()
        if colors is None:
            raise InputError("--p-from-f needs a bipartite graph")
        d = G.degrees()
        p = ResidueMap(f.modulus, [f[v] if colors[v] == 0 else d[v] - f[v] for v in range(G.n)])
    else:
        p = f
    window = None
    if args.window:
        a, b = (int(x) for x in args.window.split(","))
        window = DegreeWindow.around_half(G, a, b)
    pins = {}
    for item in args.pin or []:
        v, t = item.split("=")
        pins[int(v)] = int(t)
    D = find_p_orientation(G, p, window, pins=pins)
    data = {"tails": [D.tail(e) for e in range(G.m)], "out_degrees": list(D.out_degrees())}
    return Outcome("success", data=data, text="out-degrees: " + " ".join(map(str, D.out_degrees())))


def cmd_factor(args) -> Outcome:
    G, f, k = read_graph(args.graph)
    f = _need_f(f, k, G, args.k)
    check = not args.force
    kind = args.kind
    if kind == "mod2":
        if f.modulus != 2:
            raise InputError("mod2 needs k = 2")
        H = mod2_bounded_factor(G, f, args.z, args.target, check=check)
    elif kind == "bipartite":
        H = bipartite_f_factor(G, f, args.z, args.target, check=check)
    elif kind == "general":
        H = general_f_factor(G, f, check=check)
    elif kind == "hightree":
        H = high_tree_f_factor(G, f, z=args.z, check=check)
    elif kind == "window":
        s = _ints(args.s, G.n, "s")
        s0 = _ints(args.s0, G.n, "s0")
        l0 = _ints(args.l0, G.n, "l0")
        H = bipartite_f_factor_window(G, f, s, s0, l0, z=args.z, check=check)
    else:
        H = bipartite_f_factor_tree(G, f, check=check)
    data = _factor_payload(H)
    return Outcome("success", data=data, text="degrees: " + " ".join(map(str, data["degrees"])))


def cmd_regular(args) -> Outcome:
    G, _, k = read_graph(args.graph)
    kk = args.k if args.k is not None else k
    if kk is None:
        raise InputError("regular needs -k")
    check = not args.force
    if args.kind == "factor":
        H = bipartite_modk_regular_factor(G, kk, route=args.route, check=check)
    elif args.kind == "nondiv2k":
        H = modk_regular_nondiv2k(G, kk, check=check)
    else:
        H = bipartite_modk_regular_subgraph(G, kk)
    data = _factor_payload(H)
    return Outcome("success", data=data, text="degrees: " + " ".join(map(str, data["degrees"])))


def cmd_gen(args) -> Outcome:
    if args.family == "edge":
        G = gen_edge_connected(args.n, args.lam, args.bipartite, args.essential, seed=args.seed)
    elif args.family == "tree":
        G = gen_tree_connected(args.n, args.trees, seed=args.seed, noise=args.noise, bipartite=args.bipartite)
    elif args.family == "eulerian":
        G = gen_eulerian(args.n, args.cycles, seed=args.seed)
    else:
        G = gen_regular_bipartite(args.n, args.q, seed=args.seed)
    f = gen_compatible_f(G, args.k, seed=args.seed) if args.k is not None else None
    text = emit_graph(G, f).rstrip("\n")
    return Outcome("success", data={"graph": text}, text=text)


def cmd_audit(args) -> Outcome:
    reports = audit_mod.audit_seeds(args.theorem, args.seeds, args.k, args.start)
    passed = sum(r.passed for r in reports)
    bad = [r for r in reports if not r.passed]
    data = {"theorem": args.theorem, "passed": passed, "total": len(reports), "reports": [r.to_dict() for r in reports]}
    lines = [f"{args.theorem}: {passed}/{len(reports)} pass"]
    lines += [f"  seed {args.start + reports.index(r)}: {r.status} ({r.clause}) {r.detail}" for r in bad[:10]]
    code = 0 if not bad else 1
    return Outcome("true" if not bad else "false", code, lines[0], data, "\n".join(lines))


def cmd_bench(args) -> Outcome:
    rows = []
    for k in args.ks:
        t0 = time.perf_counter()
        for s in range(args.seeds):
            G = gen_edge_connected(8, 3 * k - 3, bipartite=True, seed=s)
            bipartite_f_factor(G, gen_compatible_f(G, k, s), check=False)
        rows.append({"op": "bipartite_f_factor", "k": k, "seconds": round(time.perf_counter() - t0, 4)})
        t0 = time.perf_counter()
        for s in range(args.seeds):
            G = gen_edge_connected(7, max(6 * k - 7, 1), seed=s)
            general_f_factor(G, gen_compatible_f(G, k, s), check=False)
        rows.append({"op": "general_f_factor", "k": k, "seconds": round(time.perf_counter() - t0, 4)})
    text = "\n".join(f"{r['op']:<20} k={r['k']}  {r['seconds']:.3f}s" for r in rows)
    return Outcome("success", data={"rows": rows, "seeds": args.seeds}, text=text)


# --------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modfactor", description="Modulo-k factors of multigraphs.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_, kinds=None):
        sp = sub.add_parser(name, help=help_)
        if kinds:
            sp.add_argument("kind", choices=kinds)
        sp.add_argument("graph", help="graph file, or - for stdin")
        sp.add_argument("-k", type=int, default=None, help="override the modulus")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    sp = graph_cmd("connectivity", cmd_connectivity, "edge / essential / tree connectivity")
    sp.add_argument("--essential", action="store_true")
    sp.add_argument("--tree", action="store_true")

    sp = graph_cmd("bi-index", cmd_bi_index, "bipartite index")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--bound", action="store_true")

    sp = graph_cmd("compat", cmd_compat, "compatibility of f")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--sufficient", action="store_true")

    sp = graph_cmd("orient", cmd_orient, "p-orientation modulo k")
    sp.add_argument("--p-from-f", action="store_true", help="p = f on X and d - f on Y")
    sp.add_argument("--window", help="a,b for floor(d/2)-a <= d+ <= ceil(d/2)+b")
    sp.add_argument("--pin", action="append", help="v=t fixes the out-degree of v")

    sp = graph_cmd("factor", cmd_factor, "f-factor modulo k", ["mod2", "bipartite", "general", "hightree", "window", "tree"])
    sp.add_argument("--z", type=int, default=None)
    sp.add_argument("--target", type=int, default=None)
    sp.add_argument("--force", action="store_true", help="skip hypothesis checks")
    sp.add_argument("--s")
    sp.add_argument("--s0")
    sp.add_argument("--l0")

    sp = graph_cmd("regular", cmd_regular, "modulo k-regular factors and subgraphs", ["factor", "nondiv2k", "subgraph"])
    sp.add_argument("--route", choices=["edge", "tree"], default="edge")
    sp.add_argument("--force", action="store_true")

    sp = sub.add_parser("gen", help="seeded instance generation")
    sp.add_argument("family", choices=["edge", "tree", "eulerian", "regular-bipartite"])
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--lam", type=int, default=0)
    sp.add_argument("--essential", type=int, default=None)
    sp.add_argument("--bipartite", action="store_true")
    sp.add_argument("--trees", type=int, default=1)
    sp.add_argument("--noise", type=int, default=0)
    sp.add_argument("--cycles", type=int, default=2)
    sp.add_argument("-q", type=int, default=3)
    sp.add_argument("-k", type=int, default=None, help="also emit a compatible f modulo k")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("audit", help="audit a theorem on generated instances")
    sp.add_argument("--theorem", required=True, choices=sorted(audit_mod.THEOREMS))
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("-k", type=int, default=None)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("bench", help="time the main engines")
    sp.add_argument("--seeds", type=int, default=10)
    sp.add_argument("--ks", type=int, nargs="+", default=[2, 3, 4])
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_bench)
    return p


def run(argv: list[str] | None = None) -> tuple[Outcome, bool]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = 0 if exc.code in (0, None) else 4
        if code == 0:
            return Outcome("success", 0, ""), False
        return Outcome("input-error", code, "bad arguments"), False
    try:
        out = args.fn(args)
    except ModFactorError as exc:
        data = {}
        if isinstance(exc, HypothesisError):
            data["clause"] = exc.clause
        if isinstance(exc, Infeasible) and exc.certificate is not None:
            cert = exc.certificate
            data["certificate"] = sorted(cert) if isinstance(cert, (set, frozenset)) else repr(cert)
        out = Outcome(VERDICT_OF_CODE[exc.exit_code], exc.exit_code, str(exc), data)
    except ValueError as exc:
        out = Outcome("input-error", 4, str(exc))
    out.data.setdefault("command", args.command)
    return out, bool(getattr(args, "json", False))


def main(argv: list[str] | None = None) -> int:
    out, as_json = run(argv)
    if as_json:
        payload = {"command": out.data.pop("command", None), "verdict": out.verdict, "exit_code": out.exit_code,
                   "message": out.message, "data": out.data}
        print(json.dumps(payload, sort_keys=True))
    else:
        if out.text is not None:
            print(out.text)
        elif out.message:
            print(f"{out.verdict}: {out.message}", file=sys.stderr if out.exit_code else sys.stdout)
    return out.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
