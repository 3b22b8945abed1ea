"""Runtime of the bipartite and general factor engines as n grows.

Instances come from the seeded generators with the connectivity each engine
needs; every output is re-checked before its time is counted.
"""

import argparse
import statistics
import time
from dataclasses import dataclass, field

from modfactor import oracle
from modfactor.factor import bipartite_f_factor, general_f_factor
from modfactor.generators import gen_compatible_f, gen_edge_connected


@dataclass
class BenchConfig:
    ns: list[int] = field(default_factory=lambda: [6, 10, 14, 18])
    ks: list[int] = field(default_factory=lambda: [2, 3, 4])
    seeds: int = 10


def _time(fn, G, f, k, upper_of):
    t0 = time.perf_counter()
    H = fn(G, f, check=False)
    dt = time.perf_counter() - t0
    d = G.degrees()
    bad = oracle.check_factor(G, H.edge_ids, f, [x // 2 - (k - 1) for x in d], [upper_of(x, k) for x in d])
    if bad:
        raise SystemExit(f"verification failed: {bad[:3]}")
    return dt


def run(cfg: BenchConfig) -> None:
    print(f"{'engine':<10} {'k':>2} {'n':>3} {'median ms':>10} {'max ms':>8}")
    for k in cfg.ks:
        for n in cfg.ns:
            for name, fn, lam, bip, upper_of in (
                ("bipartite", bipartite_f_factor, 3 * k - 3, True, lambda x, k: (x + 1) // 2 + k - 1),
                ("general", general_f_factor, 6 * k - 7, False, lambda x, k: x // 2 + k),
            ):
                times = []
                for s in range(cfg.seeds):
                    G = gen_edge_connected(n, max(lam, 1), bipartite=bip, seed=s)
                    if not bip and G.is_bipartite():
                        continue
                    times.append(_time(fn, G, gen_compatible_f(G, k, s), k, upper_of))
                if times:
                    ms = [1000 * t for t in times]
                    print(f"{name:<10} {k:>2} {n:>3} {statistics.median(ms):>10.2f} {max(ms):>8.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="factor engine timings")
    ap.add_argument("--ns", type=int, nargs="+", default=[6, 10, 14, 18])
    ap.add_argument("--ks", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--seeds", type=int, default=10)
    a = ap.parse_args()
    run(BenchConfig(a.ns, a.ks, a.seeds))
