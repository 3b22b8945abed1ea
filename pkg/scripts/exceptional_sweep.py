"""Eulerian graphs of odd size with f = d/2 (mod k): count how often a factor
with |d_H - d/2| < k exists (never, by a parity count) next to the bound the
high tree-connectivity engine reaches on the same graphs multiplied up to
(6k-2)-tree-connectivity."""

import argparse
from dataclasses import dataclass

from modfactor import oracle
from modfactor.connectivity import tree_connectivity
from modfactor.factor import high_tree_f_factor, is_exceptional
from modfactor.generators import gen_eulerian
from modfactor.graph import ResidueMap


@dataclass
class SweepConfig:
    k: int = 3
    instances: int = 10
    max_edges: int = 16


def run(cfg: SweepConfig) -> None:
    k, seen, seed = cfg.k, 0, 0
    while seen < cfg.instances:
        seed += 1
        G = gen_eulerian(3 + seed % 3, seed % 3, seed=seed, odd_size=True)
        if G.m > cfg.max_edges:
            continue
        d = G.degrees()
        f = ResidueMap(k, [x // 2 for x in d])
        if not is_exceptional(G, f):
            continue
        seen += 1
        tight = oracle.enum_factors(
            G, first=True, vertex_ok=lambda v, x: (x - f[v]) % k == 0,
            lower=[x // 2 - k + 1 for x in d], upper=[x // 2 + k - 1 for x in d],
        )
        # odd multiple keeps the size odd and every degree even
        t = next(t for t in range(1, 99, 2) if tree_connectivity(G.multiplied(t)) >= 6 * k - 2)
        Gt = G.multiplied(t)
        dt = Gt.degrees()
        ft = ResidueMap(k, [x // 2 for x in dt])
        H = high_tree_f_factor(Gt, ft)
        dev = [h - x // 2 for h, x in zip(H.degrees(), dt)]
        print(f"seed {seed:>3} |E|={G.m:>2} tight factor: {'yes' if tight else 'no '}  "
              f"x{t} copies: deviations from d/2 in [{min(dev)}, {max(dev)}]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-k", type=int, default=3)
    ap.add_argument("--instances", type=int, default=10)
    a = ap.parse_args()
    run(SweepConfig(a.k, a.instances))
