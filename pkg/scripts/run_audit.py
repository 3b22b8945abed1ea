"""Audit every registered theorem on a block of generated seeds and print a
pass table.  Exit status 1 if any instance fails.

    python scripts/run_audit.py --seeds 50
"""

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass

from modfactor.audit import THEOREMS, audit_seeds


@dataclass
class AuditConfig:
    seeds: int = 20
    start: int = 0
    k: int | None = None
    only: str | None = None
    json_out: str | None = None


def main(cfg: AuditConfig) -> int:
    rows = []
    for tid in sorted(THEOREMS):
        if cfg.only and cfg.only not in tid:
            continue
        t0 = time.perf_counter()
        reports = audit_seeds(tid, cfg.seeds, cfg.k, cfg.start)
        status = Counter(r.status for r in reports)
        rows.append({"theorem": tid, "seconds": round(time.perf_counter() - t0, 3), **status})
        print(f"{tid:<36} {status.get('pass', 0):>4}/{len(reports):<4} {rows[-1]['seconds']:>7.2f}s  {dict(status)}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    return 0 if all(r.get("pass", 0) == cfg.seeds for r in rows) else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("-k", type=int, default=None)
    ap.add_argument("--only", help="substring filter on theorem ids")
    ap.add_argument("--json-out")
    a = ap.parse_args()
    sys.exit(main(AuditConfig(a.seeds, a.start, a.k, a.only, a.json_out)))
