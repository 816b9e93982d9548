"""Exact volumes of the election polytopes with timings.

    python scripts/volumes_table.py --threads 4 --skip BSt
"""

import argparse
import time
from dataclasses import dataclass, field
from typing import List

from votopes.elections import build_polytope
from votopes.volume import BudgetExceeded, VolumeConfig, compute_volume, format_decimal

EVENTS = ["C", "Q", "E", "F", "T", "K", "BSt", "BSg", "BSgRev"]


@dataclass
class Config:
    threads: int = 1
    symmetrize: str = "auto"
    max_cones: int = 50_000_000
    skip: List[str] = field(default_factory=list)


def main(cfg: Config) -> None:
    vc = VolumeConfig(threads=cfg.threads, symmetrize=cfg.symmetrize, max_cones=cfg.max_cones)
    print(f"{'event':8} {'method':12} {'cones':>10} {'seconds':>8}  decimal   exact")
    for e in EVENTS:
        if e in cfg.skip:
            print(f"{e:8} skipped")
            continue
        t0 = time.perf_counter()
        try:
            r = compute_volume(build_polytope(e), vc)
        except BudgetExceeded as exc:
            print(f"{e:8} over budget: {exc}")
            continue
        dt = time.perf_counter() - t0
        print(f"{e:8} {r.method:12} {r.cone_count:>10} {dt:8.1f}  {format_decimal(r.value):8}  {r.value}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--symmetrize", default="auto", choices=["auto", "on", "off"])
    p.add_argument("--max-cones", type=int, default=50_000_000)
    p.add_argument("--skip", action="append", default=[])
    a = p.parse_args()
    main(Config(a.threads, a.symmetrize, a.max_cones, a.skip))
