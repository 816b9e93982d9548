"""Data of the symmetrized polytopes and their weighted volumes.

    python scripts/symmetrized_table.py
"""

import argparse
import time
from dataclasses import dataclass

from votopes.elections import build_polytope
from votopes.symmetry import detect_symmetry, projected_summary, weighted_volume
from votopes.volume import format_decimal

EVENTS = ["C", "Q", "E", "F", "T", "K", "BSt", "BSg", "BSgRev"]


@dataclass
class Config:
    threads: int = 1
    bsgrev_variants: bool = True


def main(cfg: Config) -> None:
    print(f"{'event':14} {'m':>3} {'vertices':>8} {'supports':>8} {'cones':>7} {'seconds':>8}  volume")
    rows = [(e, "negated") for e in EVENTS]
    if cfg.bsgrev_variants:
        rows.append(("BSgRev", "listed"))
    for e, variant in rows:
        sp = detect_symmetry(build_polytope(e, variant=variant))
        label = e if variant == "negated" else f"{e} ({variant})"
        if sp.is_trivial():
            print(f"{label:14} {sp.m:>3}  no symmetry")
            continue
        s = projected_summary(sp)
        t0 = time.perf_counter()
        v = weighted_volume(sp, threads=cfg.threads)
        dt = time.perf_counter() - t0
        print(f"{label:14} {sp.m:>3} {s['vertices']:>8} {s['supports']:>8} {s['cones']:>7} {dt:8.1f}  "
              f"{format_decimal(v)}  {v}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-variants", action="store_true")
    a = p.parse_args()
    main(Config(a.threads, not a.no_variants))
