"""Ehrhart series of the Condorcet winner polytope and its closure.

Prints both numerators over (1-t)(1-t^2)^14(1-t^4)^9, the reciprocity
shift, and checks the quasipolynomial against the closed formula.

    python scripts/ehrhart_condorcet.py --threads 4
"""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from votopes.ehrhart import (
    SeriesConfig,
    ehrhart_series,
    odd_branch_polynomial,
    pcw_eval,
    quasipolynomial,
    reciprocity_shift,
    reciprocity_transform,
)
from votopes.elections import build_polytope

DENOMINATOR = (1,) + (2,) * 14 + (4,) * 9


@dataclass
class Config:
    event: str = "C"
    threads: int = 1


def main(cfg: Config) -> None:
    t0 = time.perf_counter()
    res = ehrhart_series(build_polytope(cfg.event), config=SeriesConfig(threads=cfg.threads))
    print(f"series computed in {time.perf_counter() - t0:.1f} s")
    closed, semi = res["closed"], res["semiopen"]
    for name, s in (("closure", closed), ("semiopen", semi)):
        try:
            num = s.over(DENOMINATOR).numerator
            print(f"{name} numerator over (1-t)(1-t^2)^14(1-t^4)^9:")
        except ValueError:
            num = s.numerator
            print(f"{name} numerator over {s.denominator}:")
        print("  " + " ".join(map(str, num)))
    print("reciprocity shift:", reciprocity_shift(closed))
    print("semiopen = transform(closure):", semi.equals(reciprocity_transform(closed)))
    if cfg.event != "C":
        return
    q = quasipolynomial(semi)
    print("period:", q.period, "degree:", q.degree)
    print("odd residues equal the closed odd branch:", all(q.polys[r] == odd_branch_polynomial() for r in (1, 3)))
    for k in range(1, 13):
        p = Fraction(4 * semi[k], comb(k + 23, 23))
        print(f"k={k:2}  P(CW) = {p}  closed formula agrees: {p == pcw_eval(k)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--event", default="C")
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args()
    main(Config(a.event, a.threads))
