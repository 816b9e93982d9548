"""Brute-force profile counts, minimal electorates and the class check.

    python scripts/oracle_runs.py --max-voters 6
"""

import argparse
import time
from dataclasses import dataclass

from votopes.elections import EventId
from votopes.oracle import OracleConfig, count_event, min_voters_bruteforce, mutual_exclusion_check


@dataclass
class Config:
    max_voters: int = 6
    threads: int = 1


def main(cfg: Config) -> None:
    oc = OracleConfig(threads=cfg.threads)
    ks = range(cfg.max_voters + 1)
    print("counts for k = " + " ".join(map(str, ks)))
    for e in EventId:
        t0 = time.perf_counter()
        counts = [count_event(e, 4, k, config=oc) for k in ks]
        print(f"{e.value:7} {counts}  ({time.perf_counter() - t0:.1f} s)")
    print("minimal numbers of voters:")
    for e in ["C", "E", "T", "Q", "K", "BSgRev", "BSg", "BSt"]:
        print(f"  {e:7} {min_voters_bruteforce(e, config=oc)}")
    print("Condorcet classes (tie-free profiles) and ties:")
    for k in range(min(cfg.max_voters, 5) + 1):
        r = mutual_exclusion_check(k)
        print(f"  k={k} ok={r.ok} {r.counts} ties={r.ties} total={r.total}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-voters", type=int, default=6)
    p.add_argument("--threads", type=int, default=1)
    a = p.parse_args()
    main(Config(a.max_voters, a.threads))
