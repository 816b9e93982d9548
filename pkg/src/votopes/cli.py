"""Command line interface.

Results are printed as flat ``key: value`` lines; exact numbers are
always printed in full.  Timing goes to standard error only, so output
files are byte-stable.  Exit codes: 0 success, 2 parse error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .elections import (
    PROBABILITIES,
    PROBABILITY_LABELS,
    EventId,
    assemble_probability,
    build_polytope,
)
from .inputfile import ParseError, read_input
from .oracle import OracleBudgetExceeded, OracleConfig, count_event
from .polytope import HPolytope
from .volume import BudgetExceeded, VolumeConfig, compute_volume, format_decimal

EXIT_OK, EXIT_PARSE, EXIT_BUDGET = 0, 2, 3

# order of the volume table
EVENTS = ["C", "Q", "E", "F", "T", "K", "BSt", "BSg", "BSgRev"]


class Output:
    """Ordered flat key-value document."""

    def __init__(self):
        self.items: List[Tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.items.append((key, str(value)))

    def text(self) -> str:
        return "".join(f"{k}: {v}\n" for k, v in self.items)

    def json(self) -> str:
        return json.dumps(dict(self.items), indent=1) + "\n"


def _progress(enabled: bool, label: str):
    if not enabled:
        return None
    start = time.perf_counter()

    def report(n: int) -> None:
        sys.stderr.write(f"\r{label}: {n} simplicial cones, {time.perf_counter() - start:.1f} s")
        sys.stderr.flush()

    return report


def _polytope(args) -> Tuple[HPolytope, str]:
    if args.input:
        doc = read_input(args.input)
        name = os.path.splitext(os.path.basename(args.input))[0]
        return doc.to_polytope(name), name
    if not args.event:
        raise ParseError("give --event or --input")
    e = EventId.parse(args.event)
    return build_polytope(e, args.candidates, args.variant), e.value


def _describe(out: Output, P: HPolytope, name: str) -> None:
    out.add("polytope", name)
    out.add("ambient_dim", P.ambient_dim)
    out.add("excluded_faces", len(P.strict))
    out.add("inequalities", len(P.closed))


def _volume_config(args) -> VolumeConfig:
    return VolumeConfig(
        threads=args.threads,
        symmetrize=args.symmetrize,
        max_cones=args.max_cones,
        progress=_progress(args.progress, "volume"),
    )


def cmd_volume(args, out: Output) -> None:
    P, name = _polytope(args)
    _describe(out, P, name)
    t0 = time.perf_counter()
    r = compute_volume(P, _volume_config(args))
    _timing(args, "volume", t0)
    out.add("method", r.method)
    out.add("simplicial_cones", r.cone_count)
    out.add("volume", r.value)
    out.add("volume_decimal", format_decimal(r.value))


def _series(args, P: HPolytope):
    from .ehrhart import SeriesConfig, ehrhart_series

    config = SeriesConfig(threads=args.threads, max_cones=args.max_cones, progress=_progress(args.progress, "series"))
    semi = bool(P.strict) and not args.closed
    res = ehrhart_series(P, closed=not semi, semiopen=semi, config=config)
    return res["semiopen" if semi else "closed"], ("semiopen" if semi else "closed")


def cmd_ehrhart(args, out: Output) -> None:
    from .ehrhart import quasipolynomial, reciprocity_shift

    P, name = _polytope(args)
    _describe(out, P, name)
    t0 = time.perf_counter()
    s, kind = _series(args, P)
    _timing(args, "ehrhart", t0)
    out.add("series_of", kind)
    out.add("series", s)
    out.add("numerator", " ".join(map(str, s.numerator)))
    out.add("denominator", " ".join(map(str, s.denominator)))
    out.add("period", s.period)
    out.add("reciprocity_shift", reciprocity_shift(s))
    out.add("first_coefficients", " ".join(map(str, s.coefficients(args.terms))))
    if args.quasipolynomial:
        q = quasipolynomial(s)
        out.add("quasipolynomial_valid_from", q.valid_from)
        for r, poly in enumerate(q.polys):
            out.add(f"quasipolynomial_residue_{r}", " ".join(str(c) for c in poly))


def cmd_count(args, out: Output) -> None:
    P, name = _polytope(args)
    _describe(out, P, name)
    t0 = time.perf_counter()
    s, kind = _series(args, P)
    _timing(args, "count", t0)
    out.add("series_of", kind)
    out.add("voters", args.voters)
    out.add("count", s[args.voters])


def cmd_oracle(args, out: Output) -> None:
    e = EventId.parse(args.event)
    out.add("event", e.value)
    out.add("candidates", args.candidates)
    out.add("voters", args.voters)
    config = OracleConfig(threads=args.threads, budget=args.budget)
    t0 = time.perf_counter()
    c = count_event(e, args.candidates, args.voters, method=args.method, variant=args.variant, config=config)
    _timing(args, "oracle", t0)
    out.add("method", args.method)
    out.add("count", c)


def read_volume_cache(path: str) -> Dict[str, Fraction]:
    """Volumes from ``EVENT = p/q`` lines (``#`` starts a comment)."""
    vols = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ParseError("expected EVENT = p/q", lineno)
            try:
                vols[EventId.parse(key.strip()).value] = Fraction(val.strip())
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
    return vols


def _volumes(args, needed: List[str]) -> Tuple[Dict[str, Fraction], Dict[str, str]]:
    """Cached or fresh volumes; the second dict records the source or skip reason."""
    skip = {EventId.parse(s).value for s in args.skip}
    cache = read_volume_cache(args.volumes) if args.volumes else {}
    config = _volume_config(args)
    vols, source = {}, {}
    for e in needed:
        if e in cache:
            vols[e], source[e] = cache[e], "cached"
        elif e in skip:
            source[e] = "skipped: requested"
        else:
            t0 = time.perf_counter()
            try:
                vols[e] = compute_volume(build_polytope(e), config).value
                source[e] = "computed"
            except BudgetExceeded as exc:
                source[e] = f"skipped: {exc}"
            _timing(args, f"volume {e}", t0)
    return vols, source


def _probabilities(args, out: Output, names: List[str], vols: Dict[str, Fraction]) -> None:
    for name in names:
        out.add(f"{name}_label", PROBABILITY_LABELS[name])
        missing = [e for e in PROBABILITIES[name] if e not in vols]
        if missing:
            out.add(name, "skipped (needs " + ", ".join(missing) + ")")
            continue
        p = assemble_probability(name, vols)
        out.add(name, p)
        out.add(f"{name}_decimal", format_decimal(p))


def _probability_names(args) -> List[str]:
    if args.all or not args.name:
        return list(PROBABILITIES)
    for n in args.name:
        if n not in PROBABILITIES:
            raise ParseError(f"unknown probability {n!r}; choose from {', '.join(PROBABILITIES)}")
    return list(args.name)


def cmd_probability(args, out: Output) -> None:
    names = _probability_names(args)
    needed = sorted({e for n in names for e in PROBABILITIES[n]}, key=EVENTS.index)
    vols, _ = _volumes(args, needed)
    _probabilities(args, out, names, vols)


def cmd_report(args, out: Output) -> None:
    vols, source = _volumes(args, EVENTS)
    for e in EVENTS:
        out.add(f"vol_{e}_source", source[e])
        if e in vols:
            out.add(f"vol_{e}", vols[e])
            out.add(f"vol_{e}_decimal", format_decimal(vols[e]))
    _probabilities(args, out, list(PROBABILITIES), vols)


def _timing(args, label: str, t0: float) -> None:
    if args.progress:
        sys.stderr.write(f"\n{label}: {time.perf_counter() - t0:.2f} s\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="votopes", description="Exact volumes and Ehrhart series of election polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, polytope=True):
        if polytope:
            p.add_argument("--event", help="election event (C, Q, E, F, T, K, BSt, BSg, BSgRev, U)")
            p.add_argument("--input", help="input file (amb_space / excluded_faces / inequalities ...)")
        p.add_argument("--candidates", type=int, default=4)
        p.add_argument("--variant", default="negated", choices=["negated", "listed"],
                       help="constraint set of the reverse strong Borda event")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--symmetrize", default="auto", choices=["auto", "on", "off"])
        p.add_argument("--max-cones", type=int, default=50_000_000, help="budget in simplicial cones")
        p.add_argument("--progress", action="store_true", help="progress and timing on standard error")
        p.add_argument("--out", help="write the result to this file")
        p.add_argument("--json", action="store_true", help="print JSON instead of key-value lines")

    p = sub.add_parser("volume", help="exact normalized volume")
    common(p)
    p = sub.add_parser("ehrhart", help="Ehrhart series")
    common(p)
    p.add_argument("--closed", action="store_true", help="series of the closure")
    p.add_argument("--terms", type=int, default=10, help="number of series coefficients to print")
    p.add_argument("--quasipolynomial", action="store_true")
    p = sub.add_parser("count", help="lattice points of the k-th dilation from the series")
    common(p)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--closed", action="store_true")
    p = sub.add_parser("oracle", help="brute-force profile count")
    common(p, polytope=False)
    p.add_argument("--event", required=True)
    p.add_argument("--voters", type=int, required=True)
    p.add_argument("--method", default="semantic", choices=["semantic", "inequalities"])
    p.add_argument("--budget", type=int, default=10**8, help="budget in enumerated profiles")
    for name, helptext in (("probability", "limiting probabilities"), ("report", "volume and probability table")):
        p = sub.add_parser(name, help=helptext)
        common(p, polytope=False)
        p.add_argument("--skip", action="append", default=[], help="event whose volume is not computed")
        p.add_argument("--volumes", help="file of cached volumes (EVENT = p/q)")
        if name == "probability":
            p.add_argument("--all", action="store_true")
            p.add_argument("--name", action="append", default=[], help="probability to compute")
    return parser


COMMANDS = {
    "volume": cmd_volume,
    "ehrhart": cmd_ehrhart,
    "count": cmd_count,
    "oracle": cmd_oracle,
    "probability": cmd_probability,
    "report": cmd_report,
}


def run_cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    out = Output()
    try:
        COMMANDS[args.command](args, out)
    except (ParseError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (BudgetExceeded, OracleBudgetExceeded) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    text = out.json() if args.json else out.text()
    sys.stdout.write(text)
    path = args.out
    if path is None and getattr(args, "input", None):
        path = os.path.splitext(args.input)[0] + ".out"
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
