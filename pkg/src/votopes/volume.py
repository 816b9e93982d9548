"""Exact lattice-normalized volumes (the unit simplex has volume 1)."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from . import _kernels
from .dual_description import extreme_rays
from .exact import bareiss_det
from .polytope import ConeVRep, HPolytope
from .triangulation import Triangulation, lex_triangulate


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured resource budget."""


@dataclass
class VolumeConfig:
    threads: int = 1
    symmetrize: str = "auto"  # auto | on | off
    max_cones: Optional[int] = 50_000_000
    block_size: int = 200_000
    progress: Optional[Callable[[int], None]] = None


@dataclass
class VolumeResult:
    value: Fraction
    cone_count: int
    elapsed: float
    method: str = "direct"
    extra: Dict[str, object] = field(default_factory=dict)

    def decimal(self, digits: int = 4) -> str:
        return format_decimal(self.value, digits)


def format_decimal(x: Fraction, digits: int = 4) -> str:
    return f"{float(x):.{digits}g}"


def _block_sums(gens: np.ndarray, degs: np.ndarray, blk: np.ndarray) -> Dict[int, int]:
    """Sum of |det| per degree product over one block of simplicial cones."""
    dets, ok = _kernels.abs_dets(gens, blk)
    out: Dict[int, int] = {}
    if not ok.all():
        for i in np.nonzero(~ok)[0]:
            dets[i] = 0
            d = abs(bareiss_det(gens[blk[i]].tolist()))
            key = prod(int(g) for g in degs[blk[i]])
            out[key] = out.get(key, 0) + d
        blk = blk[ok]
        dets = dets[ok]
    if len(blk) == 0:
        return out
    g = np.sort(degs[blk], axis=1)
    uniq, inv = np.unique(g, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    # per-class sums stay far below 2**63 for blocks of this size
    acc = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(acc, inv, dets)
    for u in range(len(uniq)):
        key = prod(int(x) for x in uniq[u])
        out[key] = out.get(key, 0) + int(acc[u])
    return out


def normalized_volume(t: Triangulation, config: Optional[VolumeConfig] = None) -> VolumeResult:
    """Sum of |det(w_1..w_d)| / (g_1...g_d) over the simplicial cones."""
    config = config or VolumeConfig()
    start = time.perf_counter()
    v = t.vrep
    if (v.degrees < 1).any():
        raise ValueError("generator of degree 0")
    gens = np.ascontiguousarray(v.generators, dtype=np.int64)
    degs = np.asarray(v.degrees, dtype=np.int64)
    totals: Dict[int, int] = {}
    ncones = 0

    def merge(part: Dict[int, int]) -> None:
        for k, x in part.items():
            totals[k] = totals.get(k, 0) + x

    def check(n: int) -> None:
        if config.max_cones is not None and n > config.max_cones:
            raise BudgetExceeded(f"triangulation exceeds {config.max_cones} simplicial cones")

    if config.threads <= 1:
        for blk in t.blocks(config.block_size):
            ncones += len(blk)
            check(ncones)
            merge(_block_sums(gens, degs, blk))
            if config.progress:
                config.progress(ncones)
    else:
        with ThreadPoolExecutor(config.threads) as pool:
            pending = []
            for blk in t.blocks(config.block_size):
                ncones += len(blk)
                check(ncones)
                pending.append(pool.submit(_block_sums, gens, degs, blk))
                if len(pending) >= 2 * config.threads:
                    merge(pending.pop(0).result())
                if config.progress:
                    config.progress(ncones)
            for f in pending:
                merge(f.result())
    value = sum((Fraction(x, k) for k, x in totals.items()), Fraction(0))
    return VolumeResult(value, ncones, time.perf_counter() - start, "direct")


def should_symmetrize(P: HPolytope, mode: str = "auto") -> bool:
    """Symmetrize when the projected dimension is at most 2/3 of N (mode "auto")."""
    if mode == "off":
        return False
    from .symmetry import detect_symmetry

    sp = detect_symmetry(P)
    if mode == "on":
        return sp.m < P.ambient_dim
    if mode != "auto":
        raise ValueError(f"symmetrize must be auto, on or off, not {mode!r}")
    return 3 * sp.m <= 2 * P.ambient_dim


def compute_volume(P: HPolytope, config: Optional[VolumeConfig] = None) -> VolumeResult:
    """Volume of ``P`` by the direct or the symmetrized path."""
    config = config or VolumeConfig()
    if should_symmetrize(P, config.symmetrize):
        from .symmetry import detect_symmetry, weighted_volume

        start = time.perf_counter()
        sp = detect_symmetry(P)
        value, ncones = weighted_volume(sp, threads=config.threads, return_count=True)
        return VolumeResult(value, ncones, time.perf_counter() - start, "symmetrized", {"m": sp.m})
    vrep = extreme_rays(P)
    t = lex_triangulate(vrep)
    res = normalized_volume(t, config)
    res.extra["vertices"] = len(vrep)
    res.extra["supports"] = len(vrep.support_hyperplanes)
    return res


@dataclass
class ReportRow:
    name: str
    value: Optional[Fraction]
    status: str  # "ok" or "skipped: <reason>"
    method: str = ""
    cones: int = 0
    elapsed: float = 0.0

    @property
    def decimal(self) -> str:
        return format_decimal(self.value) if self.value is not None else "-"


def volume_report(ids: Iterable, config: Optional[VolumeConfig] = None, skip: Iterable = ()) -> List[ReportRow]:
    """Exact volumes and 4-digit decimals; over-budget events are marked skipped."""
    from .elections import EventId, build_polytope

    skip = {EventId.parse(s) for s in skip}
    rows = []
    for raw in ids:
        e = EventId.parse(raw)
        if e in skip:
            rows.append(ReportRow(e.value, None, "skipped: requested"))
            continue
        try:
            r = compute_volume(build_polytope(e), config)
        except BudgetExceeded as exc:
            rows.append(ReportRow(e.value, None, f"skipped: {exc}"))
            continue
        rows.append(ReportRow(e.value, r.value, "ok", r.method, r.cone_count, r.elapsed))
    return rows
