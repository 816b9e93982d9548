"""Extreme rays and support hyperplanes by the double description method."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .exact import rank
from .polytope import ConeVRep, HPolytope


@dataclass
class DDState:
    """Rays of the cone cut out by the hyperplanes processed so far.

    ``incidence`` packs one bit per processed hyperplane into uint64 words.
    """

    rays: np.ndarray
    incidence: np.ndarray
    hyperplanes: List[np.ndarray]

    @classmethod
    def orthant(cls, n: int, total: int) -> "DDState":
        words = (total + 63) // 64
        inc = np.zeros((n, words), dtype=np.uint64)
        for i in range(n):
            for j in range(n):
                if j != i:
                    inc[i, j // 64] |= np.uint64(1) << np.uint64(j % 64)
        return cls(np.eye(n, dtype=np.int64), inc, [np.eye(n, dtype=np.int64)[i] for i in range(n)])

    def insert(self, h: Sequence[int]) -> None:
        """Intersect the current cone with the halfspace ``h >= 0``."""
        h = np.asarray(h, dtype=np.int64)
        idx = len(self.hyperplanes)
        word, bit = idx // 64, np.uint64(1) << np.uint64(idx % 64)
        n_amb = self.rays.shape[1]
        rays, inc = self.rays, self.incidence
        vals = rays @ h
        pos = np.nonzero(vals > 0)[0]
        neg = np.nonzero(vals < 0)[0]
        zer = np.nonzero(vals == 0)[0]
        new_rays, new_inc = [], []
        if len(pos) and len(neg):
            neg_inc = inc[neg]
            for i in pos:
                common = neg_inc & inc[i]
                # a 2-face lies on at least n-2 independent hyperplanes
                cand = np.nonzero(np.bitwise_count(common).sum(axis=1) >= n_amb - 2)[0]
                for c_idx in cand:
                    j = neg[c_idx]
                    c = common[c_idx]
                    # adjacent iff no third ray lies on every common hyperplane
                    if np.count_nonzero(((inc & c) == c).all(axis=1)) > 2:
                        continue
                    r = vals[i] * rays[j] - vals[j] * rays[i]
                    g = np.gcd.reduce(np.abs(r))
                    if g > 1:
                        r //= g
                    nc = c.copy()
                    nc[word] |= bit
                    new_rays.append(r)
                    new_inc.append(nc)
        keep = np.concatenate([pos, zer])
        keep.sort()
        kept_inc = inc[keep].copy()
        kept_inc[vals[keep] == 0, word] |= bit
        parts = [rays[keep]] + ([np.array(new_rays, dtype=np.int64)] if new_rays else [])
        self.rays = np.vstack(parts) if parts else np.zeros((0, n_amb), np.int64)
        self.incidence = np.vstack([kept_inc] + ([np.array(new_inc, dtype=np.uint64)] if new_inc else []))
        self.hyperplanes.append(h)

    def zero_sets(self) -> List[int]:
        """For every hyperplane the bitmask (Python int) of rays on it."""
        out = []
        n = len(self.rays)
        for idx in range(len(self.hyperplanes)):
            word, bit = idx // 64, np.uint64(1) << np.uint64(idx % 64)
            on = np.nonzero(self.incidence[:, word] & bit)[0]
            m = 0
            for i in on:
                m |= 1 << int(i)
            out.append(m)
        return out


def _check_input(P: HPolytope) -> None:
    if not P.nonnegative:
        raise ValueError("the cone must include the sign conditions x >= 0 to be pointed")


def run_dd(P: HPolytope) -> DDState:
    _check_input(P)
    n = P.ambient_dim
    forms = P.strict + P.closed
    state = DDState.orthant(n, n + len(forms))
    for f in forms:
        state.insert(f)
    return state


def extreme_rays(P: HPolytope) -> ConeVRep:
    """Extreme rays and irredundant support hyperplanes of the closure of ``P``.

    Hyperplanes are inserted in input order: sign conditions, then strict
    forms, then closed forms.
    """
    state = run_dd(P)
    rays = state.rays
    n_rays = len(rays)
    grading = np.array(P.grading, dtype=np.int64)
    degrees = rays @ grading
    if n_rays and (degrees < 1).any():
        raise ValueError("generator of nonpositive degree; the grading must be positive on the cone")
    dim = rank(rays.tolist()) if n_rays else 0
    zs = state.zero_sets()
    full = (1 << n_rays) - 1
    # facets are the maximal proper zero sets; duplicates keep the first hyperplane
    proper = [(i, z) for i, z in enumerate(zs) if z != full]
    supports, seen = [], set()
    for i, z in proper:
        if z in seen:
            continue
        if any(z != z2 and z & z2 == z for _, z2 in proper):
            continue
        seen.add(z)
        supports.append(i)
    hyper = [tuple(int(c) for c in state.hyperplanes[i]) for i in supports]
    inc = np.zeros((n_rays, len(supports)), dtype=bool)
    for col, i in enumerate(supports):
        z = zs[i]
        for r in range(n_rays):
            if z >> r & 1:
                inc[r, col] = True
    return ConeVRep(rays, degrees, hyper, dim, inc)


def incidence(v: ConeVRep) -> np.ndarray:
    """Boolean rays x support hyperplanes matrix, True where the form vanishes."""
    if v.incidence is not None:
        return v.incidence
    H = np.array(v.support_hyperplanes, dtype=np.int64).reshape(-1, v.ambient_dim)
    return (v.generators @ H.T) == 0
