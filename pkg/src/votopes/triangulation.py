"""Pulling triangulations of pointed cones and their half-open marking.

Faces are Python-int bitmasks over the (reordered) generators.  The
facets of a face ``F`` are the maximal sets among ``F & Z(h)`` for the
support hyperplanes ``h`` not containing ``F``.  Pulling the first
generator ``v`` of ``F`` cones it over the triangulations of the facets
of ``F`` not containing ``v``; since every face uses the same global
order the result is a triangulation of the whole cone.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .exact import bareiss_det, rank
from .polytope import ConeVRep, HPolytope, semiopen_marking

# faces of at most this dimension are expanded into index arrays and memoized
SMALL_FACE_DIM = 12
DEFAULT_BLOCK = 200_000


@dataclass(frozen=True)
class SimplicialCone:
    """Generator indices, excluded facet positions and |det|."""

    generators: Tuple[int, ...]
    excluded_facets: frozenset = frozenset()
    det_abs: int = 0


@dataclass
class Triangulation:
    """Lazy pulling triangulation of a full-dimensional pointed cone.

    ``order`` lists generator indices in pulling order.  Cones are produced
    in blocks (rows of generator indices into ``vrep.generators``) and are
    only stored when ``cones()`` is called explicitly.
    """

    vrep: ConeVRep
    order: np.ndarray
    xis: Optional[np.ndarray] = None  # generic points of the half-open marking
    _faces: Dict[int, list] = field(default_factory=dict, repr=False)
    _memo: Dict[int, np.ndarray] = field(default_factory=dict, repr=False)
    _count: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        inc = self.vrep.incidence
        if inc is None:
            H = np.array(self.vrep.support_hyperplanes, dtype=np.int64).reshape(-1, self.vrep.ambient_dim)
            inc = (self.vrep.generators @ H.T) == 0
        inc = inc[self.order]
        self._zero = []
        for col in range(inc.shape[1]):
            m = 0
            for r in np.nonzero(inc[:, col])[0]:
                m |= 1 << int(r)
            self._zero.append(m)
        self._order_arr = np.asarray(self.order, dtype=np.int64)
        # compact memo rows; int16 suffices for the election cones
        self._idx_dtype = np.int16 if len(self.order) < 2**15 else np.int32

    @property
    def dim(self) -> int:
        return self.vrep.dim

    @property
    def n_generators(self) -> int:
        return len(self.order)

    def _facets(self, face: int) -> list:
        out = self._faces.get(face)
        if out is not None:
            return out
        cands = {face & z for z in self._zero if face & ~z}
        out = []
        for c in sorted(cands, key=int.bit_count, reverse=True):
            if not any(c & o == c for o in out):
                out.append(c)
        self._faces[face] = out
        return out

    def _bits(self, face: int) -> List[int]:
        out, i = [], 0
        while face:
            if face & 1:
                out.append(i)
            face >>= 1
            i += 1
        return out

    def _small(self, face: int, d: int) -> np.ndarray:
        r = self._memo.get(face)
        if r is not None:
            return r
        if face.bit_count() == d:
            r = np.array([self._bits(face)], dtype=self._idx_dtype)
        else:
            low = face & -face
            vi = low.bit_length() - 1
            parts = [self._small(g, d - 1) for g in self._facets(face) if not g & low]
            a = np.vstack(parts)
            r = np.hstack([np.full((len(a), 1), vi, self._idx_dtype), a])
        self._memo[face] = r
        return r

    def _emit(self, face: int, d: int, prefix: list) -> Iterator[np.ndarray]:
        if d <= SMALL_FACE_DIM or face.bit_count() == d:
            a = self._small(face, d)
            if prefix:
                a = np.hstack([np.tile(np.array(prefix, self._idx_dtype), (len(a), 1)), a])
            yield a
            return
        low = face & -face
        vi = low.bit_length() - 1
        for g in self._facets(face):
            if not g & low:
                yield from self._emit(g, d - 1, prefix + [vi])

    def blocks(self, block_size: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
        """Simplicial cones as int arrays (rows = generator indices, ascending pull order)."""
        full = (1 << self.n_generators) - 1
        buf, size = [], 0
        for a in self._emit(full, self.dim, []):
            buf.append(a)
            size += len(a)
            if size >= block_size:
                yield self._order_arr[np.vstack(buf)]
                buf, size = [], 0
        if buf:
            yield self._order_arr[np.vstack(buf)]

    def count(self) -> int:
        """Number of simplicial cones, without generating them."""

        def rec(face: int, d: int) -> int:
            r = self._count.get(face)
            if r is not None:
                return r
            if face.bit_count() == d:
                r = 1
            else:
                low = face & -face
                r = sum(rec(g, d - 1) for g in self._facets(face) if not g & low)
            self._count[face] = r
            return r

        return rec((1 << self.n_generators) - 1, self.dim)

    def cones(self) -> List[SimplicialCone]:
        """Materialize all simplicial cones with |det| and excluded facets."""
        gens = self.vrep.generators
        out = []
        for blk in self.blocks():
            dets, ok = _kernels.abs_dets(gens, blk)
            masks = None
            if self.xis is not None:
                masks = [excluded_facets(gens, row, self.xis[0]) for row in blk]
            for i, row in enumerate(blk):
                d = int(dets[i]) if ok[i] else abs(bareiss_det(gens[row].tolist()))
                excl = frozenset(masks[i]) if masks is not None else frozenset()
                out.append(SimplicialCone(tuple(int(x) for x in row), excl, d))
        return out

    def clear_cache(self) -> None:
        self._memo.clear()


def incidence_order(vrep: ConeVRep) -> np.ndarray:
    """Generators sorted by decreasing number of incident facets (stable)."""
    inc = vrep.incidence
    if inc is None:
        H = np.array(vrep.support_hyperplanes, dtype=np.int64).reshape(-1, vrep.ambient_dim)
        inc = (vrep.generators @ H.T) == 0
    return np.argsort(-inc.sum(axis=1), kind="stable")


def lex_triangulate(v: ConeVRep, order="incidence") -> Triangulation:
    """Pulling triangulation using the generators in the given order.

    ``order`` is ``"incidence"`` (default), ``"given"`` (stored order) or
    an explicit permutation of the generator indices.
    """
    if len(v) == 0:
        raise ValueError("cannot triangulate the zero cone")
    if v.dim != v.ambient_dim:
        raise ValueError(f"cone of rank {v.dim} in ambient dimension {v.ambient_dim} is not full-dimensional")
    if isinstance(order, str):
        if order == "incidence":
            perm = incidence_order(v)
        elif order == "given":
            perm = np.arange(len(v))
        else:
            raise ValueError(f"unknown order {order!r}")
    else:
        perm = np.asarray(order, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(len(v))):
            raise ValueError("order must be a permutation of the generator indices")
    if sys.getrecursionlimit() < 10_000:
        sys.setrecursionlimit(10_000)
    return Triangulation(v, perm)


# half-open marking


def interior_point(v: ConeVRep) -> np.ndarray:
    return v.generators.sum(axis=0)


def separating_point(v: ConeVRep, excluded: Sequence[int]) -> np.ndarray:
    """Integer point negative on the excluded facets and positive on all others.

    Found by a linear program, rounded, and verified exactly.
    """
    H = np.array(v.support_hyperplanes, dtype=np.int64)
    excluded = set(excluded)
    if not excluded:
        return interior_point(v)
    from scipy.optimize import linprog

    sign = np.array([-1 if i in excluded else 1 for i in range(len(H))])
    # maximize s subject to sign_i * h_i(x) >= s, |x| <= 1
    n = H.shape[1]
    A = np.hstack([-(sign[:, None] * H), np.ones((len(H), 1))])
    res = linprog(
        c=np.r_[np.zeros(n), -1.0],
        A_ub=A,
        b_ub=np.zeros(len(H)),
        bounds=[(-1, 1)] * n + [(None, 1)],
        method="highs",
    )
    if res.status != 0 or -res.fun <= 1e-9:
        raise ValueError("no point separates the excluded facets from the others")
    x = res.x[:n]
    for scale in (10**3, 10**5, 10**7, 10**9):
        xi = np.rint(x * scale / np.abs(x).max()).astype(np.int64)
        if ((H @ xi) * sign > 0).all():
            return xi
    raise ValueError("could not round the separating point")


def stanley_mark(t: Triangulation, P: Optional[HPolytope] = None, extra_points=()) -> Triangulation:
    """Attach generic points that define the half-open decomposition.

    Facet ``i`` of a simplicial cone (opposite generator ``i``) is excluded
    iff the generic point lies strictly on its negative side, ties broken
    by the perturbation xi + eps e_1 + eps^2 e_2 + ...  With an interior
    point this partitions the closed cone; with ``P`` semiopen the point
    is chosen beyond the excluded facets of ``P``, so the half-open cones
    partition the semiopen cone.
    """
    if P is None or not P.strict:
        xi = interior_point(t.vrep)
    else:
        marking = semiopen_marking(P, t.vrep)
        xi = separating_point(t.vrep, marking.facet_of_strict)
    rows = [np.asarray(xi, dtype=np.int64)] + [np.asarray(x, dtype=np.int64) for x in extra_points]
    t.xis = np.vstack(rows)
    return t


def excluded_facets(gens: np.ndarray, simplex: Sequence[int], xi) -> List[int]:
    """Exact (Python) excluded facet positions of one simplicial cone."""
    A = [[Fraction(int(gens[g][r])) for g in simplex] for r in range(gens.shape[1])]
    d = len(simplex)
    # solve A c = xi and A C = I together
    aug = [row + [Fraction(int(xi[r]))] + [Fraction(int(r == j)) for j in range(d)] for r, row in enumerate(A)]
    for k in range(d):
        p = next(i for i in range(k, d) if aug[i][k] != 0)
        aug[k], aug[p] = aug[p], aug[k]
        piv = aug[k][k]
        aug[k] = [x / piv for x in aug[k]]
        for i in range(d):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    out = []
    for i in range(d):
        key = aug[i][d:]
        s = next((x for x in key if x != 0), 0)
        if s < 0:
            out.append(i)
    return out


def check_full_rank(v: ConeVRep) -> None:
    if rank(v.generators.tolist()) != v.ambient_dim:
        raise ValueError("rank-deficient cone")
