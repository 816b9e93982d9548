"""Symmetrization: coordinate groups, projection and weighted integration.

Coordinates that carry the same coefficient in every defining form can be
permuted freely, so only their sum ``y_j`` matters.  A lattice point ``y``
of the projected polytope has ``f(y) = prod_j binom(y_j + u_j - 1, u_j - 1)``
preimages, and the volume of the original polytope is the integral of the
leading form of ``f`` over the projection.

For a simplicial cone with generators ``w_i`` of degree ``g_i`` the
integral of ``prod_j y_j^{e_j} / e_j!`` over the simplex with vertices
``p_i = w_i / g_i`` reduces, via the Dirichlet moments of the simplex, to
the coefficient of ``t^e`` in ``prod_i 1 / (1 - sum_j p_ij t_j)``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm, prod
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import _kernels
from .dual_description import extreme_rays
from .exact import SparsePolynomial, binom_int, det, leading_form
from .polytope import ConeVRep, HPolytope
from .triangulation import Triangulation, lex_triangulate


@dataclass
class SymmetryProjection:
    groups: List[Tuple[int, ...]]
    projected: HPolytope
    original: HPolytope

    @property
    def sizes(self) -> List[int]:
        return [len(g) for g in self.groups]

    @property
    def m(self) -> int:
        return len(self.groups)

    @property
    def weight(self) -> SparsePolynomial:
        """``f(y) = prod_j binom(y_j + u_j - 1, u_j - 1)``."""
        m = self.m
        f = SparsePolynomial.constant(m)
        for j, u in enumerate(self.sizes):
            f = f * SparsePolynomial.binomial(m, j, u)
        return f

    @property
    def exponents(self) -> List[int]:
        """Exponents of the leading form of the weight."""
        return [u - 1 for u in self.sizes]

    def weight_at(self, y) -> int:
        return prod(binom_int(int(yj) + u - 1, u - 1) for yj, u in zip(y, self.sizes))

    def is_trivial(self) -> bool:
        return self.m == self.original.ambient_dim


def detect_symmetry(P: HPolytope) -> SymmetryProjection:
    """Finest grouping of coordinates with identical columns in all forms."""
    forms = list(P.strict) + list(P.closed)
    n = P.ambient_dim
    cols: Dict[tuple, List[int]] = {}
    for i in range(n):
        key = tuple(f[i] for f in forms) + (P.grading[i],)
        cols.setdefault(key, []).append(i)
    groups = [tuple(v) for v in cols.values()]
    rep = [g[0] for g in groups]
    proj = lambda f: tuple(f[i] for i in rep)
    Q = HPolytope(
        len(groups),
        closed=[proj(f) for f in P.closed],
        strict=[proj(f) for f in P.strict],
        nonnegative=P.nonnegative,
        grading=proj(P.grading),
        name=(P.name + "_sym") if P.name else "",
    )
    return SymmetryProjection(groups, Q, P)


def projected_cone(sp: SymmetryProjection) -> ConeVRep:
    return extreme_rays(sp.projected)


# weighted volume

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):  # deterministic below 2**32
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_31():
    p = 2**31 - 1
    while True:
        if _is_prime(p):
            yield p
        p -= 2


def _cone_data(gens: np.ndarray, degs: np.ndarray, blk: np.ndarray, active: List[int]):
    """Integer matrices ``a[c, i, j] = w_ij * L / g_i`` and the per-cone L."""
    g = degs[blk]  # (B, m)
    L = np.array([lcm(*map(int, row)) for row in g], dtype=np.int64)
    w = gens[blk][:, :, active]  # (B, m, J)
    a = w * (L[:, None] // g)[:, :, None]
    return a, L


def _box_exact(a: np.ndarray, ext: np.ndarray) -> List[int]:
    """Exact top box coefficients, reconstructed from residues by CRT."""
    bound = _kernels.box_coefficients_float(a.astype(np.float64), ext)
    need = int(bound.max() * 1.001) + 1 if len(bound) else 1
    if not np.isfinite(bound).all():
        raise OverflowError("box coefficients exceed the float range")
    primes, M = [], 1
    for p in _primes_below_2_31():
        if M > 2 * need:
            break
        primes.append(p)
        M *= p
    res = [_kernels.box_coefficients_mod(a % p, ext, p) for p in primes]
    out = []
    for c in range(a.shape[0]):
        x, mod = 0, 1
        for p, r in zip(primes, res):
            # Garner step
            t = ((int(r[c]) - x) * pow(mod, -1, p)) % p
            x += mod * t
            mod *= p
        out.append(x)
    return out


def weighted_volume(sp: SymmetryProjection, threads: int = 1, return_count: bool = False,
                    block_size: int = 4096):
    """Volume of the original polytope from its projection.

    Per simplicial cone ``S`` of the projected cone the contribution is
    ``|det W_S| * c_S / (prod g_i * L^D)`` with ``c_S`` the coefficient of
    ``t^e`` in ``prod_i 1 / (1 - sum_j a_ij t_j)``; the overall factor
    ``(N-1)! / (D+m-1)!`` equals 1 since ``D = N - m``.
    """
    N = sp.original.ambient_dim
    vrep = projected_cone(sp)
    if vrep.dim != sp.m:
        raise ValueError("projected cone is not full-dimensional")
    t = lex_triangulate(vrep)
    gens = np.ascontiguousarray(vrep.generators, dtype=np.int64)
    degs = np.asarray(vrep.degrees, dtype=np.int64)
    e = sp.exponents
    active = [j for j, x in enumerate(e) if x > 0]
    ext = np.array([e[j] for j in active], dtype=np.int64)
    D = sum(e)
    scale = Fraction(factorial(N - 1), factorial(D + sp.m - 1))

    def work(blk: np.ndarray) -> Dict[int, int]:
        dets, ok = _kernels.abs_dets(gens, blk)
        if not ok.all():
            raise OverflowError("determinant overflow in the projected cone")
        if active:
            a, L = _cone_data(gens, degs, blk, active)
            coeffs = _box_exact(a, ext)
        else:
            L = np.ones(len(blk), dtype=np.int64)
            coeffs = [1] * len(blk)
        out: Dict[int, int] = {}
        for c in range(len(blk)):
            den = prod(int(x) for x in degs[blk[c]]) * int(L[c]) ** D
            out[den] = out.get(den, 0) + int(dets[c]) * coeffs[c]
        return out

    totals: Dict[int, int] = {}
    ncones = 0
    blocks = list(t.blocks(block_size))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    for blk, part in zip(blocks, parts):
        ncones += len(blk)
        for k, x in part.items():
            totals[k] = totals.get(k, 0) + x
    value = scale * sum((Fraction(x, k) for k, x in totals.items()), Fraction(0))
    return (value, ncones) if return_count else value


def weighted_volume_barycentric(sp: SymmetryProjection) -> Fraction:
    """Reference path: literal barycentric expansion of the leading form.

    Expands ``f_top(sum_i lambda_i p_i) = sum_a c_a lambda^a`` with exact
    polynomial arithmetic and uses ``int lambda^a = a! / (D + m - 1)!`` on
    the standard simplex.  Only suitable for small cases.
    """
    N = sp.original.ambient_dim
    vrep = projected_cone(sp)
    t = lex_triangulate(vrep)
    f_top = leading_form(sp.weight)
    D = f_top.total_degree()
    m = sp.m
    gens, degs = vrep.generators, vrep.degrees
    total = Fraction(0)
    for blk in t.blocks():
        for row in blk:
            W = [[int(x) for x in gens[i]] for i in row]
            g = [int(degs[i]) for i in row]
            V = Fraction(abs(det(W)), prod(g))
            # y_j = sum_i lambda_i * w_ij / g_i
            images = [
                SparsePolynomial(m, {tuple(int(k == i) for k in range(m)): Fraction(W[i][j], g[i]) for i in range(m)})
                for j in range(m)
            ]
            expanded = f_top.substitute_linear(images)
            s = sum((c * prod(factorial(x) for x in a) for a, c in expanded.terms.items()), Fraction(0))
            total += V * s
    return Fraction(factorial(N - 1), factorial(D + m - 1)) * total


# weighted lattice point counts


def compositions(k: int, m: int):
    """All nonnegative integer vectors of length ``m`` summing to ``k``."""
    if m == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in compositions(k - first, m - 1):
            yield (first,) + rest


def weighted_count(sp: SymmetryProjection, k: int, budget: int = 10**7) -> int:
    """Sum of f(y) over lattice points y of the dilated projected polytope."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = sp.m
    size = binom_int(k + m - 1, m - 1)
    if size > budget:
        from .volume import BudgetExceeded

        raise BudgetExceeded(f"{size} projected points exceed the budget of {budget}")
    Q = sp.projected
    if any(g != 1 for g in Q.grading):
        raise ValueError("weighted counting assumes the total degree grading")
    total = 0
    for y in compositions(k, m):
        if Q.contains(y):
            total += sp.weight_at(y)
    return total


def projected_summary(sp: SymmetryProjection) -> Dict[str, int]:
    """Vertex, support and triangulation counts of the projected cone."""
    v = projected_cone(sp)
    t = lex_triangulate(v)
    return {"dim": sp.m, "vertices": len(v), "supports": len(v.support_hyperplanes), "cones": t.count()}
