"""Ehrhart series, quasipolynomials and reciprocity.

A series is stored as numerator coefficients over ``prod_i (1 - t^{g_i})``.
Simplicial contributions are accumulated per multiset of generator
degrees, combined over the least common multiple of the denominators in
the basis of the factors ``Psi_1 = 1 - t`` and ``Psi_e = Phi_e`` (the
cyclotomic polynomials, ``1 - t^g = prod_{e | g} Psi_e``), reduced, and
finally regrouped into exactly ``d`` factors ``1 - t^g``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd, lcm, prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .exact import bareiss_det
from .polytope import HPolytope
from .triangulation import Triangulation, excluded_facets

# integer polynomials as lists of Python ints, index = power of t


def _trim(p: List[int]) -> List[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def poly_mul(p: Sequence[int], q: Sequence[int]) -> List[int]:
    if not p or not q:
        return [0]
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_add(p: Sequence[int], q: Sequence[int]) -> List[int]:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_divmod(p: Sequence[int], q: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Division by a monic (up to sign) integer polynomial."""
    q = _trim(q)
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(p)
    if len(r) < len(q):
        return [0], _trim(r)
    out = [0] * (len(r) - len(q) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = r[i + len(q) - 1] * lead
        out[i] = c
        if c:
            for j, b in enumerate(q):
                r[i + j] -= c * b
    return _trim(out), _trim(r[: len(q) - 1] or [0])


@lru_cache(maxsize=None)
def psi(e: int) -> Tuple[int, ...]:
    """``1 - t`` for e = 1, the cyclotomic polynomial Phi_e otherwise."""
    if e == 1:
        return (1, -1)
    num = [-1] + [0] * (e - 1) + [1]  # t^e - 1
    for d in range(1, e):
        if e % d == 0:
            f = list(psi(d)) if d > 1 else [-1, 1]
            num, rem = poly_divmod(num, f)
            assert rem == [0]
    return tuple(num)


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def one_minus_t_pow(g: int) -> List[int]:
    return [1] + [0] * (g - 1) + [-1]


def series_expand(numerator: Sequence[int], denominator: Sequence[int], n: int) -> List[int]:
    """First ``n`` power-series coefficients of numerator / prod(1 - t^g)."""
    c = [0] * n
    for i, a in enumerate(numerator[:n]):
        c[i] = a
    for g in denominator:
        for i in range(g, n):
            c[i] += c[i - g]
    return c


@dataclass
class EhrhartSeries:
    numerator: List[int]
    denominator: Tuple[int, ...]
    dim: int = 0

    def __post_init__(self):
        self.numerator = _trim([int(x) for x in self.numerator])
        self.denominator = tuple(sorted(int(g) for g in self.denominator))
        if not self.dim:
            self.dim = len(self.denominator)

    @property
    def degree_numerator(self) -> int:
        return len(self.numerator) - 1

    @property
    def rational_degree(self) -> int:
        """Degree as a rational function (numerator minus denominator degree)."""
        return self.degree_numerator - sum(self.denominator)

    @property
    def period(self) -> int:
        return lcm(*self.denominator) if self.denominator else 1

    def coefficients(self, n: int) -> List[int]:
        return series_expand(self.numerator, self.denominator, n)

    def __getitem__(self, k: int) -> int:
        return self.coefficients(k + 1)[k]

    def equals(self, other: "EhrhartSeries") -> bool:
        """Equality as rational functions (cross multiplication)."""
        lhs = list(self.numerator)
        for g in other.denominator:
            lhs = poly_mul(lhs, one_minus_t_pow(g))
        rhs = list(other.numerator)
        for g in self.denominator:
            rhs = poly_mul(rhs, one_minus_t_pow(g))
        return _trim(lhs) == _trim(rhs)

    def over(self, denominator: Sequence[int]) -> "EhrhartSeries":
        """The same rational function over a multiple of the current denominator."""
        num = list(self.numerator)
        for g in denominator:
            num = poly_mul(num, one_minus_t_pow(g))
        for g in self.denominator:
            num, rem = poly_divmod(num, one_minus_t_pow(g))
            if rem != [0]:
                raise ValueError("target denominator is not a multiple of the current one")
        return EhrhartSeries(num, tuple(denominator), self.dim)

    def __str__(self) -> str:
        terms = [str(c) if i == 0 else f"{c}*t" if i == 1 else f"{c}*t^{i}" for i, c in enumerate(self.numerator) if c]
        den = {}
        for g in self.denominator:
            den[g] = den.get(g, 0) + 1
        dtxt = "".join(
            ("(1-t)" if g == 1 else f"(1-t^{g})") + (f"^{k}" if k > 1 else "") for g, k in sorted(den.items())
        )
        return f"({' + '.join(terms) or '0'}) / {dtxt}"


# accumulation over simplicial cones


def reduce_classes(classes: Dict[Tuple[int, ...], List[int]], d: int) -> EhrhartSeries:
    """Combine numerators over their own denominators into one series."""
    if not classes:
        return EhrhartSeries([0], (1,) * d, d)

    def mult_of(den):
        m: Dict[int, int] = {}
        for g in den:
            for e in _divisors(g):
                m[e] = m.get(e, 0) + 1
        return m

    mults = {den: mult_of(den) for den in classes}
    total: Dict[int, int] = {}
    for m in mults.values():
        for e, k in m.items():
            total[e] = max(total.get(e, 0), k)
    num = [0]
    for den, h in classes.items():
        part = list(h)
        for e, k in total.items():
            for _ in range(k - mults[den].get(e, 0)):
                part = poly_mul(part, psi(e))
        num = poly_add(num, part)
    # cancel common factors
    for e in sorted(total):
        while total[e] > 0:
            q, r = poly_divmod(num, psi(e))
            if r != [0]:
                break
            num = q
            total[e] -= 1
    if num == [0]:
        return EhrhartSeries([0], (1,) * d, d)
    # regroup into factors 1 - t^G, one per remaining factor 1 - t
    factors = []
    for _ in range(total.get(1, 0)):
        G = lcm(*[e for e, k in total.items() if k > 0])
        for e in _divisors(G):
            if total.get(e, 0) > 0:
                total[e] -= 1
            else:
                num = poly_mul(num, psi(e))
        factors.append(G)
    if any(k for k in total.values()):
        raise AssertionError("unbalanced cyclotomic factors")  # pragma: no cover
    return EhrhartSeries(num, tuple(factors), d)


def _parallelepiped_py(gens: np.ndarray, degs: np.ndarray, simplex: Sequence[int], xi) -> List[int]:
    """Exact fallback: degrees of the half-open parallelepiped points."""
    d = len(simplex)
    W = [[int(gens[g][r]) for g in simplex] for r in range(gens.shape[1])]
    D = abs(bareiss_det(W))
    excl = set(excluded_facets(gens, simplex, xi))
    # inverse by exact Gauss-Jordan
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(W)]
    for k in range(d):
        p = next(i for i in range(k, d) if aug[i][k] != 0)
        aug[k], aug[p] = aug[p], aug[k]
        piv = aug[k][k]
        aug[k] = [x / piv for x in aug[k]]
        for i in range(d):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    inv = [row[d:] for row in aug]
    cols = [tuple(int(inv[i][j] * D) % D for i in range(d)) for j in range(d)]
    seen = {tuple([0] * d)}
    frontier = [tuple([0] * d)]
    while frontier:
        nxt = []
        for z in frontier:
            for c in cols:
                y = tuple((a + b) % D for a, b in zip(z, c))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(seen) == D
    g = [int(degs[s]) for s in simplex]
    out = []
    for z in seen:
        deg = sum(a * b for a, b in zip(z, g)) // D
        deg += sum(g[i] for i in excl if z[i] == 0)
        out.append(deg)
    return out


def _block_histograms(gens, degs, blk, xis):
    """Per xi: {sorted degree tuple: histogram of point degrees} for one block."""
    K = xis.shape[0]
    sizes, ok = _kernels.abs_dets(gens, blk)
    out = [dict() for _ in range(K)]
    bad = list(np.nonzero(~ok)[0])
    sizes = np.where(ok, sizes, 0)
    offsets = np.zeros(len(blk) + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    pts = np.zeros((K, int(offsets[-1])), dtype=np.int64)
    good = _kernels.parallelepiped_degrees(gens, degs, blk, xis, sizes, offsets[:-1], pts)
    bad += [i for i in np.nonzero(~good)[0] if ok[i]]
    good &= ok
    gsort = np.sort(degs[blk], axis=1)
    uniq, inv = np.unique(gsort, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    inv_good = np.where(good, inv, -1)
    point_class = np.repeat(inv_good, sizes)
    for k in range(K):
        for u in range(len(uniq)):
            sel = pts[k][point_class == u]
            if len(sel):
                out[k][tuple(int(x) for x in uniq[u])] = np.bincount(sel)
    for i in bad:
        key = tuple(int(x) for x in np.sort(degs[blk[i]]))
        for k in range(K):
            h = np.bincount(np.array(_parallelepiped_py(gens, degs, list(blk[i]), xis[k]), dtype=np.int64))
            old = out[k].get(key)
            out[k][key] = h if old is None else _add_hist(old, h)
    return out


def _add_hist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    a = a.copy()
    a[: len(b)] += b
    return a


@dataclass
class SeriesConfig:
    threads: int = 1
    block_size: int = 100_000
    max_cones: Optional[int] = 50_000_000
    progress: Optional[object] = None


def ehrhart_series_multi(t: Triangulation, config: Optional[SeriesConfig] = None) -> List[EhrhartSeries]:
    """One series per generic point attached by ``stanley_mark``."""
    if t.xis is None:
        raise ValueError("triangulation has no half-open marking; call stanley_mark first")
    config = config or SeriesConfig()
    v = t.vrep
    gens = np.ascontiguousarray(v.generators, dtype=np.int64)
    degs = np.asarray(v.degrees, dtype=np.int64)
    xis = np.ascontiguousarray(t.xis, dtype=np.int64)
    K = xis.shape[0]
    acc: List[Dict[tuple, np.ndarray]] = [dict() for _ in range(K)]
    ncones = 0

    def merge(part):
        for k in range(K):
            for key, h in part[k].items():
                old = acc[k].get(key)
                acc[k][key] = h.astype(np.int64) if old is None else _add_hist(old, h)

    def check(n):
        if config.max_cones is not None and n > config.max_cones:
            from .volume import BudgetExceeded

            raise BudgetExceeded(f"triangulation exceeds {config.max_cones} simplicial cones")

    if config.threads <= 1:
        for blk in t.blocks(config.block_size):
            ncones += len(blk)
            check(ncones)
            merge(_block_histograms(gens, degs, blk, xis))
            if config.progress:
                config.progress(ncones)
    else:
        with ThreadPoolExecutor(config.threads) as pool:
            pending = []
            for blk in t.blocks(config.block_size):
                ncones += len(blk)
                check(ncones)
                pending.append(pool.submit(_block_histograms, gens, degs, blk, xis))
                if len(pending) >= 2 * config.threads:
                    merge(pending.pop(0).result())
            for f in pending:
                merge(f.result())
    out = []
    for k in range(K):
        classes = {key: [int(x) for x in h] for key, h in acc[k].items()}
        out.append(reduce_classes(classes, t.dim))
    return out


def ehrhart_series_closed(t: Triangulation, config: Optional[SeriesConfig] = None) -> EhrhartSeries:
    """Series of the closed polytope from a Stanley-marked triangulation."""
    from .triangulation import stanley_mark

    if t.xis is None:
        stanley_mark(t)
    return ehrhart_series_multi(t, config)[0]


def ehrhart_series(P: HPolytope, closed: bool = True, semiopen: bool = True,
                   config: Optional[SeriesConfig] = None) -> Dict[str, EhrhartSeries]:
    """Series of the closure and/or of the semiopen polytope in one pass."""
    from .dual_description import extreme_rays
    from .triangulation import interior_point, lex_triangulate, stanley_mark

    vrep = extreme_rays(P)
    t = lex_triangulate(vrep)
    keys = []
    points = []
    if closed:
        keys.append("closed")
        points.append(interior_point(vrep))
    if semiopen:
        keys.append("semiopen")
        if P.strict:
            stanley_mark(t, P)
            points.append(t.xis[0])
        else:
            points.append(interior_point(vrep))
    if not keys:
        return {}
    t.xis = np.vstack(points)
    series = ehrhart_series_multi(t, config)
    return dict(zip(keys, series))


# reciprocity


def reciprocity_transform(s: EhrhartSeries) -> EhrhartSeries:
    """Numerator ``h_s t^w + ... + h_0 t^{w+s}`` with ``w = sum g - d - s``."""
    d = len(s.denominator)
    h = s.numerator
    sdeg = len(h) - 1
    w = sum(s.denominator) - d - sdeg
    if w < 0:
        raise ValueError("negative shift: the series does not satisfy the reciprocity hypotheses")
    return EhrhartSeries([0] * w + list(reversed(h)), s.denominator, s.dim)


def reciprocity_shift(s: EhrhartSeries) -> int:
    return sum(s.denominator) - len(s.denominator) - (len(s.numerator) - 1)


def min_voters(s: EhrhartSeries) -> int:
    """Lowest exponent with a nonzero power-series coefficient."""
    for i, c in enumerate(s.numerator):
        if c:
            return i
    raise ValueError("the series is identically zero")


# quasipolynomials


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> List[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial (Newton form)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
    return poly


def _eval(poly: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


@dataclass
class QuasiPolynomial:
    period: int
    polys: List[List[Fraction]]  # index r = k mod period; ascending coefficients
    valid_from: int = 0

    @property
    def degree(self) -> int:
        return max(max((i for i, c in enumerate(p) if c), default=-1) for p in self.polys)

    def __call__(self, k: int) -> Fraction:
        return _eval(self.polys[k % self.period], k)

    def leading_coefficients(self) -> List[Fraction]:
        deg = self.degree
        return [p[deg] if len(p) > deg else Fraction(0) for p in self.polys]


class InterpolationMismatch(AssertionError):
    """The validation window disagrees with the interpolated quasipolynomial."""


def quasipolynomial(s: EhrhartSeries) -> QuasiPolynomial:
    """Per-residue interpolation, checked on a second window."""
    p = s.period
    d = len(s.denominator)
    start = max(0, s.rational_degree + 1)
    n = start + 2 * p * d
    coeffs = s.coefficients(n)
    polys = []
    for r in range(p):
        first = start + ((r - start) % p)
        xs = [first + p * j for j in range(d)]
        poly = _interpolate(xs, [coeffs[x] for x in xs])
        for j in range(d, 2 * d):
            x = first + p * j
            if x < n and _eval(poly, x) != coeffs[x]:
                raise InterpolationMismatch(f"residue {r}: mismatch at k = {x}")
        polys.append(poly)
    return QuasiPolynomial(p, polys, start)


# closed formulas for the Condorcet winner probability with four candidates

R13 = [261812975764725, 308449567353120, 165347938576012, 50600971266720, 9607752151310,
       1183838427360, 96296973756, 5130593760, 172122725, 3296640, 27472]

R0 = [4981367114669230129152000, 11069309139290261311979520, 11286725167650172468985856,
      6970525765323041332002816, 2896901556002851225731072, 857336679021412589010944,
      187293111169997407690752, 30935327102400429176832, 3923664152075008433664,
      385511913998009006208, 29422431828810359328, 1738486466127164288,
      78715287099505056, 2678620940814672, 66260942646564, 1124326347564,
      11698573833, 56262656]

# exponents k^10 .. k^14 of the printed source lack braces; read as k^{10} .. k^{14}
R2 = [9794451243189989376000, 921057250987916963020800, 1705900639387417842032640,
      1489106767895973053595648, 792353026020511342854144, 284373446368099671547904,
      72772788665361422238720, 13747699097527641501696, 1960073323091557035648,
      213683286033339310848, 17913763440866689440, 1153396601212907264,
      56538334354261872, 2071748534241792, 54936786331200, 995421043392,
      11023421961, 56262656]


def _horner(coeffs: Sequence[int], k: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * k + c
    return acc


def pcw_eval(k: int) -> Fraction:
    """Probability of a Condorcet winner with four candidates and ``k`` voters."""
    if k <= 0:
        raise ValueError("k must be positive")
    r = k % 4
    if r in (1, 3):
        den = 32768 * prod(i + k for i in range(2, 24, 2))
        return Fraction(_horner(R13, k) * (12 + k), den)
    if r == 0:
        den = 67108864 * prod((1 + 4 * i + k) * (2 + 4 * i + k) * (3 + 4 * i + k) for i in range(6))
        return Fraction(_horner(R0, k) * k, den)
    den = 67108864 * prod((4 * i + k) * (1 + 4 * i + k) * (3 + 4 * i + k) for i in range(6))
    return Fraction(_horner(R2, k) * k, den)


def odd_branch_polynomial() -> List[Fraction]:
    """``R_{1,3}(k) (12 + k) prod_{odd i <= 23} (i + k) / (23! * 131072)`` as coefficients."""
    p = [Fraction(c) for c in R13]
    for root in [12] + list(range(1, 24, 2)):
        new = [Fraction(0)] * (len(p) + 1)
        for i, c in enumerate(p):
            new[i] += root * c
            new[i + 1] += c
        p = new
    den = factorial(23) * 131072
    return [c / den for c in p]
