"""Exact scalars, integer matrices and sparse polynomials.

Integers are Python ``int`` (arbitrary precision) and rationals are
``fractions.Fraction`` (always reduced, positive denominator).  Integer
matrices are numpy arrays; ``dtype=object`` holds big entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from . import _kernels

Exponent = Tuple[int, ...]


def as_int_rows(M) -> list:
    """Copy a matrix-like object into a list of lists of Python ints."""
    return [[int(x) for x in row] for row in M]


def bareiss_det(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination on Python ints."""
    A = as_int_rows(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for p in range(k + 1, n):
                if A[p][k] != 0:
                    A[k], A[p] = A[p], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M) -> int:
    """Exact determinant of a square integer matrix.

    Tries a machine-word Bareiss pass first and falls back to arbitrary
    precision when an intermediate value could overflow.
    """
    shape = np.shape(M)
    if len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError(f"determinant of a non-square matrix of shape {shape}")
    if shape[0] == 0:
        return 1
    try:
        A = np.array(M, dtype=np.int64)
    except OverflowError:
        return bareiss_det(M)
    if np.abs(A).max(initial=0) < 2**31:
        value, ok = _kernels.bareiss_det(A.copy())
        if ok:
            return int(value)
    return bareiss_det(M)


_PRIME = 2147483629  # largest prime below 2**31


def rank_mod_p(M, p: int = _PRIME) -> int:
    """Rank of an integer matrix over GF(p); a lower bound for the rank over Q."""
    A = np.array(M, dtype=object)
    if A.size == 0:
        return 0
    A = np.array(A % p, dtype=np.int64)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c].copy()
        # split the product to stay inside int64
        lo = A[r] & 0xFFFF
        hi = A[r] >> 16
        A[r + 1:] = (A[r + 1:] - ((below[:, None] * hi) % p * 65536 + below[:, None] * lo)) % p
        r += 1
        if r == rows:
            break
    return r


def rank(M) -> int:
    """Exact rank of an integer matrix.

    A rank over GF(p) equal to min(rows, cols) is already exact; otherwise
    fraction-free elimination over the integers decides.
    """
    A = as_int_rows(M)
    if A and A[0] and rank_mod_p(A) == min(len(A), len(A[0])):
        return min(len(A), len(A[0]))
    return _rank_exact(A)


def _rank_exact(A) -> int:
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        arc = A[r][c]
        for i in range(r + 1, rows):
            aic = A[i][c]
            A[i] = [(arc * A[i][j] - aic * A[r][j]) // prev for j in range(cols)]
        prev = arc
        r += 1
        if r == rows:
            break
    return r


def primitive(v: Iterable[int]) -> tuple:
    """Divide an integer vector by the gcd of its entries."""
    v = [int(x) for x in v]
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


class SparsePolynomial:
    """Multivariate polynomial with exact rational coefficients.

    Terms map dense exponent tuples (length ``nvars``) to nonzero
    ``Fraction`` coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = ()):
        self.nvars = int(nvars)
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {self.nvars} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c=1) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePolynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def binomial(cls, nvars: int, i: int, u: int) -> "SparsePolynomial":
        """``binom(y_i + u - 1, u - 1)`` as a polynomial in ``y_i``."""
        if u < 1:
            raise ValueError("group size must be positive")
        p = cls.constant(nvars, Fraction(1, factorial(u - 1)))
        y = cls.variable(nvars, i)
        for r in range(1, u):
            p = p * (y + cls.constant(nvars, r))
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "SparsePolynomial"):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return SparsePolynomial(self.nvars, terms)

    def __neg__(self):
        return SparsePolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = SparsePolynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def substitute_linear(self, images: Sequence["SparsePolynomial"]) -> "SparsePolynomial":
        """Replace variable ``j`` by the polynomial ``images[j]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars if images else 0
        out = SparsePolynomial(nv)
        for e, c in self.terms.items():
            term = SparsePolynomial.constant(nv, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"y{i + 1}^{k}" if k > 1 else f"y{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def poly_mul(p: SparsePolynomial, q: SparsePolynomial) -> SparsePolynomial:
    """Exact product of two sparse polynomials in the same variables."""
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    return p * q


def leading_form(p: SparsePolynomial) -> SparsePolynomial:
    """Homogeneous component of maximal total degree."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no leading form")
    top = p.total_degree()
    return SparsePolynomial(p.nvars, {e: c for e, c in p.terms.items() if sum(e) == top})


def binom_int(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
