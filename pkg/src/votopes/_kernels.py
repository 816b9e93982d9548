"""Compiled inner loops on machine words.

Every kernel reports whether it stayed inside the int64 range; callers
recompute flagged items with Python integers.  Overflow is detected by
shadowing each product in float64 and refusing anything above 2**62.
"""

import numba as nb
import numpy as np

_LIM = 2.0**62


@nb.njit(cache=True, nogil=True)
def bareiss_det(M):
    """Fraction-free determinant of ``M`` (destroyed).  Returns (det, ok)."""
    n = M.shape[0]
    if n == 0:
        return 1, True
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            p = -1
            for i in range(k + 1, n):
                if M[i, k] != 0:
                    p = i
                    break
            if p < 0:
                return 0, True
            for j in range(n):
                t = M[k, j]
                M[k, j] = M[p, j]
                M[p, j] = t
            sign = -sign
        akk = M[k, k]
        fk = float(akk)
        for i in range(k + 1, n):
            aik = M[i, k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        a = fk * float(M[i, j])
                        if abs(a) > _LIM:
                            return 0, False
                        M[i, j] = (akk * M[i, j]) // prev
                continue
            fi = float(aik)
            for j in range(k + 1, n):
                a = fk * float(M[i, j])
                b = fi * float(M[k, j])
                if abs(a) > _LIM or abs(b) > _LIM or abs(a - b) > _LIM:
                    return 0, False
                M[i, j] = (akk * M[i, j] - aik * M[k, j]) // prev
            M[i, k] = 0
        prev = akk
    return sign * M[n - 1, n - 1], True


@nb.njit(cache=True, nogil=True)
def abs_dets(gens, simp):
    """|det| of the generator matrix of every simplicial cone in ``simp``."""
    B, d = simp.shape
    out = np.zeros(B, np.int64)
    ok = np.ones(B, np.bool_)
    M = np.empty((d, d), np.int64)
    for b in range(B):
        for i in range(d):
            g = simp[b, i]
            for j in range(d):
                M[i, j] = gens[g, j]
        v, good = bareiss_det(M)
        out[b] = abs(v)
        ok[b] = good
    return out, ok


@nb.njit(cache=True, nogil=True)
def _gauss_jordan(M, d):
    """Fraction-free Gauss-Jordan on the first ``d`` columns of ``M``.

    On success every diagonal entry equals the final pivot ``delta`` and
    the remaining columns hold ``delta * A^{-1} * rhs``.  Returns
    (delta, ok); delta == 0 means singular.
    """
    ncols = M.shape[1]
    prev = 1
    for k in range(d):
        if M[k, k] == 0:
            p = -1
            for i in range(k + 1, d):
                if M[i, k] != 0:
                    p = i
                    break
            if p < 0:
                return 0, True
            for j in range(ncols):
                t = M[k, j]
                M[k, j] = M[p, j]
                M[p, j] = t
        akk = M[k, k]
        fk = float(akk)
        for i in range(d):
            if i == k:
                continue
            aik = M[i, k]
            fi = float(aik)
            for j in range(k + 1, ncols):
                a = fk * float(M[i, j])
                b = fi * float(M[k, j])
                if abs(a) > _LIM or abs(b) > _LIM or abs(a - b) > _LIM:
                    return 0, False
                M[i, j] = (akk * M[i, j] - aik * M[k, j]) // prev
            M[i, k] = 0
            if i < k:
                M[i, i] = akk
        prev = akk
    return prev, True


@nb.njit(cache=True, nogil=True)
def stanley_signs(gens, simp, xis):
    """First pass of the half-open decomposition.

    For each simplicial cone solve ``A c = xi`` (columns of A are the
    generators) for every row of ``xis``.  Facet ``i`` (opposite
    generator ``i``) is excluded iff ``c_i < 0``.  Outputs per cone:
    signed pivot ``delta`` (|delta| = |det|), an overflow flag, a tie
    flag (some ``c_i == 0``; needs the lexicographic rule) and the
    exclusion bitmask per xi.
    """
    B, d = simp.shape
    K = xis.shape[0]
    delta = np.zeros(B, np.int64)
    ok = np.ones(B, np.bool_)
    tie = np.zeros(B, np.bool_)
    masks = np.zeros((B, K), np.int64)
    M = np.empty((d, d + K), np.int64)
    for b in range(B):
        for r in range(d):
            for i in range(d):
                M[r, i] = gens[simp[b, i], r]
            for k in range(K):
                M[r, d + k] = xis[k, r]
        dl, good = _gauss_jordan(M, d)
        delta[b] = dl
        ok[b] = good
        if not good or dl == 0:
            continue
        for k in range(K):
            m = 0
            for i in range(d):
                s = M[i, d + k]
                if s == 0:
                    tie[b] = True
                elif (s < 0) != (dl < 0):
                    m |= 1 << i
            masks[b, k] = m
    return delta, ok, tie, masks


@nb.njit(cache=True, nogil=True)
def parallelepiped_degrees(gens, degs, simp, xis, sizes, offsets, out):
    """Degrees of the lattice points in every half-open parallelepiped.

    ``sizes[b]`` must be |det| of cone ``b``; results for xi ``k`` go to
    ``out[k, offsets[b]:offsets[b] + sizes[b]]``.  Returns per-cone ok
    flags; ``False`` means overflow or an inconsistent group count.
    """
    B, d = simp.shape
    K = xis.shape[0]
    ok = np.ones(B, np.bool_)
    M = np.empty((d, d + K + d), np.int64)
    excl = np.zeros(d, np.bool_)
    g = np.empty(d, np.int64)
    cand = np.empty(d, np.int64)
    for b in range(B):
        D = sizes[b]
        for r in range(d):
            for i in range(d):
                M[r, i] = gens[simp[b, i], r]
            for k in range(K):
                M[r, d + k] = xis[k, r]
            for j in range(d):
                M[r, d + K + j] = 1 if r == j else 0
        for i in range(d):
            g[i] = degs[simp[b, i]]
        dl, good = _gauss_jordan(M, d)
        if not good or dl == 0 or abs(dl) != D:
            ok[b] = False
            continue
        sgn = 1 if dl > 0 else -1
        # group Z^d / A Z^d as residues q = A^{-1} x mod 1, scaled by D
        elems = np.zeros((D, d), np.int64)
        count = 1
        head = 0
        while head < count and count <= D:
            for j in range(d):
                for i in range(d):
                    cand[i] = (elems[head, i] + sgn * M[i, d + K + j]) % D
                found = False
                for e in range(count):
                    same = True
                    for i in range(d):
                        if elems[e, i] != cand[i]:
                            same = False
                            break
                    if same:
                        found = True
                        break
                if not found:
                    if count == D:
                        count += 1
                        break
                    for i in range(d):
                        elems[count, i] = cand[i]
                    count += 1
            head += 1
        if count != D:
            ok[b] = False
            continue
        for k in range(K):
            for i in range(d):
                s = M[i, d + k]
                if s == 0:
                    for j in range(d):
                        if M[i, d + K + j] != 0:
                            s = M[i, d + K + j]
                            break
                excl[i] = (s < 0) != (dl < 0)
            for e in range(D):
                tot = 0
                for i in range(d):
                    tot += elems[e, i] * g[i]
                dg = tot // D
                for i in range(d):
                    if excl[i] and elems[e, i] == 0:
                        dg += g[i]
                out[k, offsets[b] + e] = dg
    return ok


@nb.njit(cache=True, nogil=True)
def box_coefficients_mod(a, ext, p):
    """Top box coefficient of prod_i 1/(1 - sum_j a[c, i, j] t_j) mod ``p``.

    ``a``: int64 array (cones, m, J) reduced mod p (p < 2**31).
    ``ext``: exponent bounds e_1..e_J.  Returns one residue per cone.
    """
    C, m, J = a.shape
    size = 1
    for j in range(J):
        size *= ext[j] + 1
    strides = np.empty(J, np.int64)
    s = 1
    for j in range(J - 1, -1, -1):
        strides[j] = s
        s *= ext[j] + 1
    res = np.zeros(C, np.int64)
    G = np.empty(size, np.int64)
    idx = np.zeros(J, np.int64)
    for c in range(C):
        G[:] = 0
        G[0] = 1
        for i in range(m):
            for j in range(J):
                idx[j] = 0
            for pos in range(size):
                if pos > 0:
                    # advance the mixed-radix counter
                    j = J - 1
                    while True:
                        idx[j] += 1
                        if idx[j] <= ext[j]:
                            break
                        idx[j] = 0
                        j -= 1
                acc = G[pos]
                for j in range(J):
                    if idx[j] > 0:
                        acc = (acc + a[c, i, j] * G[pos - strides[j]]) % p
                G[pos] = acc
        res[c] = G[size - 1]
    return res


@nb.njit(cache=True, nogil=True)
def box_coefficients_float(a, ext):
    """Same recursion as ``box_coefficients_mod`` in float64.

    Every term is nonnegative, so the float result has tiny relative
    error; used only to bound the exact integers for reconstruction.
    """
    C, m, J = a.shape
    size = 1
    for j in range(J):
        size *= ext[j] + 1
    strides = np.empty(J, np.int64)
    s = 1
    for j in range(J - 1, -1, -1):
        strides[j] = s
        s *= ext[j] + 1
    res = np.zeros(C, np.float64)
    G = np.empty(size, np.float64)
    idx = np.zeros(J, np.int64)
    for c in range(C):
        G[:] = 0.0
        G[0] = 1.0
        for i in range(m):
            for j in range(J):
                idx[j] = 0
            for pos in range(size):
                if pos > 0:
                    j = J - 1
                    while True:
                        idx[j] += 1
                        if idx[j] <= ext[j]:
                            break
                        idx[j] = 0
                        j -= 1
                acc = G[pos]
                for j in range(J):
                    if idx[j] > 0:
                        acc += a[c, i, j] * G[pos - strides[j]]
                G[pos] = acc
        res[c] = G[size - 1]
    return res
