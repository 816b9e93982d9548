"""Brute-force counts over all profiles with a fixed number of voters.

Profiles with ``k`` voters are the weak compositions of ``k`` into
``n!`` parts.  The compiled enumerator walks them in lexicographically
decreasing order and keeps a tally vector up to date incrementally; an
event is a list of comparisons between tally entries.

Two tallies are available.  The *semantic* one counts, from the ballots,
how many voters rank ``a`` above ``b`` and how many rank ``a`` first; the
events are stated as "a beats b" / "a has more first places than b".  The
*inequality* one evaluates the defining linear forms of the polytope.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numba as nb
import numpy as np

from .elections import EventId, build_polytope, majority_form, preference_orders

DEFAULT_BUDGET = 10**8


class OracleBudgetExceeded(RuntimeError):
    pass


def profile_count(n: int, k: int) -> int:
    N = len(preference_orders(n))
    return comb(k + N - 1, N - 1)


# tallies and rules


def semantic_features(n: int):
    """Per order: voters ranking a over b (all ordered pairs), then first places."""
    orders = preference_orders(n)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    idx = {p: i for i, p in enumerate(pairs)}
    F = len(pairs) + n + 1  # last feature is constantly zero
    phi = np.zeros((len(orders), F), dtype=np.int64)
    for r, o in enumerate(orders):
        for i, a in enumerate(o):
            for b in o[i + 1:]:
                phi[r, idx[a, b]] = 1
        phi[r, len(pairs) + o[0] - 1] = 1
    return phi, idx, len(pairs)


def semantic_rules(event, n: int = 4, variant: str = "negated"):
    """Comparisons ``(kind, a, b, strict)`` describing the event in words.

    kind "beats": more voters rank a above b than b above a;
    kind "first": a has more first places than b (or as many, if not strict).
    """
    e = EventId.parse(event)
    rest = range(2, n + 1)
    beats = lambda a, b: ("beats", a, b, True)
    first = lambda a, b, strict=True: ("first", a, b, strict)
    linear = [beats(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    if e is EventId.U:
        return []
    if e is EventId.C:
        return [beats(1, j) for j in rest]
    if e is EventId.E:
        return [beats(1, j) for j in rest] + [first(1, j) for j in rest]
    if e is EventId.Q:
        return [first(1, 2)] + [first(2, j) for j in range(3, n + 1)] + [beats(1, 2)]
    if e is EventId.F:
        return [beats(1, j) for j in rest] + [first(1, j) for j in range(3, n + 1)] + [first(2, 1, False)]
    if e is EventId.T:
        return linear
    if e is EventId.K:
        return [beats(i, i + 1) for i in range(1, n)] + [beats(n, 1)]
    if e is EventId.BSt:
        return linear + [first(j + 1, j) for j in range(1, n)]
    if e is EventId.BSg:
        return [beats(j, 1) for j in rest] + [first(1, j) for j in rest]
    if e is EventId.BSgRev:
        if variant == "listed":
            return [beats(1, 2), beats(1, 3), beats(2, 3)] + [first(j, 1) for j in rest]
        return [beats(1, j) for j in rest] + [first(j, 1) for j in rest]
    raise ValueError(e)  # pragma: no cover


def semantic_system(event, n: int = 4, variant: str = "negated"):
    """Features and comparison table (lhs, rhs, strict) of the semantic tally."""
    phi, idx, npairs = semantic_features(n)
    lhs, rhs, strict = [], [], []
    for kind, a, b, s in semantic_rules(event, n, variant):
        if kind == "beats":
            lhs.append(idx[a, b])
            rhs.append(idx[b, a])
        else:
            lhs.append(npairs + a - 1)
            rhs.append(npairs + b - 1)
        strict.append(s)
    return phi, np.array(lhs, np.int64), np.array(rhs, np.int64), np.array(strict, np.bool_)


def inequality_system(event, n: int = 4, variant: str = "negated"):
    """Features = values of the defining forms; each must exceed the zero feature."""
    P = build_polytope(event, n, variant)
    forms = list(P.strict) + list(P.closed)
    N = P.ambient_dim
    phi = np.zeros((N, len(forms) + 1), dtype=np.int64)
    for j, f in enumerate(forms):
        phi[:, j] = f
    zero = len(forms)
    lhs = np.arange(len(forms), dtype=np.int64)
    rhs = np.full(len(forms), zero, dtype=np.int64)
    strict = np.array([True] * len(P.strict) + [False] * len(P.closed), dtype=np.bool_)
    return phi, lhs, rhs, strict


@nb.njit(cache=True, nogil=True)
def _ok(T, lhs, rhs, strict):
    for q in range(lhs.shape[0]):
        a = T[lhs[q]]
        b = T[rhs[q]]
        if strict[q]:
            if a <= b:
                return False
        elif a < b:
            return False
    return True


@nb.njit(cache=True, nogil=True)
def _count_first_fixed(k, v0, phi, lhs, rhs, strict):
    """Count compositions of k with v[0] = v0 that satisfy all comparisons."""
    N, F = phi.shape
    T = np.zeros(F, np.int64)
    for f in range(F):
        T[f] = v0 * phi[0, f]
    rest = k - v0
    if N == 1:
        return 1 if (rest == 0 and _ok(T, lhs, rhs, strict)) else 0
    v = np.zeros(N, np.int64)
    # start: all remaining voters on order 1
    v[1] = rest
    for f in range(F):
        T[f] += rest * phi[1, f]
    count = 0
    while True:
        if _ok(T, lhs, rhs, strict):
            count += 1
        # rightmost positive entry among positions 1..N-2
        j = N - 2
        while j >= 1 and v[j] == 0:
            j -= 1
        if j < 1:
            break
        v[j] -= 1
        for f in range(F):
            T[f] -= phi[j, f]
        last = v[N - 1]
        if j + 1 < N - 1:
            v[j + 1] = last + 1
            v[N - 1] = 0
            for f in range(F):
                T[f] += (last + 1) * phi[j + 1, f] - last * phi[N - 1, f]
        else:
            v[N - 1] = last + 1
            for f in range(F):
                T[f] += phi[N - 1, f]
    return count


def count_with_system(system, k: int, threads: int = 1) -> int:
    phi, lhs, rhs, strict = system
    phi = np.ascontiguousarray(phi)
    if k < 0:
        return 0
    jobs = range(k, -1, -1)
    run = lambda v0: int(_count_first_fixed(k, v0, phi, lhs, rhs, strict))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return sum(pool.map(run, jobs))
    return sum(run(v0) for v0 in jobs)


@dataclass
class OracleConfig:
    threads: int = 1
    budget: int = DEFAULT_BUDGET


def count_event(event, n: int = 4, k: int = 0, method: str = "semantic", variant: str = "negated",
                config: Optional[OracleConfig] = None) -> int:
    """Number of profiles with ``k`` voters in the event."""
    config = config or OracleConfig()
    total = profile_count(n, k)
    if total > config.budget:
        raise OracleBudgetExceeded(f"{total} profiles exceed the budget of {config.budget}")
    if method == "semantic":
        system = semantic_system(event, n, variant)
    elif method == "inequalities":
        system = inequality_system(event, n, variant)
    else:
        raise ValueError(f"unknown method {method!r}")
    return count_with_system(system, k, config.threads)


def min_voters_bruteforce(event, n: int = 4, max_k: int = 9, variant: str = "negated",
                          config: Optional[OracleConfig] = None) -> int:
    """Smallest number of voters realizing the event."""
    config = config or OracleConfig()
    for k in range(0, max_k + 1):
        if count_event(event, n, k, variant=variant, config=config) > 0:
            return k
    raise OracleBudgetExceeded(f"event not realized with at most {max_k} voters")


# exhaustive profile arrays for small k


def all_profiles(n: int, k: int) -> np.ndarray:
    """All profiles with ``k`` voters as rows (stars and bars)."""
    N = len(preference_orders(n))
    rows = []
    for bars in itertools.combinations(range(k + N - 1), N - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(k + N - 2 - prev)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, N)


@dataclass
class ExclusionResult:
    ok: bool
    k: int
    counts: Dict[str, int]
    ties: int
    total: int
    overlaps: int = 0


def mutual_exclusion_check(k: int, n: int = 4) -> ExclusionResult:
    """Every tie-free profile lies in exactly one Condorcet class.

    Classes: linear majority order (one of the 24 relabelings of T),
    winner without loser, loser without winner, and a majority 4-cycle (one
    of the 6 relabelings of K).  Profiles with a pairwise tie are counted
    separately.
    """
    if n != 4:
        raise ValueError("the classification is stated for four candidates")
    if k > 5:
        raise ValueError("k must be at most 5")
    V = all_profiles(n, k)
    margin = {}
    for a in range(1, 5):
        for b in range(1, 5):
            if a != b:
                margin[a, b] = V @ np.array(majority_form(n, a, b))
    tie = np.zeros(len(V), bool)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            tie |= margin[a, b] == 0
    beats = lambda a, b: margin[a, b] > 0
    winner = np.zeros(len(V), bool)
    loser = np.zeros(len(V), bool)
    for a in range(1, 5):
        others = [b for b in range(1, 5) if b != a]
        winner |= np.logical_and.reduce([beats(a, b) for b in others])
        loser |= np.logical_and.reduce([beats(b, a) for b in others])
    linear = np.zeros(len(V), np.int64)
    for perm in itertools.permutations(range(1, 5)):
        linear += np.logical_and.reduce([beats(perm[i], perm[j]) for i in range(4) for j in range(i + 1, 4)])
    cycle = np.zeros(len(V), np.int64)
    for rest in itertools.permutations((2, 3, 4)):
        c = (1,) + rest + (1,)
        cycle += np.logical_and.reduce([beats(c[i], c[i + 1]) for i in range(4)])
    cw_no_cl = winner & ~loser
    cl_no_cw = loser & ~winner
    member = linear + cw_no_cl.astype(np.int64) + cl_no_cw.astype(np.int64) + cycle
    free = ~tie
    counts = {
        "linear": int(linear[free].sum()),
        "cw_no_cl": int(cw_no_cl[free].sum()),
        "cl_no_cw": int(cl_no_cw[free].sum()),
        "cycle": int(cycle[free].sum()),
    }
    overlaps = int((member[free] != 1).sum())
    ties = int(tie.sum())
    total = len(V)
    ok = overlaps == 0 and sum(counts.values()) + ties == total == profile_count(n, k)
    return ExclusionResult(ok, k, counts, ties, total, overlaps)
