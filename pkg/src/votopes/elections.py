"""Preference orders, profiles, election events and their polytopes.

Preference orders are permutations of the candidates ``1..n`` (best
first) listed in lexicographic order, so for four candidates index 0 is
1>2>3>4 and index 23 is 4>3>2>1.  A profile is the vector of voter
counts per order.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .polytope import HPolytope, LinearForm

MAX_CANDIDATES = 4


class EventId(str, enum.Enum):
    C = "C"
    Q = "Q"
    E = "E"
    F = "F"
    T = "T"
    K = "K"
    BSt = "BSt"
    BSg = "BSg"
    BSgRev = "BSgRev"
    U = "U"

    @classmethod
    def parse(cls, name) -> "EventId":
        if isinstance(name, cls):
            return name
        key = str(name).replace("_", "")
        for e in cls:
            if e.value.lower() == key.lower():
                return e
        raise ValueError(f"unknown event {name!r}")


# the two readings of the reverse strong Borda system
BSGREV_VARIANTS = ("negated", "listed")


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("need at least two candidates")
    if n > MAX_CANDIDATES:
        raise ValueError(f"{n} candidates not supported (at most {MAX_CANDIDATES})")


@lru_cache(maxsize=None)
def preference_orders(n: int) -> Tuple[Tuple[int, ...], ...]:
    """All rankings of ``1..n`` in lexicographic order."""
    _check_n(n)
    return tuple(itertools.permutations(range(1, n + 1)))


def order_index(order: Sequence[int]) -> int:
    return preference_orders(len(order)).index(tuple(order))


def _check_pair(n: int, j: int, j2: int) -> None:
    _check_n(n)
    if j == j2:
        raise ValueError("a candidate is not compared with itself")
    if not (1 <= j <= n and 1 <= j2 <= n):
        raise ValueError(f"candidates must lie in 1..{n}")


def majority_form(n: int, j: int, j2: int) -> LinearForm:
    """Margin of ``j`` over ``j2`` in the pairwise majority vote."""
    _check_pair(n, j, j2)
    return tuple(1 if o.index(j) < o.index(j2) else -1 for o in preference_orders(n))


def plurality_form(n: int, j: int, j2: int) -> LinearForm:
    """First places of ``j`` minus first places of ``j2``."""
    _check_pair(n, j, j2)
    return tuple(1 if o[0] == j else (-1 if o[0] == j2 else 0) for o in preference_orders(n))


def _neg(f: LinearForm) -> LinearForm:
    return tuple(-c for c in f)


def event_forms(event, n: int = 4, variant: str = "negated"):
    """(strict, closed) forms of an event as in the defining tables."""
    e = EventId.parse(event)
    _check_n(n)
    maj = lambda a, b: majority_form(n, a, b)
    plu = lambda a, b: plurality_form(n, a, b)
    others = range(2, n + 1)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    closed: List[LinearForm] = []
    if e is EventId.U:
        strict = []
    elif e is EventId.C:
        strict = [maj(1, j) for j in others]
    elif e is EventId.E:
        strict = [maj(1, j) for j in others] + [plu(1, j) for j in others]
    elif e is EventId.Q:
        strict = [plu(1, 2)] + [plu(2, j) for j in range(3, n + 1)] + [maj(1, 2)]
    elif e is EventId.F:
        strict = [maj(1, j) for j in others] + [plu(1, j) for j in range(3, n + 1)]
        closed = [_neg(plu(1, 2))]
    elif e is EventId.T:
        strict = [maj(a, b) for a, b in pairs]
    elif e is EventId.K:
        # the majority cycle 1 > 2 > ... > n > 1
        strict = [maj(i, i + 1) for i in range(1, n)] + [maj(n, 1)]
    elif e is EventId.BSt:
        strict = [maj(a, b) for a, b in pairs] + [plu(j + 1, j) for j in range(1, n)]
    elif e is EventId.BSg:
        strict = [maj(j, 1) for j in others] + [plu(1, j) for j in others]
    elif e is EventId.BSgRev:
        if variant == "negated":
            strict = [maj(1, j) for j in others] + [plu(j, 1) for j in others]
        elif variant == "listed":
            if n != 4:
                raise ValueError("the listed reverse strong Borda system exists for 4 candidates only")
            strict = [maj(1, 2), maj(1, 3), maj(2, 3)] + [plu(j, 1) for j in others]
        else:
            raise ValueError(f"unknown variant {variant!r}; expected one of {BSGREV_VARIANTS}")
    else:  # pragma: no cover
        raise ValueError(e)
    return strict, closed


def build_polytope(event, n: int = 4, variant: str = "negated") -> HPolytope:
    """Semiopen polytope of an event inside the unit simplex of profiles."""
    e = EventId.parse(event)
    strict, closed = event_forms(e, n, variant)
    name = e.value if variant == "negated" or e is not EventId.BSgRev else e.value + "_listed"
    return HPolytope(len(preference_orders(n)), closed=closed, strict=strict, name=name)


# ballot semantics


def _check_profile(v, n: int) -> List[int]:
    v = [int(x) for x in v]
    if len(v) != len(preference_orders(n)):
        raise ValueError(f"profile must have {len(preference_orders(n))} entries, got {len(v)}")
    if any(x < 0 for x in v):
        raise ValueError("profile entries must be nonnegative")
    return v


def pairwise_support(v, n: int = 4) -> Dict[Tuple[int, int], int]:
    """Number of voters ranking ``a`` above ``b`` for every ordered pair."""
    v = _check_profile(v, n)
    sup = {(a, b): 0 for a in range(1, n + 1) for b in range(1, n + 1) if a != b}
    for o, c in zip(preference_orders(n), v):
        if c:
            for i, a in enumerate(o):
                for b in o[i + 1:]:
                    sup[a, b] += c
    return sup


def first_places(v, n: int = 4) -> Dict[int, int]:
    v = _check_profile(v, n)
    fp = {a: 0 for a in range(1, n + 1)}
    for o, c in zip(preference_orders(n), v):
        fp[o[0]] += c
    return fp


class Tally:
    """Majority and plurality data of a profile."""

    def __init__(self, v, n: int = 4):
        self.n = n
        self.support = pairwise_support(v, n)
        self.first = first_places(v, n)

    def beats(self, a: int, b: int) -> bool:
        return self.support[a, b] > self.support[b, a]

    def more_first(self, a: int, b: int) -> bool:
        return self.first[a] > self.first[b]

    def is_condorcet_winner(self, a: int) -> bool:
        return all(self.beats(a, b) for b in range(1, self.n + 1) if b != a)

    def is_condorcet_loser(self, a: int) -> bool:
        return all(self.beats(b, a) for b in range(1, self.n + 1) if b != a)

    def majority_linear(self, ranking: Sequence[int]) -> bool:
        """Whether majority voting yields exactly the strict order ``ranking``."""
        return all(self.beats(a, b) for i, a in enumerate(ranking) for b in ranking[i + 1:])

    def plurality_linear(self, ranking: Sequence[int]) -> bool:
        return all(self.more_first(a, b) for a, b in zip(ranking, ranking[1:]))


def event_predicate(event, v, n: int = 4, variant: str = "negated") -> bool:
    """Evaluate an event on a profile from the ballots themselves."""
    e = EventId.parse(event)
    t = Tally(v, n)
    cands = range(1, n + 1)
    rest = range(2, n + 1)
    if e is EventId.U:
        return True
    if e is EventId.C:
        return t.is_condorcet_winner(1)
    if e is EventId.E:
        # Condorcet winner 1 is also the unique plurality winner
        return t.is_condorcet_winner(1) and all(t.more_first(1, j) for j in rest)
    if e is EventId.Q:
        # 1 leads the plurality vote, 2 is the unique runner-up, 1 wins the runoff
        return (
            t.more_first(1, 2)
            and all(t.more_first(2, j) for j in range(3, n + 1))
            and t.beats(1, 2)
        )
    if e is EventId.F:
        # Condorcet winner 1 reaches the runoff behind (or level with) 2
        return (
            t.is_condorcet_winner(1)
            and t.first[2] >= t.first[1]
            and all(t.more_first(1, j) for j in range(3, n + 1))
        )
    if e is EventId.T:
        return t.majority_linear(tuple(cands))
    if e is EventId.K:
        cyc = list(cands) + [1]
        return all(t.beats(a, b) for a, b in zip(cyc, cyc[1:]))
    if e is EventId.BSt:
        return t.majority_linear(tuple(cands)) and t.plurality_linear(tuple(reversed(cands)))
    if e is EventId.BSg:
        return t.is_condorcet_loser(1) and all(t.more_first(1, j) for j in rest)
    if e is EventId.BSgRev:
        plurality_loser = all(t.more_first(j, 1) for j in rest)
        if variant == "listed":
            return t.beats(1, 2) and t.beats(1, 3) and t.beats(2, 3) and plurality_loser
        return t.is_condorcet_winner(1) and plurality_loser
    raise ValueError(e)  # pragma: no cover


def satisfies(P: HPolytope, v) -> bool:
    """Membership of a profile in a polytope via its inequalities."""
    return P.contains(v)


@lru_cache(maxsize=None)
def inversion_permutation(n: int) -> Tuple[int, ...]:
    """Index of the reversed order for every order index."""
    orders = preference_orders(n)
    pos = {o: i for i, o in enumerate(orders)}
    return tuple(pos[o[::-1]] for o in orders)


def invert_preferences(v, n: int = None):
    """Profile obtained by reversing every voter's ranking."""
    v = [int(x) for x in v]
    if n is None:
        n = {2: 2, 6: 3, 24: 4}.get(len(v))
        if n is None:
            raise ValueError(f"profile length {len(v)} is not n! for a supported n")
    perm = inversion_permutation(n)
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return out


def relabel_candidates(v, sigma: Mapping[int, int], n: int = 4):
    """Profile after renaming candidate ``a`` to ``sigma[a]``."""
    v = _check_profile(v, n)
    orders = preference_orders(n)
    pos = {o: i for i, o in enumerate(orders)}
    out = [0] * len(v)
    for o, c in zip(orders, v):
        out[pos[tuple(sigma[a] for a in o)]] += c
    return out


# probabilities for large electorates

PROBABILITIES = {
    "p_CW": ("C",),
    "runoff_win": ("Q",),
    "condorcet_efficiency": ("C", "E"),
    "runoff_efficiency": ("C", "E", "F"),
    "cw_and_cl": ("T",),
    "cw_no_cl": ("C", "T"),
    "cl_no_cw": ("C", "T"),
    "no_cw_no_cl": ("K",),
    "strict_borda": ("BSt", "T"),
    "strong_borda": ("BSg", "C"),
    "reverse_strong_borda": ("BSgRev", "C"),
}

PROBABILITY_LABELS = {
    "p_CW": "Condorcet winner exists",
    "runoff_win": "plurality winner wins the runoff",
    "condorcet_efficiency": "Condorcet efficiency of plurality",
    "runoff_efficiency": "Condorcet efficiency of plurality runoff",
    "cw_and_cl": "Condorcet winner and loser",
    "cw_no_cl": "Condorcet winner, no loser",
    "cl_no_cw": "Condorcet loser, no winner",
    "no_cw_no_cl": "neither winner nor loser",
    "strict_borda": "strict Borda paradox",
    "strong_borda": "strong Borda paradox",
    "reverse_strong_borda": "reverse strong Borda paradox",
}


def assemble_probability(name: str, volumes: Mapping[str, Fraction], n: int = 4) -> Fraction:
    """Combine exact event volumes into a limiting probability."""
    if name not in PROBABILITIES:
        raise ValueError(f"unknown probability {name!r}")
    vol = {EventId.parse(k).value: Fraction(v) for k, v in volumes.items()}
    missing = [e for e in PROBABILITIES[name] if e not in vol]
    if missing:
        raise KeyError(f"{name} needs the volumes of {', '.join(missing)}")
    nfact = len(preference_orders(n))
    pairs = n * (n - 1)
    p_cw = n * vol.get("C", Fraction(0))
    if name == "p_CW":
        return p_cw
    if name == "runoff_win":
        return pairs * vol["Q"]
    if name == "condorcet_efficiency":
        return n * vol["E"] / p_cw
    if name == "runoff_efficiency":
        return (n * vol["E"] + pairs * vol["F"]) / p_cw
    if name == "cw_and_cl":
        return nfact * vol["T"]
    if name in ("cw_no_cl", "cl_no_cw"):
        return p_cw - nfact * vol["T"]
    if name == "no_cw_no_cl":
        if n != 4:
            raise ValueError("the cycle class is defined for four candidates")
        return 6 * vol["K"]
    if name == "strict_borda":
        return vol["BSt"] / vol["T"]
    if name == "strong_borda":
        return n * vol["BSg"] / p_cw
    if name == "reverse_strong_borda":
        return n * vol["BSgRev"] / p_cw
    raise ValueError(name)  # pragma: no cover
