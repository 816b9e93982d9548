from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from votopes.elections import EventId, build_polytope, event_predicate, invert_preferences
from votopes.oracle import (
    OracleBudgetExceeded,
    OracleConfig,
    all_profiles,
    count_event,
    min_voters_bruteforce,
    mutual_exclusion_check,
    profile_count,
)


def test_profile_enumeration():
    for k in range(4):
        V = all_profiles(4, k)
        assert len(V) == comb(k + 23, 23) == profile_count(4, k)
        assert (V.sum(axis=1) == k).all()
        assert len({tuple(r) for r in V.tolist()}) == len(V)


def test_counts_match_python_predicates():
    V = all_profiles(4, 3)
    for e in EventId:
        expected = sum(event_predicate(e, v) for v in V.tolist())
        assert count_event(e, 4, 3) == expected
        assert count_event(e, 4, 3, method="inequalities") == expected


@pytest.mark.parametrize("n", [2, 3])
def test_small_candidate_numbers(n):
    for k in range(6):
        V = all_profiles(n, k)
        for e in ("C", "T"):
            P = build_polytope(e, n)
            assert count_event(e, n, k) == sum(P.contains(v) for v in V.tolist())


def test_threads_do_not_change_counts():
    assert count_event("K", 4, 6, config=OracleConfig(threads=3)) == count_event("K", 4, 6)


def test_budget():
    with pytest.raises(OracleBudgetExceeded):
        count_event("C", 4, 12, config=OracleConfig(budget=1000))
    with pytest.raises(ValueError):
        count_event("C", 4, 2, method="guess")


def test_mutual_exclusion_examples():
    r1 = mutual_exclusion_check(1)
    assert r1.ok and r1.counts["linear"] == 24 and r1.ties == 0
    r2 = mutual_exclusion_check(2)
    assert r2.ok and r2.ties > 0
    r3 = mutual_exclusion_check(3)
    assert r3.ok and sum(r3.counts.values()) + r3.ties == comb(26, 23) == 2600


@pytest.mark.parametrize("k", range(6))
def test_inversion_duality(k):
    r = mutual_exclusion_check(k)
    assert r.ok
    assert r.counts["cw_no_cl"] == r.counts["cl_no_cw"]


def test_min_voters_small_events():
    assert min_voters_bruteforce("T") == 1
    assert min_voters_bruteforce("BSgRev") == 3
    with pytest.raises(OracleBudgetExceeded):
        min_voters_bruteforce("BSt", max_k=4)


def test_relabeling_invariance_of_counts():
    # candidate 2 as Condorcet winner: same count as candidate 1
    from votopes.elections import majority_form
    from votopes.oracle import count_with_system, inequality_system
    from votopes.polytope import HPolytope

    P = HPolytope(24, strict=[majority_form(4, 2, j) for j in (1, 3, 4)])
    phi = np.array([list(f) for f in P.strict] + [[0] * 24], dtype=np.int64).T.copy()
    system = (phi, np.arange(3), np.full(3, 3), np.ones(3, bool))
    for k in range(1, 6):
        assert count_with_system(system, k) == count_event("C", 4, k)
