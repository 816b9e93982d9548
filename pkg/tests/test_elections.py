import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from constants import PROBABILITIES, VOLUMES
from votopes.elections import (
    EventId,
    PROBABILITIES as NEEDS,
    Tally,
    assemble_probability,
    build_polytope,
    event_forms,
    event_predicate,
    invert_preferences,
    majority_form,
    plurality_form,
    preference_orders,
    relabel_candidates,
)

profiles = st.lists(st.integers(0, 5), min_size=24, max_size=24)


def test_orders_are_lexicographic():
    orders = preference_orders(4)
    assert len(orders) == 24
    assert orders[0] == (1, 2, 3, 4) and orders[-1] == (4, 3, 2, 1)
    assert len(preference_orders(3)) == 6
    with pytest.raises(ValueError):
        preference_orders(5)


def test_forms():
    m = majority_form(4, 1, 2)
    assert m == tuple(-x for x in majority_form(4, 2, 1))
    assert sum(m) == 0
    p = plurality_form(4, 1, 2)
    assert p.count(1) == 6 and p.count(-1) == 6 and p.count(0) == 12
    with pytest.raises(ValueError):
        majority_form(4, 1, 1)
    with pytest.raises(ValueError):
        plurality_form(4, 1, 5)


def test_event_parsing():
    assert EventId.parse("B_St") is EventId.BSt
    assert EventId.parse("bsgrev") is EventId.BSgRev
    with pytest.raises(ValueError):
        EventId.parse("X")


def test_polytope_shapes():
    sizes = {"C": (3, 0), "E": (6, 0), "Q": (4, 0), "F": (5, 1), "T": (6, 0), "K": (4, 0),
             "BSt": (9, 0), "BSg": (6, 0), "BSgRev": (6, 0), "U": (0, 0)}
    for e, (ns, nc) in sizes.items():
        P = build_polytope(e)
        assert (len(P.strict), len(P.closed)) == (ns, nc)
        assert P.ambient_dim == 24
    with pytest.raises(ValueError):
        event_forms("BSgRev", variant="other")


@settings(max_examples=300, deadline=None)
@given(profiles)
def test_predicates_agree_with_inequalities(v):
    for e in EventId:
        assert event_predicate(e, v) == build_polytope(e).contains(v), e
    assert event_predicate("BSgRev", v, variant="listed") == build_polytope("BSgRev", variant="listed").contains(v)


@settings(max_examples=200, deadline=None)
@given(profiles)
def test_inversion_swaps_winner_and_loser(v):
    t, u = Tally(v), Tally(invert_preferences(v))
    for a in range(1, 5):
        assert t.is_condorcet_winner(a) == u.is_condorcet_loser(a)
    assert invert_preferences(invert_preferences(v)) == list(v)


@settings(max_examples=200, deadline=None)
@given(profiles, st.permutations([1, 2, 3, 4]))
def test_relabeling_moves_the_winner(v, perm):
    sigma = dict(zip([1, 2, 3, 4], perm))
    w = relabel_candidates(v, sigma)
    assert sum(w) == sum(v)
    t, u = Tally(v), Tally(w)
    for a in range(1, 5):
        assert t.is_condorcet_winner(a) == u.is_condorcet_winner(sigma[a])


def test_probability_assembly_from_volumes():
    for name, value in PROBABILITIES.items():
        assert assemble_probability(name, VOLUMES) == value, name


def test_condorcet_classes_sum_to_one():
    total = sum(assemble_probability(n, VOLUMES) for n in ("cw_and_cl", "cw_no_cl", "cl_no_cw", "no_cw_no_cl"))
    assert total == 1


def test_assembly_reports_missing_volumes():
    with pytest.raises(KeyError):
        assemble_probability("strict_borda", {"T": VOLUMES["T"]})
    with pytest.raises(ValueError):
        assemble_probability("nonsense", VOLUMES)
    assert set(NEEDS) == set(PROBABILITIES)
