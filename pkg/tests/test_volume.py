from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import cones
from votopes.dual_description import extreme_rays
from votopes.elections import build_polytope
from votopes.polytope import HPolytope
from votopes.triangulation import lex_triangulate
from votopes.volume import (
    BudgetExceeded,
    VolumeConfig,
    compute_volume,
    format_decimal,
    normalized_volume,
    should_symmetrize,
    volume_report,
)

DIRECT = VolumeConfig(symmetrize="off")


def test_unit_simplex():
    assert compute_volume(HPolytope(5), DIRECT).value == 1


def test_half_simplex():
    # x1 >= x2 cuts the unit 1-simplex in half
    assert compute_volume(HPolytope(2, closed=[(1, -1)]), DIRECT).value == Fraction(1, 2)


def test_strictness_does_not_change_volume():
    P = HPolytope(3, strict=[(1, -1, 0)], closed=[(0, 1, -1)])
    Q = HPolytope(3, closed=[(1, -1, 0), (0, 1, -1)])
    assert compute_volume(P, DIRECT).value == compute_volume(Q, DIRECT).value == Fraction(1, 6)


@settings(max_examples=60, deadline=None)
@given(cones, st.randoms(use_true_random=False))
def test_order_threads_and_blocks_do_not_matter(data, rnd):
    n, forms, _ = data
    v = extreme_rays(HPolytope(n, closed=forms))
    if v.dim != n:
        return
    base = normalized_volume(lex_triangulate(v)).value
    perm = list(range(len(v)))
    rnd.shuffle(perm)
    other = normalized_volume(lex_triangulate(v, order=perm), VolumeConfig(threads=2, block_size=1)).value
    assert base == other


def test_relabeling_invariance():
    # candidate 3 as Condorcet winner: relabel the coordinates of C
    from votopes.elections import preference_orders

    orders = preference_orders(3)
    swap = {1: 3, 3: 1, 2: 2}
    perm = [orders.index(tuple(swap[a] for a in o)) for o in orders]
    P = build_polytope("C", 3)
    assert compute_volume(P.relabel(perm), DIRECT).value == compute_volume(P, DIRECT).value == Fraction(5, 16)


def test_three_candidate_values():
    vol = {e: compute_volume(build_polytope(e, 3), DIRECT).value for e in ("C", "T", "BSt", "BSg", "BSgRev", "E")}
    assert 3 * vol["C"] == Fraction(15, 16)
    assert 6 * vol["T"] == Fraction(15, 16)  # with 3 candidates a winner implies a loser
    assert vol["BSt"] / vol["T"] == Fraction(1, 90)
    assert 3 * vol["BSg"] / (3 * vol["C"]) == Fraction(4, 135)
    assert 3 * vol["BSgRev"] / (3 * vol["C"]) == Fraction(17, 540)
    assert 3 * vol["E"] / (3 * vol["C"]) == Fraction(119, 135)


def test_budget():
    with pytest.raises(BudgetExceeded):
        compute_volume(build_polytope("C"), VolumeConfig(symmetrize="off", max_cones=100))


def test_symmetrize_modes():
    assert should_symmetrize(build_polytope("C"), "auto")
    assert not should_symmetrize(build_polytope("T"), "auto")
    assert not should_symmetrize(build_polytope("C"), "off")
    with pytest.raises(ValueError):
        should_symmetrize(build_polytope("C"), "sometimes")


def test_report_marks_skips():
    rows = volume_report(["C", "BSt"], VolumeConfig(), skip=["BSt"])
    assert rows[0].value == Fraction(1717, 8192) and rows[0].status == "ok"
    assert rows[1].value is None and rows[1].status.startswith("skipped")
    rows = volume_report(["T"], VolumeConfig(max_cones=10))
    assert rows[0].status.startswith("skipped")


def test_decimal_format():
    assert format_decimal(Fraction(1717, 2048)) == "0.8384"
    assert format_decimal(Fraction(1, 641)) == "0.00156"
