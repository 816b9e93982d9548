import pytest

from votopes.dual_description import extreme_rays
from votopes.elections import build_polytope
from votopes.polytope import HPolytope, closure, reciprocity_applicable, semiopen_marking


def test_validation():
    with pytest.raises(ValueError):
        HPolytope(0)
    with pytest.raises(ValueError):
        HPolytope(3, closed=[(1, 2)])
    assert HPolytope(3).grading == (1, 1, 1)


def test_contains_strict_and_closed():
    P = HPolytope(2, strict=[(1, -1)], closed=[(0, 1)])
    assert P.contains([2, 1])
    assert not P.contains([1, 1])
    assert not P.contains([-1, -2])
    assert closure(P).contains([1, 1])


def test_relabel_roundtrip():
    P = build_polytope("C")
    perm = list(range(23, -1, -1))
    assert P.relabel(perm).relabel(perm) == P


def test_closure_name_and_marking():
    P = build_polytope("C")
    Pb = closure(P)
    assert Pb.name == "Cbar" and not Pb.strict and len(Pb.closed) == 3
    v = extreme_rays(P)
    m = semiopen_marking(P, v)
    assert len(set(m.facet_of_strict)) == 3
    for f, i in zip(P.strict, m.facet_of_strict):
        assert v.support_hyperplanes[i] == f


def test_marking_rejects_non_facets():
    P = HPolytope(2, strict=[(1, 1)])
    with pytest.raises(ValueError):
        semiopen_marking(P, extreme_rays(P))


def test_reciprocity_hypotheses():
    assert reciprocity_applicable(build_polytope("C"))
    assert reciprocity_applicable(build_polytope("K"))
    assert not reciprocity_applicable(build_polytope("F"))  # has a closed form
    assert not reciprocity_applicable(HPolytope(2, strict=[(1, 0)]))  # form does not vanish on 1
