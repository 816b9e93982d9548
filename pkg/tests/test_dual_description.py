import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from votopes.dual_description import extreme_rays, incidence
from votopes.exact import primitive, rank
from votopes.polytope import HPolytope


def brute_force_rays(n, forms):
    """Extreme rays of {x >= 0, f(x) >= 0} from all (n-1)-subsets of tight constraints."""
    H = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple(f) for f in forms]
    rays = set()
    for S in itertools.combinations(H, n - 1):
        if rank(list(S)) != n - 1:
            continue
        # kernel vector from signed maximal minors
        M = np.array(S, dtype=object)
        x = []
        for j in range(n):
            sub = np.delete(M, j, axis=1)
            x.append((-1) ** j * _det(sub.tolist()))
        for sign in (1, -1):
            v = [sign * c for c in x]
            if all(sum(a * b for a, b in zip(h, v)) >= 0 for h in H) and any(v):
                rays.add(primitive(v))
    return rays


def _det(M):
    from votopes.exact import bareiss_det

    return bareiss_det(M)


small_cones = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=0, max_size=4),
    )
)


@settings(max_examples=150, deadline=None)
@given(small_cones)
def test_rays_match_brute_force(data):
    n, forms = data
    P = HPolytope(n, closed=forms)
    v = extreme_rays(P)
    got = {tuple(int(x) for x in r) for r in v.generators}
    assert got == brute_force_rays(n, forms)
    if len(v):
        v.check()


@settings(max_examples=80, deadline=None)
@given(small_cones)
def test_double_dualization(data):
    n, forms = data
    v = extreme_rays(HPolytope(n, closed=forms))
    if v.dim != n:
        return
    # the support hyperplanes describe the same cone
    w = extreme_rays(HPolytope(n, closed=v.support_hyperplanes))
    assert {tuple(r) for r in v.generators.tolist()} == {tuple(r) for r in w.generators.tolist()}
    # and every support hyperplane is a facet: its zero set has rank n - 1
    inc = incidence(v)
    for col in range(inc.shape[1]):
        assert rank(v.generators[inc[:, col]].tolist()) == n - 1


def test_simplex_and_halfspace():
    v = extreme_rays(HPolytope(3))
    assert sorted(map(tuple, v.generators.tolist())) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert v.dim == 3 and len(v.support_hyperplanes) == 3
    v = extreme_rays(HPolytope(2, closed=[(1, -1)]))
    assert sorted(map(tuple, v.generators.tolist())) == [(1, 0), (1, 1)]
    assert list(v.degrees) in ([1, 2], [2, 1])


def test_redundant_forms_are_dropped():
    v = extreme_rays(HPolytope(3, closed=[(1, 1, 0), (1, -1, 0), (2, -2, 0)]))
    assert len(v.support_hyperplanes) == 3


def test_requires_sign_conditions():
    with pytest.raises(ValueError):
        extreme_rays(HPolytope(2, nonnegative=False))
