import itertools

from hypothesis import strategies as st

from votopes.dual_description import extreme_rays
from votopes.polytope import HPolytope


def compositions(k, n):
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        prev, row = -1, []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(k + n - 2 - prev)
        yield row


def brute_count(P, k):
    return sum(P.contains(x) for x in compositions(k, P.ambient_dim))


def random_semiopen(n, forms, mask):
    """Polytope whose strict forms are facets of the closure (chosen by ``mask``)."""
    v = extreme_rays(HPolytope(n, closed=forms))
    if v.dim != n:
        return None
    supports = [tuple(h) for h in v.support_hyperplanes]
    strict = [h for i, h in enumerate(supports) if mask >> i & 1]
    closed = [h for i, h in enumerate(supports) if not mask >> i & 1]
    return HPolytope(n, closed=closed, strict=strict)


cones = st.integers(3, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=3),
        st.integers(0, 2**10 - 1),
    )
)
