"""Inequality-side and generator-side descriptions of graded cones."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from .exact import rank

LinearForm = Tuple[int, ...]


def linear_form(coeffs) -> LinearForm:
    return tuple(int(c) for c in coeffs)


@dataclass(frozen=True)
class HPolytope:
    """A (semiopen) rational polytope in the degree-1 slice of a cone.

    Points are ``x`` with ``sum(grading * x) = k`` (the k-th dilation);
    closed forms require ``form(x) >= 0``, strict forms (the excluded
    faces) require ``form(x) > 0``.
    """

    ambient_dim: int
    closed: Tuple[LinearForm, ...] = ()
    strict: Tuple[LinearForm, ...] = ()
    nonnegative: bool = True
    grading: Optional[LinearForm] = None
    name: str = ""

    def __post_init__(self):
        n = self.ambient_dim
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        object.__setattr__(self, "closed", tuple(linear_form(f) for f in self.closed))
        object.__setattr__(self, "strict", tuple(linear_form(f) for f in self.strict))
        grading = self.grading if self.grading is not None else (1,) * n
        object.__setattr__(self, "grading", linear_form(grading))
        for f in self.closed + self.strict + (self.grading,):
            if len(f) != n:
                raise ValueError(f"linear form of length {len(f)} in ambient dimension {n}")

    @property
    def forms(self) -> Tuple[LinearForm, ...]:
        """All non-sign forms, strict ones first (input order)."""
        return self.strict + self.closed

    def contains(self, x) -> bool:
        """Membership of an integer point of any dilation."""
        x = [int(v) for v in x]
        if len(x) != self.ambient_dim:
            raise ValueError("point has the wrong length")
        if self.nonnegative and any(v < 0 for v in x):
            return False
        dot = lambda f: sum(a * b for a, b in zip(f, x))
        return all(dot(f) > 0 for f in self.strict) and all(dot(f) >= 0 for f in self.closed)

    def relabel(self, perm) -> "HPolytope":
        """Permute coordinates: new coordinate ``i`` is old coordinate ``perm[i]``."""
        p = list(perm)
        move = lambda f: tuple(f[j] for j in p)
        return replace(
            self,
            closed=tuple(move(f) for f in self.closed),
            strict=tuple(move(f) for f in self.strict),
            grading=move(self.grading),
        )


def closure(P: HPolytope) -> HPolytope:
    """Reclassify every strict inequality as closed."""
    if not P.strict:
        return P
    name = P.name + "bar" if P.name else ""
    return replace(P, closed=P.strict + P.closed, strict=(), name=name)


@dataclass
class ConeVRep:
    """Generator-side description of a pointed graded cone.

    ``generators`` holds the primitive extreme rays as rows; ``incidence``
    is a boolean matrix (rays x hyperplanes), True where the hyperplane
    vanishes on the ray.
    """

    generators: np.ndarray
    degrees: np.ndarray
    support_hyperplanes: List[LinearForm]
    dim: int
    incidence: np.ndarray = field(repr=False, default=None)

    @property
    def ambient_dim(self) -> int:
        return int(self.generators.shape[1])

    def __len__(self) -> int:
        return int(self.generators.shape[0])

    def check(self) -> None:
        """Assert the structural invariants (primitive, positive degree, inside)."""
        G = self.generators
        for row in G:
            assert np.gcd.reduce(np.abs(row)) == 1, "generator is not primitive"
        assert (self.degrees >= 1).all(), "generator of degree < 1"
        if self.support_hyperplanes:
            H = np.array(self.support_hyperplanes, dtype=np.int64)
            assert (G @ H.T >= 0).all(), "generator violates a support hyperplane"


@dataclass(frozen=True)
class SemiopenMarking:
    """Index of the closure's support hyperplane for each strict form."""

    facet_of_strict: Tuple[int, ...]


def semiopen_marking(P: HPolytope, vrep: ConeVRep) -> SemiopenMarking:
    """Match every strict form of ``P`` with a support hyperplane of its closure."""
    idx = []
    gens = vrep.generators
    for f in P.strict:
        zero = (gens @ np.array(f, dtype=np.int64)) == 0
        found = None
        for j, h in enumerate(vrep.support_hyperplanes):
            hz = (gens @ np.array(h, dtype=np.int64)) == 0
            if np.array_equal(zero, hz):
                found = j
                break
        if found is None:
            raise ValueError(f"strict form {f} does not define a facet of the closure")
        idx.append(found)
    return SemiopenMarking(tuple(idx))


def polytope_dim(vrep: ConeVRep) -> int:
    """Dimension of the polytope: one less than the rank of the generators."""
    return vrep.dim - 1


def reciprocity_applicable(P: HPolytope, vrep: Optional[ConeVRep] = None) -> bool:
    """Whether the semiopen reciprocity transform applies to ``P``.

    Requires every non-sign form to be strict and to vanish on the
    all-ones vector, and the polytope to have dimension N - 1.
    """
    if P.closed or not P.nonnegative:
        return False
    ones = (1,) * P.ambient_dim
    if tuple(P.grading) != ones:
        return False
    if any(sum(f) != 0 for f in P.strict):
        return False
    if vrep is None:
        from .dual_description import extreme_rays

        vrep = extreme_rays(P)
    return vrep.dim == P.ambient_dim


def generator_rank(vrep: ConeVRep) -> int:
    return rank(vrep.generators.tolist()) if len(vrep) else 0
