"""Divisor class groups and minimal generators of divisorial ideals.

A divisorial ideal is given by a bound vector a against the support forms:
T(a) = {x in Z^r : sigma_i(x) >= a_i}.  Its class is the image of a in
Z^s / sigma(Z^r).
"""
from dataclasses import dataclass

from .errors import InfeasibleError, InputError
from .hilbert import effective_bounds, module_generators
from .lattice import quotient_presentation
from .polyhedral import RationalPolyhedron, polyhedron_vertices


@dataclass(frozen=True)
class ClassGroup:
    """Cl = Z^s / sigma(Z^r).

    Free coordinates are oriented so that the canonical class (1, ..., 1)
    projects to a non-negative value.
    """

    semigroup: object
    presentation: object

    @property
    def invariant_factors(self):
        return self.presentation.invariant_factors

    @property
    def free_rank(self):
        return self.presentation.free_rank

    def describe(self):
        return self.presentation.describe()

    def reduce(self, c):
        return self.presentation.reduce(c)

    def zero(self):
        return self.presentation.zero()


def class_group(S):
    s, r = S.s, S.rank
    L = [[S.support_forms[i][j] for j in range(r)] for i in range(s)]
    return ClassGroup(S, quotient_presentation(L, s, orient=[1] * s))


def _check_bounds(S, a):
    a = tuple(int(x) for x in a)
    if len(a) != S.s:
        raise InputError(f"bound vector has {len(a)} entries, expected {S.s}")
    return a


def class_of_bounds(G, a):
    return G.presentation.project(_check_bounds(G.semigroup, a))


def tighten(S, a):
    """Smallest bound vector defining the same lattice set as ``a``."""
    a = _check_bounds(S, a)
    eff = effective_bounds(S.support_forms, a)
    if eff is None:
        raise InfeasibleError("T(a) has no lattice point")
    return eff


def class_lift(G, c):
    """Tight bound vector of class c, obtained from the section lift."""
    a = G.presentation.lift(G.reduce(c))
    return tighten(G.semigroup, a)


def torsion_order(G, c, verify=False):
    """Order of c in Cl (None for infinite order).

    With ``verify`` the polyhedron C(class_lift(c)) is checked to have a
    single vertex exactly when the order is finite.
    """
    order = G.presentation.element_order(c)
    if verify:
        nverts = len(polyhedron_vertices(bounds_polyhedron(G.semigroup, class_lift(G, c))))
        if (nverts == 1) != (order is not None):
            raise AssertionError(f"class {tuple(c)}: order {order} but {nverts} vertices")
    return order


def bounds_polyhedron(S, a):
    return RationalPolyhedron(S.support_forms, _check_bounds(S, a))


@dataclass(frozen=True)
class GeneratorSet:
    points: tuple

    @property
    def mu(self):
        return len(self.points)


def minimal_generators(S, a):
    """S-minimal points of T(a), in intrinsic coordinates."""
    a = _check_bounds(S, a)
    pts = module_generators(S.support_forms, a)
    if not pts:
        raise InfeasibleError("T(a) has no lattice point")
    return GeneratorSet(tuple(pts))


def mu_of_class(G, c):
    return minimal_generators(G.semigroup, class_lift(G, c)).mu


def canonical_class(G):
    a = (1,) * G.semigroup.s
    return a, class_of_bounds(G, a)


__all__ = [
    "ClassGroup",
    "GeneratorSet",
    "bounds_polyhedron",
    "canonical_class",
    "class_group",
    "class_lift",
    "class_of_bounds",
    "minimal_generators",
    "mu_of_class",
    "tighten",
    "torsion_order",
]
