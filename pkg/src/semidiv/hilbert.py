"""Hilbert bases of rational cones by the primal method.

The cone is triangulated (lexicographic pulling) into simplicial subcones
on its extreme rays.  The lattice points of every half-open fundamental
parallelepiped are enumerated through the Smith form of the simplex matrix,
and the union of these candidates is reduced: a candidate is irreducible
iff no other candidate lies below it in the cone order.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product

from ._linalg import dot, matvec, rank, transpose
from .lattice import coordinates, saturation, smith_normal_form
from .polyhedral import double_description, dualize_cone


def triangulate(rays, facets):
    """Pulling triangulation of a full-dimensional pointed cone.

    Returns a list of simplices, each a sorted tuple of ray indices.
    """
    d = len(rays[0])
    incid = [frozenset(i for i, f in enumerate(facets) if dot(f, r) == 0) for r in rays]

    @lru_cache(maxsize=None)
    def rk(face):
        return rank([rays[k] for k in face])

    def sub_facets(face, dim):
        out = set()
        for i in range(len(facets)):
            sub = frozenset(k for k in face if i in incid[k])
            if sub != face and sub and rk(sub) == dim - 1:
                out.add(sub)
        return sorted(out, key=sorted)

    @lru_cache(maxsize=None)
    def tri(face, dim):
        if len(face) == dim:
            return (tuple(sorted(face)),)
        if dim == 1:
            return (tuple(sorted(face))[:1],)
        v = min(face)
        out = []
        for F in sub_facets(face, dim):
            if v in F:
                continue
            for simplex in tri(F, dim - 1):
                out.append(tuple(sorted(simplex + (v,))))
        return tuple(out)

    return list(tri(frozenset(range(len(rays))), d))


def parallelepiped_points(generators, grading=None, max_degree=None):
    """Lattice points of sum_i [0,1) * generators[i] for linearly independent generators.

    With ``grading``/``max_degree`` only points of degree <= max_degree are kept.
    """
    d = len(generators)
    V = transpose(generators)  # columns are the generators
    D, U, W = smith_normal_form(V)
    diag = [D[i][i] for i in range(d)]
    # lambda = V^{-1} p = W D^{-1} U p ; with q = U p running over prod [0, d_i)
    WD = [[Fraction(W[i][j], diag[j]) for j in range(d)] for i in range(d)]
    if grading is not None:
        gdeg = [dot(grading, g) for g in generators]
    out = []
    for q in product(*(range(x) for x in diag)):
        lam = [sum(WD[i][j] * q[j] for j in range(d) if q[j]) for i in range(d)]
        lam = [x - (x.numerator // x.denominator) for x in lam]
        if grading is not None and max_degree is not None:
            deg = sum(l * g for l, g in zip(lam, gdeg))
            if deg > max_degree:
                continue
        p = tuple(int(sum(lam[i] * generators[i][k] for i in range(d))) for k in range(len(generators[0])))
        out.append(p)
    return out


def _full_dim_hilbert_basis(rays, facets, grading=None, max_degree=None, exact_degree=None):
    cands = set()
    for r in rays:
        cands.add(tuple(r))
    for simplex in triangulate(rays, facets):
        gens = [rays[k] for k in simplex]
        for p in parallelepiped_points(gens, grading, max_degree):
            if any(p):
                cands.add(p)
    if grading is not None and max_degree is not None:
        cands = {c for c in cands if dot(grading, c) <= max_degree}
    if exact_degree is not None:
        cands = {c for c in cands if dot(grading, c) == exact_degree}
    tau = [sum(col) for col in zip(*facets)]
    order = sorted(cands, key=lambda c: (dot(tau, c), c))
    basis = []
    for x in order:
        tx = dot(tau, x)
        reducible = False
        for c in order:
            if dot(tau, c) >= tx:
                break
            diff = [a - b for a, b in zip(x, c)]
            if all(dot(f, diff) >= 0 for f in facets):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return sorted(basis)


def cone_hilbert_basis(rays, grading=None, max_degree=None, exact_degree=None):
    """Hilbert basis of cone(rays) intersected with Z^n.

    Lower-dimensional cones are handled in coordinates of the saturated
    lattice of their span.  With ``exact_degree`` only the irreducible
    elements of that degree are returned; degree-bounded candidates suffice
    because every element below a point of degree k has degree <= k.
    """
    rays = [tuple(r) for r in rays if any(r)]
    if not rays:
        return []
    n = len(rays[0])
    B = saturation(rays)
    if len(B) < n:
        yrays = [tuple(coordinates(B, r)) for r in rays]
        ygrading = tuple(matvec(B, grading)) if grading is not None else None
        hb = cone_hilbert_basis(yrays, ygrading, max_degree, exact_degree)
        return sorted(tuple(sum(y[k] * B[k][j] for k in range(len(B))) for j in range(n)) for y in hb)
    cone = dualize_cone(rays=rays)
    if cone.lineality:
        raise ValueError("cone is not pointed")
    if exact_degree is not None and max_degree is None:
        max_degree = exact_degree
    return _full_dim_hilbert_basis(list(cone.rays), list(cone.inequalities), grading,
                                   max_degree, exact_degree)


def module_generators(forms, bounds):
    """S-minimal integer points of {x : forms . x >= bounds}.

    Computed as the height-one part of the Hilbert basis of the cone
    {(x, t) : t >= 0, forms . x >= bounds * t}; S is the lattice points of
    {forms >= 0}.  Returns [] when the region has no integer point.
    """
    forms = [tuple(f) for f in forms]
    r = len(forms[0])
    cons = [f + (-b,) for f, b in zip(forms, bounds)] + [(0,) * r + (1,)]
    lin, rays = double_description(cons, r + 1)
    if lin:
        raise ValueError("recession cone is not pointed")
    if not any(ray[-1] > 0 for ray in rays):
        return []
    grading = (0,) * r + (1,)
    hb = cone_hilbert_basis(rays, grading, exact_degree=1)
    return sorted(tuple(p[:-1]) for p in hb)


def effective_bounds(forms, bounds, generators=None):
    """Componentwise minimum of the forms over the integer points of {forms >= bounds}.

    Forms are non-negative on the recession cone, so the minimum is attained
    at a module generator.
    """
    if generators is None:
        generators = module_generators(forms, bounds)
    if not generators:
        return None
    return tuple(min(dot(f, g) for g in generators) for f in forms)


def rees_hilbert_basis(forms, bounds):
    """Full Hilbert basis of the cone {(x, t) : t >= 0, forms . x >= bounds * t}."""
    forms = [tuple(f) for f in forms]
    r = len(forms[0])
    cons = [f + (-b,) for f, b in zip(forms, bounds)] + [(0,) * r + (1,)]
    lin, rays = double_description(cons, r + 1)
    return cone_hilbert_basis(rays)


__all__ = ["cone_hilbert_basis", "effective_bounds", "module_generators", "parallelepiped_points",
           "rees_hilbert_basis", "triangulate"]
