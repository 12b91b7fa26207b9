"""Exact rational polyhedral geometry.

Cones are handled by the double description method on primitive integer
vectors; polyhedra {x : A x >= a} by homogenization.  Linear programs are
solved by a two-phase tableau simplex over Fractions with Bland's rule.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from ._linalg import clear_denominators, dot, primitive, rank
from .errors import CapExceededError, InfeasibleError, InputError

DEFAULT_FACE_CAP = 20


# ---------------------------------------------------------------------------
# double description


def double_description(constraints, dim):
    """Generators of the cone {x in R^dim : c.x >= 0 for every c in constraints}.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the pointed part, all as primitive integer tuples.
    Rays are only determined modulo the lineality space.
    """
    lineality = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays = []
    zero_sets = []  # per ray: frozenset of processed constraint indices it is tight on
    processed = []
    for idx, a in enumerate(constraints):
        a = tuple(a)
        if len(a) != dim:
            raise InputError(f"constraint {idx} has length {len(a)}, expected {dim}")
        if not any(a):
            continue
        lvals = [dot(a, l) for l in lineality]
        k = next((i for i, v in enumerate(lvals) if v), None)
        if k is not None:
            ell, aell = lineality[k], lvals[k]
            if aell < 0:
                ell, aell = tuple(-x for x in ell), -aell
            new_lin = []
            for i, l in enumerate(lineality):
                if i == k:
                    continue
                if lvals[i]:
                    l = primitive([aell * x - lvals[i] * y for x, y in zip(l, ell)])
                new_lin.append(l)
            new_rays = []
            for r in rays:
                ar = dot(a, r)
                if ar:
                    r = primitive([aell * x - ar * y for x, y in zip(r, ell)])
                new_rays.append(r)
            lineality = new_lin
            rays = new_rays + [ell]
            processed.append(idx)
            # ell is not tight on the new constraint; everything else now is
            zero_sets = [z | {idx} for z in zero_sets] + [frozenset(processed[:-1])]
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zs = [zero_sets[i] for i in pos] + [zero_sets[i] | {idx} for i in zer]
        for p in pos:
            for q in neg:
                common = zero_sets[p] & zero_sets[q]
                if any(w != p and w != q and common <= zero_sets[w] for w in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                r = primitive([vp * x - vq * y for x, y in zip(rays[q], rays[p])])
                new_rays.append(r)
                new_zs.append(common | {idx})
        rays, zero_sets = new_rays, new_zs
        processed.append(idx)
    # deduplicate (adjacent pairs can produce parallel rays only through degenerate input)
    seen = {}
    for r, z in zip(rays, zero_sets):
        if any(r):
            seen.setdefault(r, z)
    return sorted(lineality), sorted(seen)


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class RationalCone:
    """A rational cone with both descriptions.

    ``inequalities`` are irredundant primitive forms; ``equations`` span the
    forms vanishing on the cone (non-empty only for lower-dimensional cones);
    ``lineality`` is non-empty only for non-pointed cones.
    """

    ambient_rank: int
    rays: tuple
    inequalities: tuple
    equations: tuple = ()
    lineality: tuple = ()

    @property
    def dim(self):
        return self.ambient_rank - len(self.equations)

    @property
    def pointed(self):
        return not self.lineality

    def contains(self, x):
        return all(dot(f, x) >= 0 for f in self.inequalities) and all(
            dot(e, x) == 0 for e in self.equations)


def dualize_cone(rays=None, inequalities=None, ambient_rank=None):
    """Compute the missing description of a cone given by rays or by inequalities."""
    if (rays is None) == (inequalities is None):
        raise InputError("give exactly one of rays / inequalities")
    given = rays if rays is not None else inequalities
    if ambient_rank is None:
        if not given:
            raise InputError("ambient rank required for an empty description")
        ambient_rank = len(given[0])
    given = [tuple(v) for v in given]
    if any(len(v) != ambient_rank for v in given):
        raise InputError("vectors of inconsistent length")
    if rays is not None:
        eqs, facets = double_description(given, ambient_rank)
        cons = list(facets) + list(eqs) + [tuple(-x for x in e) for e in eqs]
        lin, ext = double_description(cons, ambient_rank)
    else:
        lin, ext = double_description(given, ambient_rank)
        cons = list(ext) + list(lin) + [tuple(-x for x in l) for l in lin]
        eqs, facets = double_description(cons, ambient_rank)
    return RationalCone(ambient_rank, tuple(ext), tuple(facets), tuple(eqs), tuple(lin))


# ---------------------------------------------------------------------------
# linear programming


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction = None
    point: tuple = None

    @property
    def optimal(self):
        return self.status == "optimal"


def _simplex(T, basis, cost, nvars):
    """Minimize cost over the tableau T (rows [coeffs | rhs]) in place; Bland's rule."""
    m = len(T)
    while True:
        # reduced costs
        red = list(cost[:nvars])
        for i in range(m):
            cb = cost[basis[i]]
            if cb:
                row = T[i]
                for j in range(nvars):
                    if row[j]:
                        red[j] -= cb * row[j]
        enter = next((j for j in range(nvars) if red[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], enter)


def _pivot(T, basis, r, c):
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    prow = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                T[i] = [x - f * y for x, y in zip(T[i], prow)]
    basis[r] = c


def rational_lp(forms, bounds, objective, sense="min"):
    """Optimize objective.x over {x : forms[i].x >= bounds[i]} exactly."""
    if sense not in ("min", "max"):
        raise InputError("sense must be 'min' or 'max'")
    n = len(objective)
    forms = [list(f) for f in forms]
    if any(len(f) != n for f in forms) or len(forms) != len(bounds):
        raise InputError("inconsistent LP dimensions")
    m = len(forms)
    sgn = 1 if sense == "min" else -1
    # variables: x+ (n), x- (n), surplus (m), artificial (m)
    nx = 2 * n + m
    T = []
    for i, (f, b) in enumerate(zip(forms, bounds)):
        row = [Fraction(v) for v in f] + [Fraction(-v) for v in f] + [Fraction(0)] * m
        row[2 * n + i] = Fraction(-1)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        art = [Fraction(int(k == i)) for k in range(m)]
        T.append(row + art + [b])
    basis = [nx + i for i in range(m)]
    phase1 = [Fraction(0)] * nx + [Fraction(1)] * m
    _simplex(T, basis, phase1, nx + m)
    if sum(T[i][-1] for i in range(m) if basis[i] >= nx) > 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= nx:
            c = next((j for j in range(nx) if T[i][j] != 0), None)
            if c is None:
                continue  # redundant row
            _pivot(T, basis, i, c)
        keep.append(i)
    T = [T[i][:nx] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cost = [Fraction(sgn * c) for c in objective] + [Fraction(-sgn * c) for c in objective]
    cost += [Fraction(0)] * m
    status = _simplex(T, basis, cost, nx)
    if status == "unbounded":
        return LPResult("unbounded")
    z = [Fraction(0)] * nx
    for i, bv in enumerate(basis):
        z[bv] = T[i][-1]
    x = tuple(z[j] - z[n + j] for j in range(n))
    return LPResult("optimal", dot(objective, x), x)


@dataclass(frozen=True)
class StrictResult:
    feasible: bool
    witness: tuple = None
    slack: Fraction = None


def strict_feasibility(weak_forms, weak_bounds, strict_forms, strict_bounds, dim=None):
    """Decide {weak . x >= b, strict . x > d} by maximizing a common slack eps <= 1."""
    if dim is None:
        allf = list(weak_forms) + list(strict_forms)
        if not allf:
            raise InputError("no constraints and no dimension")
        dim = len(allf[0])
    forms = [list(f) + [0] for f in weak_forms]
    forms += [list(f) + [-1] for f in strict_forms]
    forms.append([0] * dim + [-1])
    bounds = list(weak_bounds) + list(strict_bounds) + [-1]
    res = rational_lp(forms, bounds, [0] * dim + [1], sense="max")
    if res.status != "optimal":
        return StrictResult(False)
    eps = res.point[-1]
    if not strict_forms:
        return StrictResult(True, res.point[:-1], eps)
    if eps > 0:
        return StrictResult(True, res.point[:-1], eps)
    return StrictResult(False, None, eps)


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class RationalPolyhedron:
    """{x in R^r : forms[i](x) >= bounds[i]}."""

    forms: tuple
    bounds: tuple

    def __post_init__(self):
        if len(self.forms) != len(self.bounds):
            raise InputError("forms and bounds differ in length")

    @property
    def ambient_rank(self):
        return len(self.forms[0])

    def contains(self, x):
        return all(dot(f, x) >= b for f, b in zip(self.forms, self.bounds))

    def tight_set(self, x):
        return frozenset(i for i, (f, b) in enumerate(zip(self.forms, self.bounds))
                         if dot(f, x) == b)

    def generators(self):
        """(vertices, recession rays) of a pointed polyhedron."""
        return _polyhedron_generators(self.forms, self.bounds)


def _polyhedron_generators(forms, bounds):
    r = len(forms[0])
    cons = [tuple(f) + (-b,) for f, b in zip(forms, bounds)]
    cons.append((0,) * r + (1,))
    lin, rays = double_description(cons, r + 1)
    if lin:
        raise InputError("polyhedron contains a line: the forms do not have full rank")
    verts = sorted({tuple(Fraction(x, ray[-1]) for x in ray[:-1]) for ray in rays if ray[-1] > 0})
    rec = sorted(tuple(ray[:-1]) for ray in rays if ray[-1] == 0)
    if not verts:
        raise InfeasibleError("infeasible")
    return verts, rec


def polyhedron_vertices(P):
    """Exact extreme points of a non-empty pointed polyhedron, lexicographically sorted."""
    return P.generators()[0]


@dataclass(frozen=True)
class Face:
    tight: tuple
    dim: int
    compact: bool
    vertices: tuple


@dataclass(frozen=True)
class Segment:
    endpoints: tuple
    squared_length: Fraction


@dataclass(frozen=True)
class FaceReport:
    faces: tuple
    max_compact_dim: int
    segments: tuple = field(default=())

    @property
    def vertices(self):
        return tuple(f.vertices[0] for f in self.faces if f.dim == 0)


def face_lattice(P, cap=DEFAULT_FACE_CAP):
    """All non-empty faces of P by closure of tight sets; compactness and segments."""
    if len(P.forms) > cap:
        raise CapExceededError(
            f"{len(P.forms)} forms exceed the face-enumeration cap {cap}; raise it with --cap-faces")
    verts, rec = P.generators()
    vtight = [P.tight_set(v) for v in verts]
    rtight = [frozenset(i for i, f in enumerate(P.forms) if dot(f, rr) == 0) for rr in rec]
    gens = vtight + rtight
    seen = set(vtight)
    queue = list(vtight)
    while queue:
        J = queue.pop()
        for t in gens:
            K = J & t
            if K not in seen:
                seen.add(K)
                queue.append(K)
    r = P.ambient_rank
    faces = []
    for J in seen:
        vs = tuple(v for v, t in zip(verts, vtight) if J <= t)
        if not vs:
            continue
        eq = [P.forms[i] for i in sorted(J)]
        dim = r - rank(eq) if eq else r
        compact = not any(J <= t for t in rtight)
        faces.append(Face(tuple(sorted(J)), dim, compact, vs))
    faces.sort(key=lambda f: (f.dim, f.vertices, f.tight))
    mcd = max(f.dim for f in faces if f.compact)
    segs = []
    for f in faces:
        if f.compact and f.dim == 1:
            a, b = f.vertices
            segs.append(Segment((a, b), sum((x - y) ** 2 for x, y in zip(a, b))))
    return FaceReport(tuple(faces), mcd, tuple(segs))


def lattice_points(forms, bounds, strict_upper=None):
    """All integer points of a bounded polyhedron {forms >= bounds}.

    ``strict_upper``: optional list of (form, value) pairs imposing form(x) < value.
    Bounding box from exact LPs, then a filtered box scan.
    """
    r = len(forms[0])
    lf = [list(f) for f in forms]
    lb = list(bounds)
    for f, v in strict_upper or ():
        lf.append([-x for x in f])
        lb.append(-v)
    box = []
    for j in range(r):
        e = [int(k == j) for k in range(r)]
        lo = rational_lp(lf, lb, e, "min")
        if lo.status == "infeasible":
            return []
        hi = rational_lp(lf, lb, e, "max")
        if lo.status != "optimal" or hi.status != "optimal":
            raise InputError("lattice_points needs a bounded region")
        box.append(range(ceil(lo.value), floor(hi.value) + 1))
    out = []
    upper = list(strict_upper or ())

    def rec(prefix, j):
        if j == r:
            if all(dot(f, prefix) >= b for f, b in zip(forms, bounds)) and all(
                    dot(f, prefix) < v for f, v in upper):
                out.append(tuple(prefix))
            return
        for x in box[j]:
            rec(prefix + [x], j + 1)

    rec([], 0)
    return out


def scale_to_integer(v):
    return clear_denominators(v)
