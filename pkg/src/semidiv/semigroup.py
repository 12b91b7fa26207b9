"""Normal affine semigroups: normalization, support forms, pure embeddings.

A semigroup is stored in intrinsic coordinates: ``basis`` holds r integer
row vectors of Z^n spanning the lattice the cone is intersected with, and
every vector kept on the object (generators, rays, Hilbert basis, forms) is
written in those r coordinates.  ``to_ambient`` maps back.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ._linalg import dot, matvec, rank
from .errors import HypothesisError, InputError, NotPositiveError
from .hilbert import cone_hilbert_basis
from .lattice import coordinates, integer_kernel, lattice_basis, saturation
from .polyhedral import dualize_cone, rational_lp

LATTICE_MODES = ("group", "ambient")


@dataclass(frozen=True)
class AffineSemigroup:
    """The normal semigroup C(S) ∩ gp, with gp identified with Z^r."""

    ambient_dim: int
    basis: tuple
    generators: tuple
    rays: tuple
    support_forms: tuple
    hilbert_basis: tuple
    lattice: str = "group"
    positive: bool = True
    tau: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(sum(c) for c in zip(*self.support_forms)))

    @property
    def rank(self):
        return len(self.basis)

    @property
    def s(self):
        return len(self.support_forms)

    @property
    def basis_changed(self):
        n = self.ambient_dim
        return self.basis != tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def sigma(self, x):
        """Standard embedding x -> (sigma_1(x), ..., sigma_s(x))."""
        return tuple(dot(f, x) for f in self.support_forms)

    def sigma_matrix(self):
        return [list(f) for f in self.support_forms]

    def contains(self, x):
        return all(v >= 0 for v in self.sigma(x))

    def to_ambient(self, y):
        return tuple(sum(y[k] * self.basis[k][j] for k in range(self.rank))
                     for j in range(self.ambient_dim))

    def from_ambient(self, x):
        y = coordinates(self.basis, list(x))
        if y is None:
            raise InputError(f"{tuple(x)} is not in the lattice of the semigroup")
        return tuple(y)

    def restrict_form(self, f):
        """Pull an ambient linear form back to intrinsic coordinates."""
        if len(f) != self.ambient_dim:
            raise InputError(f"form has {len(f)} entries, ambient rank is {self.ambient_dim}")
        return tuple(matvec(self.basis, f))

    def coordinate_form(self, k):
        """Match the k-th ambient coordinate with a support form.

        Returns (i, e) with x_k = e * sigma_i on the lattice, or None.
        """
        f = self.restrict_form([int(j == k) for j in range(self.ambient_dim)])
        for i, g in enumerate(self.support_forms):
            e = _positive_multiple(f, g)
            if e is not None:
                return i, e
        return None

    def standard_system(self):
        return FormSystem(self, self.support_forms)


def _positive_multiple(f, g):
    """Positive rational e with f = e * g, or None."""
    e = None
    for a, b in zip(f, g):
        if b == 0:
            if a != 0:
                return None
            continue
        q = Fraction(a, b)
        if q <= 0 or (e is not None and q != e):
            return None
        e = q
    return e


def _from_cone(ambient_dim, basis, ambient_rays, lattice, generators=None):
    """Build the semigroup (cone over ambient_rays) ∩ (lattice spanned by basis)."""
    basis = tuple(tuple(b) for b in basis)
    yrays = []
    for v in ambient_rays:
        y = coordinates(basis, list(v))
        if y is None:
            raise InputError(f"ray {tuple(v)} does not lie in the lattice")
        yrays.append(tuple(y))
    cone = dualize_cone(rays=yrays, ambient_rank=len(basis))
    if cone.lineality:
        raise NotPositiveError("not positive: the cone contains a line")
    if cone.equations:
        raise InputError("generators do not span the lattice")
    gens = yrays if generators is None else [tuple(coordinates(basis, list(g))) for g in generators]
    hb = cone_hilbert_basis(list(cone.rays))
    return AffineSemigroup(
        ambient_dim=ambient_dim,
        basis=basis,
        generators=tuple(sorted(set(gens))),
        rays=tuple(sorted(cone.rays)),
        support_forms=tuple(cone.inequalities),
        hilbert_basis=tuple(hb),
        lattice=lattice,
    )


def normalize(generators, lattice="group"):
    """Normalization of the semigroup generated by ``generators``.

    lattice="group" intersects the cone with gp(generators), switching to a
    basis of that group; lattice="ambient" intersects it with the saturation
    of their span in Z^n.
    """
    if lattice not in LATTICE_MODES:
        raise InputError(f"lattice must be one of {LATTICE_MODES}")
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise InputError("empty generator list")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise InputError("generators of inconsistent length")
    gens = [g for g in gens if any(g)]
    if not gens:
        raise InputError("the semigroup is trivial")
    basis = lattice_basis(gens) if lattice == "group" else saturation(gens)
    return _from_cone(n, basis, gens, lattice, generators=gens)


def from_inequalities(forms):
    """The semigroup {x in Z^n : f(x) >= 0 for all forms}."""
    forms = [tuple(int(x) for x in f) for f in forms]
    if not forms:
        raise InputError("empty inequality list")
    n = len(forms[0])
    cone = dualize_cone(inequalities=forms, ambient_rank=n)
    if cone.lineality:
        raise NotPositiveError("not positive: the inequalities admit a line")
    if not cone.rays:
        raise InputError("the inequalities only admit 0")
    return _from_cone(n, saturation(cone.rays), cone.rays, "ambient")


def congruence_lattice(n, equations=(), congruences=()):
    """Basis of {x in Z^n : E x = 0, c.x = 0 mod m for each (c, m)}."""
    k = len(congruences)
    rows = [list(e) + [0] * k for e in equations]
    for j, (c, m) in enumerate(congruences):
        if m < 2:
            raise InputError("congruence moduli must be >= 2")
        rows.append(list(c) + [-m * int(t == j) for t in range(k)])
    if not rows:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    K = integer_kernel(rows, n + k)
    return lattice_basis([v[:n] for v in K])


def from_equations(n, equations=(), congruences=()):
    """The semigroup Z_+^n ∩ {E x = 0} ∩ {congruences}, reduced through its lattice."""
    for e in list(equations) + [c for c, _ in congruences]:
        if len(e) != n:
            raise InputError(f"row {tuple(e)} does not have {n} entries")
    L = congruence_lattice(n, equations, congruences)
    if not L:
        raise InputError("the equations only admit 0")
    # coordinate functions pulled back to the lattice
    forms_y = [tuple(row[j] for row in L) for j in range(n)]
    cone = dualize_cone(inequalities=forms_y, ambient_rank=len(L))
    if cone.lineality:
        raise NotPositiveError("not positive")
    if not cone.rays:
        raise InputError("the system only admits 0")
    rays_x = [tuple(sum(y[k] * L[k][j] for k in range(len(L))) for j in range(n)) for y in cone.rays]
    basis_y = saturation(cone.rays)
    basis = [tuple(sum(y[k] * L[k][j] for k in range(len(L))) for j in range(n)) for y in basis_y]
    return _from_cone(n, lattice_basis(basis), rays_x, "ambient")


@dataclass(frozen=True)
class FormSystem:
    """Integer forms xi_1..xi_n on the intrinsic lattice of ``semigroup``."""

    semigroup: AffineSemigroup
    forms: tuple

    def __post_init__(self):
        forms = tuple(tuple(int(x) for x in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        r = self.semigroup.rank
        if not forms or any(len(f) != r for f in forms):
            raise InputError(f"forms must have {r} intrinsic coordinates")
        if any(not any(f) for f in forms):
            raise InputError("degenerate form system: a form is zero")

    @classmethod
    def from_ambient(cls, S, forms):
        return cls(S, tuple(S.restrict_form(f) for f in forms))

    @property
    def n(self):
        return len(self.forms)

    def __call__(self, x):
        return tuple(dot(f, x) for f in self.forms)

    def is_standard(self):
        return self.forms == self.semigroup.support_forms


@dataclass(frozen=True)
class PurityResult:
    pure: bool
    reason: str = ""
    form_index: int = None
    witness: tuple = None


def purity_check(xi):
    """Decide whether xi(S) = Z_+^n ∩ gp(xi(S))."""
    S = xi.semigroup
    if rank(list(xi.forms)) < S.rank:
        raise HypothesisError("xi is not injective")
    # xi_i must lie in the dual cone: min xi_i over {sigma >= 0, tau <= 1}
    cons = [list(f) for f in S.support_forms] + [[-t for t in S.tau]]
    bnds = [0] * S.s + [-1]
    for i, f in enumerate(xi.forms):
        res = rational_lp(cons, bnds, f, "min")
        if res.value < 0:
            return PurityResult(False, "form is negative on the cone", i,
                                tuple(res.point))
    for j, g in enumerate(S.support_forms):
        if not any(_positive_multiple(f, g) is not None for f in xi.forms):
            xi_cone = dualize_cone(inequalities=list(xi.forms), ambient_rank=S.rank)
            x = next(v for v in xi_cone.rays if not S.contains(v))
            return PurityResult(False, "support form has no multiple among the xi_i", j, xi(x))
    return PurityResult(True)


@dataclass(frozen=True)
class DivisorialityResult:
    divisorial: bool
    multiples: tuple = ()
    form_index: int = None


def _zero_sets(S, forms):
    return [frozenset(k for k, h in enumerate(S.hilbert_basis) if dot(f, h) == 0) for f in forms]


def coset_divisoriality_check(xi):
    """Whether every xi_i is a positive integer multiple of a single support form.

    ``multiples`` lists (support form index, factor) per xi_i when divisorial.
    The generator-based containment test on the zero sets E_i is run as well
    and must agree.
    """
    S = xi.semigroup
    if not purity_check(xi).pure:
        raise HypothesisError("xi is not pure")
    multiples = []
    bad = None
    for i, f in enumerate(xi.forms):
        hit = None
        for j, g in enumerate(S.support_forms):
            e = _positive_multiple(f, g)
            if e is not None:
                hit = (j, int(e))
                break
        if hit is None and bad is None:
            bad = i
        multiples.append(hit)
    E = _zero_sets(S, xi.forms)
    nested = any(E[i] < E[k] for i in range(len(E)) for k in range(len(E)))
    if nested != (bad is not None):
        raise AssertionError("divisoriality tests disagree")
    if bad is not None:
        return DivisorialityResult(False, form_index=bad)
    return DivisorialityResult(True, tuple(multiples))


__all__ = [
    "AffineSemigroup",
    "DivisorialityResult",
    "FormSystem",
    "PurityResult",
    "congruence_lattice",
    "coset_divisoriality_check",
    "from_equations",
    "from_inequalities",
    "normalize",
    "purity_check",
]
