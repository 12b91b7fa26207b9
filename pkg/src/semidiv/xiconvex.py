"""Xi-convex ideals: T(a; xi) = {x in Z^r : xi_i(x) >= a_i} for a pure form system xi."""
import logging
from dataclasses import dataclass
from itertools import product

from .divisorial import GeneratorSet
from .errors import HypothesisError, InfeasibleError, InputError
from .hilbert import effective_bounds, module_generators
from .lattice import coset_representative, lattice_solve, quotient_presentation
from .semigroup import FormSystem, purity_check

log = logging.getLogger(__name__)

FINITE_LABEL = "experimentally finite"
OPEN_LABEL = "inconclusive"


@dataclass(frozen=True)
class XiIdeal:
    xi: FormSystem
    bounds: tuple
    eff: tuple
    generators: tuple

    @property
    def mu(self):
        return len(self.generators)


def _bounds(xi, a):
    a = tuple(int(v) for v in a)
    if len(a) != xi.n:
        raise InputError(f"bound vector has {len(a)} entries, the form system has {xi.n}")
    return a


def _require_pure(xi):
    if not xi.is_standard():
        res = purity_check(xi)
        if not res.pure:
            raise HypothesisError(f"xi is not pure ({res.reason}, index {res.form_index})")


def eff_bounds(xi, a, check=True):
    """Tight ideal with eff_i = min xi_i over T(a; xi)."""
    a = _bounds(xi, a)
    if check:
        _require_pure(xi)
    gens = module_generators(xi.forms, a)
    if not gens:
        raise InfeasibleError("T(a; xi) is empty")
    return XiIdeal(xi, a, effective_bounds(xi.forms, a, gens), tuple(gens))


def xi_minimal_generators(xi, a, check=True):
    return GeneratorSet(eff_bounds(xi, a, check).generators)


def _xi_columns(xi):
    # n x r matrix whose column span is xi(Z^r)
    return [list(f) for f in xi.forms]


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: tuple = None


def xi_iso_test(xi, a, b, check=True):
    """T(a) ~ T(b) iff eff(a) - eff(b) lies in xi(Z^r); witness y has T(a) = y + T(b)."""
    ea = eff_bounds(xi, a, check).eff
    eb = eff_bounds(xi, b, False).eff
    y = lattice_solve(_xi_columns(xi), [p - q for p, q in zip(ea, eb)])
    if y is None:
        return IsoResult(False)
    return IsoResult(True, tuple(y))


def iso_key(xi, eff):
    """Canonical representative of eff modulo xi(Z^r)."""
    return coset_representative(eff, [list(row) for row in zip(*xi.forms)])


def intersect_modules(xi, a, zeta, b):
    """Generators of T(a; xi) ∩ T(b; zeta) over {x : xi(x) >= 0, zeta(x) >= 0}.

    Both systems live on the same semigroup lattice.  An empty intersection
    gives an empty generator set.
    """
    if xi.semigroup.rank != zeta.semigroup.rank:
        raise InputError("form systems live on lattices of different rank")
    a, b = _bounds(xi, a), _bounds(zeta, b)
    forms = list(xi.forms) + list(zeta.forms)
    return GeneratorSet(tuple(module_generators(forms, list(a) + list(b))))


@dataclass(frozen=True)
class EnumEntry:
    cls: tuple
    eff: tuple
    mu: int


@dataclass(frozen=True)
class Enumeration:
    entries: tuple
    bound: int
    box: int
    shell_min: int
    label: str

    @property
    def classes(self):
        return [e.cls for e in self.entries]


def enumerate_small_mu(xi, C, box, check=True):
    """Isomorphism classes of xi-convex ideals with mu <= C inside a class box.

    The box runs over Z^n / xi(Z^r): all torsion coordinates and free
    coordinates in [-box, box].  The label compares C with the least mu of
    the outer-shell ideals not isomorphic to one found inside; it is a
    diagnostic, not a proof of completeness.
    """
    if check:
        _require_pure(xi)
    n = xi.n
    P = quotient_presentation(_xi_columns(xi), n, orient=[1] * n)
    k = len(P.invariant_factors)
    inner, shell = [], []
    for tors in P.torsion_elements():
        for fr in product(*[range(-box, box + 1)] * P.free_rank):
            c = tors[:k] + tuple(fr)
            ideal = eff_bounds(xi, P.lift(c), check=False)
            log.debug("class %s: mu %d", c, ideal.mu)
            item = (c, ideal, iso_key(xi, ideal.eff))
            (shell if fr and max(map(abs, fr)) == box else inner).append(item)
    entries = {}
    for c, ideal, key in inner + shell:
        if ideal.mu <= C and key not in entries:
            entries[key] = EnumEntry(c, ideal.eff, ideal.mu)
    # shell ideals that are new up to isomorphism
    seen = {key for _, _, key in inner}
    fresh = [ideal.mu for _, ideal, key in shell if key not in seen]
    shell_min = min(fresh) if fresh else None
    if shell_min is None or shell_min > C:
        label = FINITE_LABEL
    else:
        label = OPEN_LABEL
    ordered = tuple(sorted(entries.values(), key=lambda e: e.cls))
    return Enumeration(ordered, C, box, shell_min, label)


__all__ = [
    "EnumEntry",
    "Enumeration",
    "FINITE_LABEL",
    "IsoResult",
    "XiIdeal",
    "eff_bounds",
    "enumerate_small_mu",
    "intersect_modules",
    "iso_key",
    "xi_iso_test",
    "xi_minimal_generators",
]
