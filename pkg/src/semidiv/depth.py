"""Depth bounds, Hilbert-Samuel multiplicities and Cohen-Macaulay tests.

Also the growth analysis of mu along arithmetic progressions jc + d in the
class group.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from ._linalg import determinant, dot
from .divisorial import bounds_polyhedron, class_group, class_lift, minimal_generators
from .errors import HypothesisError, StabilizationError
from .hilbert import rees_hilbert_basis, triangulate
from .polyhedral import DEFAULT_FACE_CAP, face_lattice, rational_lp
from .xiconvex import enumerate_small_mu

log = logging.getLogger(__name__)

DEFAULT_HS_WINDOW = 30


# ---------------------------------------------------------------------------
# grade mP and lambda


@dataclass(frozen=True)
class DepthBounds:
    grade_mP: int
    lam: int
    grade_witness: tuple
    lambda_witness: tuple


def _meets_only_at_zero(S, J):
    return not any(all(dot(S.support_forms[i], v) == 0 for i in J) for v in S.rays)


def _support(S, h):
    return frozenset(i for i, f in enumerate(S.support_forms) if dot(f, h) > 0)


def _max_disjoint(sets):
    """Largest family of pairwise disjoint sets (exhaustive with pruning)."""
    sets = sorted(set(sets), key=lambda t: (len(t), sorted(t)))
    best = []

    def rec(start, chosen, used):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(sets) - start <= len(best):
            return
        for k in range(start, len(sets)):
            if not sets[k] & used:
                chosen.append(sets[k])
                rec(k + 1, chosen, used | sets[k])
                chosen.pop()

    rec(0, [], frozenset())
    return best


def depth_bounds(S):
    J = next(J for u in range(1, S.s + 1) for J in combinations(range(S.s), u)
             if _meets_only_at_zero(S, J))
    supports = {}
    for h in S.hilbert_basis:
        supports.setdefault(_support(S, h), h)
    packing = _max_disjoint(list(supports))
    witness = tuple(sorted(supports[z] for z in packing))
    return DepthBounds(len(J), len(packing), tuple(J), witness)


def _face_is_zero_lp(S, J):
    """LP check that the facets J meet only at 0: max tau on the face is 0."""
    forms = [list(f) for f in S.support_forms]
    bounds = [0] * S.s
    for i in J:
        forms.append([-x for x in S.support_forms[i]])
        bounds.append(0)
    forms.append([-t for t in S.tau])
    bounds.append(-1)
    return rational_lp(forms, bounds, list(S.tau), "max").value == 0


def grade_by_lp(S):
    """grade mP recomputed from LPs over facet subsets."""
    for u in range(1, S.s + 1):
        if any(_face_is_zero_lp(S, J) for J in combinations(range(S.s), u)):
            return u
    raise AssertionError("the facets do not meet at 0")


def lambda_by_subsets(S):
    """lambda from its definition: disjoint facet subsets A with
    the intersection of the facets outside A different from {0}."""
    good = []
    for u in range(1, S.s + 1):
        for A in combinations(range(S.s), u):
            outside = [i for i in range(S.s) if i not in A]
            if not _face_is_zero_lp(S, outside):
                good.append(frozenset(A))
    return len(_max_disjoint(good))


# ---------------------------------------------------------------------------
# Hilbert-Samuel multiplicity


@dataclass(frozen=True)
class Multiplicity:
    e: int
    chi: tuple
    differences: tuple
    window: int


def _differences(seq, d):
    for _ in range(d):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq


def hilbert_samuel_multiplicity(S, a=None, window=DEFAULT_HS_WINDOW):
    """e(M) from chi(n) = #{x in T(a) : ord(x) <= n}, n = 0..window.

    ord(x) is the largest k with x in m^k T(a).  Points are handled through
    their sigma-images; the window points are reached from the minimal
    generators by at most ``window`` Hilbert-basis steps.
    """
    a = tuple(a) if a is not None else (0,) * S.s
    d = S.rank
    gens = [S.sigma(g) for g in minimal_generators(S, a).points]
    steps = [S.sigma(h) for h in S.hilbert_basis]
    level = {g: 0 for g in gens}
    frontier = list(gens)
    for _ in range(window):
        nxt = []
        for p in frontier:
            for h in steps:
                q = tuple(x + y for x, y in zip(p, h))
                if q not in level:
                    level[q] = None
                    nxt.append(q)
        frontier = nxt
    ordv = {}
    over = window + 1
    for p in sorted(level, key=sum):  # sum of sigma-values is tau
        best = -1
        for h in steps:
            q = tuple(x - y for x, y in zip(p, h))
            if all(x >= b for x, b in zip(q, a)):
                o = ordv.get(q, over)
                if o > best:
                    best = o
        ordv[p] = min(best + 1, over)
    counts = [0] * (window + 1)
    for o in ordv.values():
        if o <= window:
            counts[o] += 1
    chi = []
    total = 0
    for c in counts:
        total += c
        chi.append(total)
    diffs = _differences(chi, d)
    tail = diffs[-5:]
    if len(diffs) < 5 or len(set(tail)) != 1 or tail[0] <= 0:
        raise StabilizationError(
            f"window too small - differences not stabilized (window {window})", diffs[-8:])
    return Multiplicity(tail[0], tuple(chi), tuple(diffs), window)


# ---------------------------------------------------------------------------
# Serre's numerical criterion with a generic homogeneous parameter system

SERRE_PRIME = 2147483647
SERRE_SEED = 20260101


def _graded_points(starts, steps, top):
    """sigma-images of starts + (sums of steps), bucketed by total degree <= top."""
    by_deg = {}
    for p in starts:
        if sum(p) <= top:
            by_deg.setdefault(sum(p), set()).add(p)
    for k in range(top + 1):
        for p in list(by_deg.get(k, ())):
            for h in steps:
                q = tuple(x + y for x, y in zip(p, h))
                dq = k + sum(h)
                if dq <= top:
                    by_deg.setdefault(dq, set()).add(q)
    return {k: sorted(v) for k, v in by_deg.items()}


def _rank_mod_p(rows, p=SERRE_PRIME):
    if not len(rows):
        return 0
    A = np.array(rows, dtype=np.int64) % p
    rank = 0
    nrows, ncols = A.shape
    for col in range(ncols):
        piv = np.nonzero(A[rank:, col])[0]
        if not len(piv):
            continue
        i = rank + piv[0]
        A[[rank, i]] = A[[i, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = (A[rank] * inv) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != rank]
        if len(others):
            f = A[others, col][:, None]
            A[others] = (A[others] - f * A[rank][None, :]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def normalized_volume(S):
    """r! * vol{x in C(S) : tau(x) <= 1}, from the pulling triangulation."""
    rays = list(S.rays)
    tau = [dot(S.tau, v) for v in rays]
    total = Fraction(0)
    for simplex in triangulate(rays, list(S.support_forms)):
        det = abs(determinant([rays[k] for k in simplex]))
        den = 1
        for k in simplex:
            den *= tau[k]
        total += det / den
    return total


def _sop_degree(S):
    return lcm(*(dot(S.tau, v) for v in S.rays))


def _quotient_length(S, a, D, coeffs):
    """dim_K M/qM over F_p, q generated by the rows of ``coeffs`` (elements of R_D)."""
    steps = [S.sigma(h) for h in S.hilbert_basis]
    gens = [S.sigma(g) for g in minimal_generators(S, a).points]
    gdeg = max(sum(g) for g in gens)
    hmax = max(sum(h) for h in steps)
    monos = _graded_points([(0,) * S.s], steps, D).get(D, [])
    top = gdeg + D + hmax
    length = 0
    while True:
        pts = _graded_points(gens, steps, top)
        zero_run = 0
        length = 0
        for k in range(top + 1):
            cur = pts.get(k, [])
            prev = pts.get(k - D, [])
            index = {q: t for t, q in enumerate(cur)}
            rows = []
            for c in coeffs:
                for y in prev:
                    row = [0] * len(cur)
                    for cm, m in zip(c, monos):
                        row[index[tuple(u + v for u, v in zip(y, m))]] += cm
                    rows.append(row)
            ell = len(cur) - _rank_mod_p(rows)
            length += ell
            zero_run = zero_run + 1 if ell == 0 else 0
        if zero_run >= hmax and top >= gdeg + hmax:
            return length
        top *= 2


def serre_lengths(S, a, seed=SERRE_SEED):
    """(l(M/qM), l(R/qR), deg q) for a generic homogeneous parameter system q.

    q consists of rank(S) random combinations of the monomials of tau-degree
    D = lcm(tau(rays)), coefficients in F_p.  l(R/qR) must equal
    D^r * normalized_volume(S); a mismatch triggers a reseed.
    """
    D = _sop_degree(S)
    steps = [S.sigma(h) for h in S.hilbert_basis]
    monos = _graded_points([(0,) * S.s], steps, D).get(D, [])
    expected = D ** S.rank * normalized_volume(S)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        coeffs = rng.integers(1, SERRE_PRIME, size=(S.rank, len(monos))).tolist()
        ring = _quotient_length(S, (0,) * S.s, D, coeffs)
        if ring == expected:
            return _quotient_length(S, a, D, coeffs), ring, D
    raise RuntimeError("no parameter system found")


@dataclass(frozen=True)
class CMResult:
    cohen_macaulay: bool
    e_module: int
    e_ring: int
    mu: int
    length_module: int
    length_ring: int
    sop_degree: int


def cohen_macaulay_test(S, a, window=DEFAULT_HS_WINDOW, e_ring=None):
    """CM iff l(M/qM) = l(R/qR) = e(q, M) for a parameter system q.

    The Hilbert-Samuel multiplicities e(M), e(R) and mu(M) are reported
    alongside; for a rank-one module e(M) = e(R) always.
    """
    if e_ring is None:
        e_ring = hilbert_samuel_multiplicity(S, None, window).e
    eM = hilbert_samuel_multiplicity(S, a, window).e
    mu = minimal_generators(S, a).mu
    lm, lr, D = serre_lengths(S, a)
    return CMResult(lm == lr, eM, e_ring, mu, lm, lr, D)


def cm_classes(S, G=None, box=6, window=DEFAULT_HS_WINDOW):
    """Cohen-Macaulay classes among those with mu <= e(R) inside the box.

    A CM module has mu <= l(M/qM) = l(R/qR), so the small-mu enumeration
    with that bound supplies all candidates in the box.
    """
    G = G or class_group(S)
    e_ring = hilbert_samuel_multiplicity(S, None, window).e
    _, bound, _ = serre_lengths(S, (0,) * S.s)
    enum = enumerate_small_mu(S.standard_system(), bound, box, check=False)
    out = []
    for entry in enum.entries:
        res = cohen_macaulay_test(S, entry.eff, window, e_ring)
        log.info("class %s: e(M) = %d, mu = %d", entry.cls, res.e_module, res.mu)
        if res.cohen_macaulay:
            out.append(entry.cls)
    return sorted(out), e_ring, enum


@dataclass(frozen=True)
class SimplicialReport:
    simplicial: bool
    n_rays: int
    rank: int
    class_group: str
    all_cm: bool = None


def simplicial_check(S, window=DEFAULT_HS_WINDOW, max_classes=16):
    """Simplicial iff #rays = rank; then Cl is finite and every class is CM."""
    G = class_group(S)
    simp = len(S.rays) == S.rank
    all_cm = None
    if simp:
        if not G.presentation.is_finite:
            raise AssertionError("simplicial cone with infinite class group")
        elems = G.presentation.torsion_elements()
        if len(elems) <= max_classes:
            e_ring = hilbert_samuel_multiplicity(S, None, window).e
            all_cm = all(cohen_macaulay_test(S, class_lift(G, c), window, e_ring).cohen_macaulay
                         for c in elems)
            if not all_cm:
                raise AssertionError("simplicial semigroup with a non-CM class")
    return SimplicialReport(simp, len(S.rays), S.rank, G.describe(), all_cm)


# ---------------------------------------------------------------------------
# progressions


@dataclass(frozen=True)
class ProgressionReport:
    c: tuple
    d: tuple
    mu_table: tuple
    period: int
    degree: int
    limits: tuple
    veronese_limits: tuple
    inf_depth: int
    rank: int


def _constant_tail(seq, length):
    return len(seq) >= length and len(set(seq[-length:])) == 1


def progression_analysis(S, c, d=None, J=20, G=None, cap=DEFAULT_FACE_CAP):
    """mu(M_{jc+d}) for j = 0..J with period, degree and leading limits.

    For residue k mod e the subsequence t -> mu((k + e t)c + d) has constant
    m-th differences D_k; ``veronese_limits`` are the D_k and ``limits`` are
    D_k / e^m, the leading coefficients m! * mu / j^m in the original index.
    """
    G = G or class_group(S)
    P = G.presentation
    c = G.reduce(c)
    d = G.reduce(d) if d is not None else G.zero()
    if P.element_order(c) is not None:
        raise HypothesisError("progression direction must be non-torsion")
    m = face_lattice(bounds_polyhedron(S, class_lift(G, c)), cap).max_compact_dim
    mus = []
    for j in range(J + 1):
        cls = P.add(P.scale(j, c), d)
        mus.append(minimal_generators(S, class_lift(G, cls)).mu)
        log.info("j=%d class %s mu %d", j, cls, mus[-1])
    for e in range(1, J // 4 + 1):
        subs = [mus[k::e] for k in range(e)]
        diffs = [_differences(sub, m) for sub in subs]
        if all(_constant_tail(df, max(5, e)) and df[-1] > 0 for df in diffs):
            lead = tuple(df[-1] for df in diffs)
            limits = tuple(Fraction(x, e ** m) for x in lead)
            return ProgressionReport(c, d, tuple(mus), e, m, limits, lead, S.rank - m, S.rank)
    raise StabilizationError(
        f"no period e <= {J // 4} gives constant {m}-th differences; increase J", mus)


def rees_degrees(S, c, G=None):
    """t-degrees of the Hilbert basis of the Rees cone of class c, and their lcm."""
    G = G or class_group(S)
    hb = rees_hilbert_basis(S.support_forms, class_lift(G, c))
    degs = sorted({h[-1] for h in hb if h[-1] > 0})
    return degs, lcm(*degs) if degs else 1


__all__ = [
    "CMResult",
    "DepthBounds",
    "Multiplicity",
    "ProgressionReport",
    "SimplicialReport",
    "cm_classes",
    "cohen_macaulay_test",
    "depth_bounds",
    "grade_by_lp",
    "hilbert_samuel_multiplicity",
    "lambda_by_subsets",
    "progression_analysis",
    "normalized_volume",
    "rees_degrees",
    "serre_lengths",
    "simplicial_check",
]
