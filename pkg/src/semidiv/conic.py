"""Conic divisor classes, face ideals and Frobenius decompositions.

A bound vector a is conic when a_i = ceil(sigma_i(beta)) for a real beta,
i.e. when the mixed system a_i - 1 < sigma_i(beta) <= a_i is feasible.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from ._linalg import dot
from .divisorial import class_group, class_of_bounds
from .errors import InputError
from .polyhedral import strict_feasibility

log = logging.getLogger(__name__)

FROBENIUS_LADDER = tuple(range(1, 25))


def _cell_system(S, a, cube=False):
    """Weak and strict parts of {a_i - 1 < sigma_i(b) <= a_i} (plus 0 <= b_j < 1)."""
    r = S.rank
    weak_f = [[-x for x in f] for f in S.support_forms]
    weak_b = [-x for x in a]
    strict_f = [list(f) for f in S.support_forms]
    strict_b = [x - 1 for x in a]
    if cube:
        for j in range(r):
            e = [int(k == j) for k in range(r)]
            weak_f.append(e)
            weak_b.append(0)
            strict_f.append([-x for x in e])
            strict_b.append(-1)
    return weak_f, weak_b, strict_f, strict_b


def conic_witness(S, a, cube=False):
    """A rational beta with ceil(sigma(beta)) = a, or None."""
    res = strict_feasibility(*_cell_system(S, a, cube), dim=S.rank)
    return res.witness if res.feasible else None


def is_conic(S, a):
    return conic_witness(S, tuple(a)) is not None


@dataclass(frozen=True)
class ConicClass:
    cls: tuple
    bounds: tuple
    witness: tuple


@dataclass(frozen=True)
class ConicReport:
    classes: tuple
    complete: bool = True

    @property
    def class_set(self):
        return frozenset(c.cls for c in self.classes)


def _prefix_feasible(S, prefix):
    k = len(prefix)
    r = S.rank
    forms = S.support_forms[:k]
    weak_f = [[-x for x in f] for f in forms]
    weak_b = [-x for x in prefix]
    strict_f = [list(f) for f in forms]
    strict_b = [x - 1 for x in prefix]
    for j in range(r):
        e = [int(t == j) for t in range(r)]
        weak_f.append(e)
        weak_b.append(0)
        strict_f.append([-x for x in e])
        strict_b.append(-1)
    return strict_feasibility(weak_f, weak_b, strict_f, strict_b, dim=r).feasible


def conic_classes(S, G=None):
    """All conic classes, with one bound vector and witness beta in [0,1)^r each."""
    G = G or class_group(S)
    # ceil(sigma_i) over the closed unit cube
    ranges = []
    for f in S.support_forms:
        lo = sum(x for x in f if x < 0)
        hi = sum(x for x in f if x > 0)
        ranges.append(range(ceil(lo), ceil(hi) + 1))
    found = {}

    def rec(prefix):
        if prefix and not _prefix_feasible(S, prefix):
            return
        if len(prefix) == S.s:
            a = tuple(prefix)
            beta = conic_witness(S, a, cube=True)
            c = class_of_bounds(G, a)
            if c not in found:
                found[c] = ConicClass(c, a, beta)
            return
        for v in ranges[len(prefix)]:
            rec(prefix + [v])

    rec([])
    return ConicReport(tuple(found[c] for c in sorted(found)))


def _interior_point(S):
    return [sum(col) for col in zip(*S.rays)]


def face_closure(S, J):
    """Facets containing the face cut out by the facets J."""
    J = frozenset(J)
    if any(not 0 <= i < S.s for i in J):
        raise InputError("facet index out of range")
    face_rays = [v for v in S.rays if all(dot(S.support_forms[i], v) == 0 for i in J)]
    return frozenset(i for i, f in enumerate(S.support_forms)
                     if all(dot(f, v) == 0 for v in face_rays)), face_rays


@dataclass(frozen=True)
class FaceIdeals:
    tight: tuple
    q_bounds: tuple
    q_witness: tuple
    r_bounds: tuple
    r_witness: tuple


def face_ideal_bounds(S, J):
    """Bound vectors of q_G and r_G for the face G given by its facet set J.

    Both witnesses come from gamma + c*delta with gamma in the interior of
    -C(S) and delta in the relative interior of G; q_G uses the negative.
    """
    closed, face_rays = face_closure(S, J)
    if closed != frozenset(J):
        raise InputError(f"{sorted(J)} is not the facet set of a face (closure {sorted(closed)})")
    q = tuple(int(i in closed) for i in range(S.s))
    r_ = tuple(1 - x for x in q)
    gamma = [-x for x in _interior_point(S)]
    delta = [sum(col) for col in zip(*face_rays)] if face_rays else [0] * S.rank
    c = Fraction(0)
    for f in S.support_forms:
        sd = dot(f, delta)
        if sd > 0:
            c = max(c, Fraction(-dot(f, gamma), sd) + 1)
    v = [g + c * d for g, d in zip(gamma, delta)]
    top = max(abs(dot(f, v)) for f in S.support_forms)
    v = [x / (2 * top) for x in v]
    r_witness = tuple(v)
    q_witness = tuple(-x for x in v)
    for a, beta in ((q, q_witness), (r_, r_witness)):
        vals = [dot(f, beta) for f in S.support_forms]
        if any(ceil(x) != ai for x, ai in zip(vals, a)):
            raise AssertionError("face-ideal witness does not realize its bound vector")
        if not is_conic(S, a):
            raise AssertionError("face ideal failed the strict feasibility check")
    return FaceIdeals(tuple(sorted(closed)), q, q_witness, r_, r_witness)


def canonical_dual_bounds(S, a):
    """Bound vector of omega : T(a) for a conic a, with its witness.

    Returns (1 - a, -beta) where beta realizes a and no sigma_i(beta) is an
    integer.
    """
    a = tuple(a)
    res = strict_feasibility(*_cell_system(S, a), dim=S.rank)
    if not res.feasible:
        raise InputError("bound vector is not conic")
    beta = list(res.witness)
    v = _interior_point(S)
    eta = res.slack / (2 * max(dot(f, v) for f in S.support_forms))
    beta = [b - eta * x for b, x in zip(beta, v)]
    vals = [dot(f, beta) for f in S.support_forms]
    if any(x.denominator == 1 for x in map(Fraction, vals)):
        raise RuntimeError("perturbed witness still meets an integer value")
    dual = tuple(1 - x for x in a)
    witness = tuple(-b for b in beta)
    if any(ceil(dot(f, witness)) != d for f, d in zip(S.support_forms, dual)):
        raise RuntimeError("dual witness mismatch")
    if not is_conic(S, dual):
        raise AssertionError("canonical dual is not conic")
    return dual, witness


def frobenius_classes(S, k, G=None, chunk=200000):
    """Class multiset of the coset modules {x in S : x = z mod k}, z in (Z/k)^r.

    The coset of z is z + k * T(a) with a_i = ceil(-sigma_i(z) / k).
    """
    if k < 1:
        raise InputError("k must be >= 1")
    G = G or class_group(S)
    P = G.presentation
    r = S.rank
    sig = np.array(S.support_forms, dtype=np.int64).T  # r x s
    proj = np.array(P.projection, dtype=np.int64).T if P.projection else np.zeros((S.s, 0), np.int64)
    mods = list(P.invariant_factors)
    counts = Counter()
    total = k ** r
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        z = np.empty((len(idx), r), dtype=np.int64)
        rest = idx.copy()
        for j in range(r - 1, -1, -1):
            z[:, j] = rest % k
            rest //= k
        a = -np.floor_divide(z @ sig, k)
        c = a @ proj
        for t, d in enumerate(mods):
            c[:, t] %= d
        rows, cnt = np.unique(c, axis=0, return_counts=True)
        for row, n in zip(rows, cnt):
            counts[tuple(int(x) for x in row)] += int(n)
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class FrobeniusReport:
    k: int
    multiplicities: dict
    conic: frozenset
    ladder: tuple
    threshold: int
    stable_set: frozenset

    @property
    def class_set(self):
        return frozenset(self.multiplicities)


def frobenius_decomposition(S, k, G=None, conic=None):
    """Classes of R over R^(k) plus the empirical stabilization threshold."""
    G = G or class_group(S)
    conic = conic if conic is not None else conic_classes(S, G).class_set
    mult = frobenius_classes(S, k, G)
    if not set(mult) <= conic:
        raise AssertionError("a Frobenius summand is not conic")
    ladder = []
    prev = None
    threshold = None
    for kk in FROBENIUS_LADDER:
        cur = frozenset(frobenius_classes(S, kk, G))
        log.info("frobenius k=%d: %d classes", kk, len(cur))
        if not cur <= conic:
            raise AssertionError("a Frobenius summand is not conic")
        ladder.append((kk, cur))
        if prev is not None and cur == prev:
            threshold = kk - 1
            break
        prev = cur
    stable = ladder[-1][1]
    return FrobeniusReport(k, mult, conic, tuple(ladder), threshold, stable)


__all__ = [
    "ConicClass",
    "ConicReport",
    "FaceIdeals",
    "FrobeniusReport",
    "canonical_dual_bounds",
    "conic_classes",
    "conic_witness",
    "face_closure",
    "face_ideal_bounds",
    "frobenius_classes",
    "frobenius_decomposition",
    "is_conic",
]
