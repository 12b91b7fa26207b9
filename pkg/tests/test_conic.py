from collections import Counter
from itertools import product
from math import ceil

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coset_bounds, dot, grid_conic_bounds
from semidiv import (canonical_dual_bounds, class_group, class_lift, class_of_bounds,
                     conic_classes, face_ideal_bounds, frobenius_decomposition, is_conic)
from semidiv.conic import face_closure, frobenius_classes
from semidiv.errors import InputError

import pytest

SEGRE_CONIC = {(-1,), (0,), (1,), (2,)}


def test_conic_small(z2, quad, tor3, tor22):
    assert conic_classes(z2).class_set == {()}
    assert conic_classes(quad).class_set == {(0,), (1,)}
    for S in (tor3, tor22):
        G = class_group(S)
        assert conic_classes(S, G).class_set == set(G.presentation.torsion_elements())


def test_conic_segre(segre, segre_G, segre_conic):
    assert segre_conic.class_set == SEGRE_CONIC
    assert segre_conic.complete
    for cc in segre_conic.classes:
        assert all(0 <= b < 1 for b in cc.witness)
        assert tuple(ceil(dot(f, cc.witness)) for f in segre.support_forms) == cc.bounds
        assert class_of_bounds(segre_G, cc.bounds) == cc.cls


def test_conic_vs_grid_oracle(segre, segre_G, quad):
    grid = {class_of_bounds(segre_G, a) for a in grid_conic_bounds(segre.support_forms, 6)}
    assert grid == SEGRE_CONIC
    Gq = class_group(quad)
    grid = {Gq.reduce(class_of_bounds(Gq, a)) for a in grid_conic_bounds(quad.support_forms, 8)}
    assert grid == {(0,), (1,)}


def test_is_conic(segre, segre_G):
    assert is_conic(segre, class_lift(segre_G, (2,)))
    assert not is_conic(segre, class_lift(segre_G, (3,)))


def test_conic_translation_invariance(segre, segre_G, segre_conic):
    # shifting the cube by an integer vector t adds sigma(t) to every bound vector
    import random
    rng = random.Random(7)
    for _ in range(10):
        t = [rng.randint(-5, 5) for _ in range(segre.rank)]
        shifted = {class_of_bounds(segre_G, [a + b for a, b in zip(cc.bounds, segre.sigma(t))])
                   for cc in segre_conic.classes}
        assert shifted == SEGRE_CONIC


def test_face_ideals(segre, quad, z2):
    fi = face_ideal_bounds(segre, [])  # G = C(S): no facet contains it
    assert fi.q_bounds == (0,) * 5 and fi.r_bounds == (1,) * 5
    allf = list(range(segre.s))
    fi = face_ideal_bounds(segre, allf)
    assert fi.q_bounds == (1,) * 5 and fi.r_bounds == (0,) * 5
    fi = face_ideal_bounds(segre, [0])
    assert fi.q_bounds == (1, 0, 0, 0, 0)
    i = quad.support_forms.index((0, 1))  # the facet y = 0 is the ray (1,0)
    fi = face_ideal_bounds(quad, [i])
    assert fi.q_bounds == tuple(int(j == i) for j in range(2))
    for S in (segre, quad, z2):
        for J in range(1 << S.s):
            Js = [k for k in range(S.s) if J >> k & 1]
            closed, _ = face_closure(S, Js)
            if closed == frozenset(Js):
                fi = face_ideal_bounds(S, Js)
                assert is_conic(S, fi.q_bounds) and is_conic(S, fi.r_bounds)
    with pytest.raises(InputError):
        face_ideal_bounds(segre, [2, 3])  # closure is every facet


def test_face_ideal_empty_face_is_canonical(segre):
    # the zero face: every facet contains it, so q = omega
    fi = face_ideal_bounds(segre, range(segre.s))
    assert fi.q_bounds == (1,) * segre.s


def test_canonical_dual(segre, segre_G, quad, segre_conic):
    Gq = class_group(quad)
    dual, w = canonical_dual_bounds(quad, (1, 1))
    assert Gq.reduce(class_of_bounds(Gq, dual)) == (0,)
    dual, _ = canonical_dual_bounds(quad, (1, 0))
    assert dual == (0, 1) and class_of_bounds(Gq, dual) == (1,)
    dual, w = canonical_dual_bounds(segre, class_lift(segre_G, (2,)))
    assert class_of_bounds(segre_G, dual) == (-1,)
    omega = class_of_bounds(segre_G, (1,) * 5)
    for cc in segre_conic.classes:
        dual, w = canonical_dual_bounds(segre, cc.bounds)
        c = class_of_bounds(segre_G, dual)
        assert c in SEGRE_CONIC
        assert c[0] == omega[0] - cc.cls[0]
        assert tuple(ceil(dot(f, w)) for f in segre.support_forms) == dual


def test_frobenius_k1(segre, quad):
    assert frobenius_classes(segre, 1) == {(0,): 1}
    assert frobenius_classes(quad, 1) == {(0,): 1}


def test_frobenius_quadratic(quad):
    rep = frobenius_decomposition(quad, 2)
    assert sum(rep.multiplicities.values()) == 4
    assert set(rep.multiplicities) <= {(0,), (1,)}
    assert rep.multiplicities == {(0,): 2, (1,): 2}
    assert rep.stable_set == {(0,), (1,)} and rep.threshold == 2


def test_frobenius_segre(segre, segre_G, segre_conic):
    rep = frobenius_decomposition(segre, 3, segre_G, segre_conic.class_set)
    assert rep.multiplicities == {(-1,): 5, (0,): 45, (1,): 30, (2,): 1}
    ladder = {k: set(cs) for k, cs in rep.ladder}
    assert ladder[1] == {(0,)} and ladder[2] == {(-1,), (0,), (1,)}
    assert ladder[3] == ladder[4] == SEGRE_CONIC
    assert rep.threshold == 3 and rep.stable_set == SEGRE_CONIC
    for k in (5, 6):
        assert set(frobenius_classes(segre, k, segre_G)) == SEGRE_CONIC


@pytest.mark.parametrize("k", [2, 3])
def test_frobenius_vs_coset_oracle(quad, tor22, k):
    for S in (quad, tor22):
        G = class_group(S)
        oracle = Counter()
        for z in product(range(k), repeat=S.rank):
            a = coset_bounds(S.support_forms, k, z, 6)
            oracle[G.reduce(class_of_bounds(G, a))] += 1
        assert frobenius_classes(S, k, G) == dict(oracle)


def test_frobenius_vs_coset_oracle_segre(segre, segre_G):
    oracle = Counter()
    for z in product(range(2), repeat=segre.rank):
        oracle[class_of_bounds(segre_G, coset_bounds(segre.support_forms, 2, z, 3))] += 1
    assert frobenius_classes(segre, 2, segre_G) == dict(oracle)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["quad", "tor3", "tor22"]), st.integers(1, 7))
def test_torsion_subset_of_frobenius_stable(corpus, name, k):
    S = corpus[name]
    G = class_group(S)
    conic = conic_classes(S, G).class_set
    assert set(G.presentation.torsion_elements()) <= conic
    assert set(frobenius_classes(S, k, G)) <= conic
