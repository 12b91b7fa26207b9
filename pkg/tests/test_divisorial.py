from fractions import Fraction
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import certified_minimal_generators
from semidiv import (canonical_class, class_group, class_lift, class_of_bounds,
                     minimal_generators, polyhedron_vertices, torsion_order)
from semidiv.divisorial import bounds_polyhedron, mu_of_class, tighten


def segre_mu(i):
    return i + 1 if i >= 0 else comb(-i + 2, 2)


def test_class_groups(corpus):
    got = {k: class_group(S).describe() for k, S in corpus.items()}
    assert got == {"z2": "0", "quad": "Z/2", "segre": "Z", "vs": "Z/2 + Z",
                   "tor3": "Z/3", "tor22": "Z/2 + Z/2"}
    G = class_group(corpus["segre"])
    assert G.invariant_factors == () and G.free_rank == 1


def test_class_of_bounds(quad, segre_G):
    assert class_of_bounds(segre_G, (1, 0, 0, 0, 0)) == (1,)
    Gq = class_group(quad)
    assert class_of_bounds(Gq, (1, 0)) == (1,)
    assert class_of_bounds(Gq, (0, 0)) == (0,)


def test_lift_round_trip(corpus):
    for S in corpus.values():
        G = class_group(S)
        for c in [G.zero()] + [tuple(G.reduce([j] * len(G.zero()))) for j in range(-3, 4)]:
            a = class_lift(G, c)
            assert class_of_bounds(G, a) == G.reduce(c)
            assert tighten(S, a) == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["quad", "segre", "vs", "tor22"]), st.data())
def test_principal_classes_trivial(corpus, name, data):
    S = corpus[name]
    G = class_group(S)
    x = data.draw(st.lists(st.integers(-9, 9), min_size=S.rank, max_size=S.rank))
    assert G.reduce(class_of_bounds(G, S.sigma(x))) == G.zero()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["quad", "segre", "tor3", "tor22"]), st.data())
def test_mu_translation_invariance(corpus, name, data):
    S = corpus[name]
    a = data.draw(st.lists(st.integers(-2, 2), min_size=S.s, max_size=S.s))
    x = data.draw(st.lists(st.integers(-4, 4), min_size=S.rank, max_size=S.rank))
    b = [p + q for p, q in zip(a, S.sigma(x))]
    gens_a = minimal_generators(S, a).points
    gens_b = minimal_generators(S, b).points
    assert sorted(tuple(p + q for p, q in zip(g, x)) for g in gens_a) == sorted(gens_b)


def test_minimal_generators_examples(quad, segre, segre_G):
    assert minimal_generators(quad, (0, 0)).points == ((0, 0),)
    assert sorted(minimal_generators(quad, (1, 0)).points) == [(1, 1), (1, 2)]
    assert mu_of_class(segre_G, (2,)) == 3
    assert mu_of_class(segre_G, (-2,)) == 6
    assert [mu_of_class(segre_G, (i,)) for i in range(-4, 6)] == [segre_mu(i) for i in range(-4, 6)]


def test_generators_are_minimal(segre, segre_G):
    for i in (-2, 1, 3):
        a = class_lift(segre_G, (i,))
        for x in minimal_generators(segre, a).points:
            assert all(v >= b for v, b in zip(segre.sigma(x), a))
            for h in segre.hilbert_basis:
                y = [p - q for p, q in zip(x, h)]
                assert not all(v >= b for v, b in zip(segre.sigma(y), a))


def test_canonical_class(z2, quad, segre, segre_G):
    assert canonical_class(class_group(z2)) == ((1, 1), ())
    # (1,1) = sigma of the point (1,1) of the quadratic cone: omega is principal
    assert quad.sigma((1, 1)) == (1, 1)
    assert canonical_class(class_group(quad)) == ((1, 1), (0,))
    a, w = canonical_class(segre_G)
    assert a == (1,) * 5 and w == (1,)
    assert minimal_generators(segre, a).mu == segre_mu(1)


def test_torsion_order_examples(z2, quad, segre_G):
    assert torsion_order(class_group(z2), (), verify=True) == 1
    Gq = class_group(quad)
    assert torsion_order(Gq, (1,), verify=True) == 2
    assert list(polyhedron_vertices(bounds_polyhedron(quad, (1, 0)))) == [(Fraction(1, 2), 1)]
    assert torsion_order(segre_G, (1,), verify=True) is None
    assert len(polyhedron_vertices(bounds_polyhedron(segre_G.semigroup, class_lift(segre_G, (1,))))) >= 2


def test_torsion_iff_single_vertex(tor3, tor22, segre_G):
    checked = 0
    for S in (tor3, tor22):
        G = class_group(S)
        for c in G.presentation.torsion_elements():
            assert torsion_order(G, c, verify=True) is not None
            assert len(polyhedron_vertices(bounds_polyhedron(S, class_lift(G, c)))) == 1
            checked += 1
    for i in range(-10, 10):
        order = torsion_order(segre_G, (i,), verify=True)
        assert (order is None) == (i != 0)
        checked += 1
    assert checked == 3 + 4 + 20


CORPUS_23 = ["quad", "z2", "tor3", "tor22"]


def test_mingen_vs_certified_scan_quadratic(quad):
    for a in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3), (-1, 2)]:
        got = sorted(minimal_generators(quad, a).points)
        assert got == certified_minimal_generators(quad.support_forms, a, quad.rays,
                                                   quad.hilbert_basis)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CORPUS_23), st.data())
def test_mingen_vs_certified_scan(corpus, name, data):
    S = corpus[name]
    a = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=S.s, max_size=S.s)))
    got = sorted(minimal_generators(S, a).points)
    assert got == certified_minimal_generators(S.support_forms, a, S.rays, S.hilbert_basis)
