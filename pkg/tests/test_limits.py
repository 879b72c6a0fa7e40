import itertools

import pytest
from hypothesis import given, settings

from partset import (Diagram, FiniteCategory, Morphism, ShapeError, codiscrete, coequalizer,
                     colimit, compose, coproduct, discrete, empty, enumerate_morphisms,
                     enumerate_objects_upto, equalizer, identity, limit, point, product, pullback,
                     pushout)
from partset.categories import NatTrans, discrete_category, empty_category, parallel_pair_category
from partset.limits import (Cocone, Cone, cocone_factorization, colimit_map, cone_factorization,
                            glue, limit_map, pullback_diagram, pushout_diagram)

from strategies import cospans, morphisms, objects, parallel

TEST_OBJECTS = enumerate_objects_upto(2)


def cones(F, T):
    cat = F.category
    objs = list(cat.objects)
    for legs in itertools.product(*(enumerate_morphisms(T, F[c]) for c in objs)):
        legs = dict(zip(objs, legs))
        if all(compose(F.arrows[n], legs[s]) == legs[t] for n, (s, t) in cat.arrows.items()):
            yield legs


def cocones(F, T):
    cat = F.category
    objs = list(cat.objects)
    for legs in itertools.product(*(enumerate_morphisms(F[c], T) for c in objs)):
        legs = dict(zip(objs, legs))
        if all(compose(legs[t], F.arrows[n]) == legs[s] for n, (s, t) in cat.arrows.items()):
            yield legs


def assert_limit(F, cone):
    for T in TEST_OBJECTS:
        induced = [tuple(compose(cone.legs[c], phi) for c in F.category.objects)
                   for phi in enumerate_morphisms(T, cone.apex)]
        expected = [tuple(legs[c] for c in F.category.objects) for legs in cones(F, T)]
        assert len(set(induced)) == len(induced)
        assert set(induced) == set(expected)


def assert_colimit(F, cocone):
    for T in TEST_OBJECTS:
        induced = [tuple(compose(phi, cocone.legs[c]) for c in F.category.objects)
                   for phi in enumerate_morphisms(cocone.apex, T)]
        expected = [tuple(legs[c] for c in F.category.objects) for legs in cocones(F, T)]
        assert len(set(induced)) == len(induced)
        assert set(induced) == set(expected)


@settings(max_examples=40, deadline=None)
@given(cospans(2))
def test_pullback_universal(gk):
    g, k = gk
    A, h, f = pullback(g, k)
    assert compose(g, h) == compose(k, f)
    assert_limit(pullback_diagram(g, k), Cone(A, {"a": h, "b": f, "c": compose(g, h)}))
    assert_limit(pullback_diagram(g, k), limit(pullback_diagram(g, k)))


@settings(max_examples=40, deadline=None)
@given(morphisms(2), morphisms(2))
def test_pushout_universal(f, h):
    if f.source != h.source:
        h = Morphism(f.source, discrete(1), [0] * len(f.source)) if len(f.source) else \
            Morphism(f.source, h.target, [])
    D, g, k = pushout(f, h)
    assert compose(g, h) == compose(k, f)
    F = pushout_diagram(f, h)
    assert_colimit(F, Cocone(D, {"a": compose(g, h), "b": g, "c": k}))
    assert_colimit(F, colimit(F))


@settings(max_examples=40, deadline=None)
@given(parallel(2))
def test_equalizer_and_coequalizer_universal(fg):
    f, g = fg
    F = Diagram(parallel_pair_category(), {0: f.source, 1: f.target}, {"f": f, "g": g})
    E, e = equalizer(f, g)
    assert_limit(F, Cone(E, {0: e, 1: compose(f, e)}))
    Q, q = coequalizer(f, g)
    assert_colimit(F, Cocone(Q, {0: compose(q, f), 1: q}))


@settings(max_examples=30, deadline=None)
@given(objects(2), objects(2))
def test_products_and_coproducts_universal(X, Y):
    F = Diagram(discrete_category([0, 1]), {0: X, 1: Y})
    P, (p, q) = product([X, Y])
    assert_limit(F, Cone(P, {0: p, 1: q}))
    S, (i, j) = coproduct([X, Y])
    assert_colimit(F, Cocone(S, {0: i, 1: j}))


def test_empty_diagram():
    F = Diagram(empty_category(), {})
    assert limit(F).apex == point()
    assert colimit(F).apex == empty()


def test_product_partition():
    P, _ = product([discrete(2), codiscrete(2)])
    assert len(P) == 4 and len(P.blocks) == 2


def test_counterexample_pullback_is_empty():
    one = discrete(1)
    f = Morphism(one, codiscrete(2), [0])
    g = Morphism(one, codiscrete(2), [1])
    assert len(pullback(f, g)[0]) == 0


@given(objects(4), objects(4))
def test_glue_matches_naive_closure(X, Y):
    pairs = list(zip(X.elements, Y.elements))
    pairs = [(a, b) for a, b in pairs if b in X]
    Q, proj = glue(X, pairs)
    for a in X.elements:
        for b in X.elements:
            linked = proj(a) == proj(b)
            if (a, b) in pairs or a == b:
                assert linked
            if X.are_equivalent(a, b):
                assert Q.are_equivalent(proj(a), proj(b))


@given(cospans(2))
def test_factorizations_through_cones(gk):
    g, k = gk
    F = pullback_diagram(g, k)
    cone = limit(F)
    assert cone_factorization(cone, cone) == identity(cone.apex)
    cocone = colimit(F)
    assert cocone_factorization(cocone, cocone) == identity(cocone.apex)


@given(parallel(2))
def test_induced_maps_of_identities(fg):
    f, g = fg
    F = Diagram(parallel_pair_category(), {0: f.source, 1: f.target}, {"f": f, "g": g})
    eta = NatTrans(F, F, {0: identity(f.source), 1: identity(f.target)})
    assert limit_map(eta) == identity(limit(F).apex)
    assert colimit_map(eta) == identity(colimit(F).apex)


def test_shape_errors():
    f = Morphism(discrete(1), discrete(2), [0])
    with pytest.raises(ShapeError):
        equalizer(f, identity(discrete(1)))
    with pytest.raises(ShapeError):
        pullback(f, identity(discrete(1)))
    with pytest.raises(ShapeError):
        pushout(f, identity(discrete(2)))


def test_category_validation():
    with pytest.raises(Exception):
        FiniteCategory([0], {"u": (0, 0)})
