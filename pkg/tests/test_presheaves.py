import itertools

import pytest
from hypothesis import given, settings, strategies as st

from partset import (Morphism, NatTrans, Presheaf, ShapeError, classify, classify_pointwise,
                     codiscrete, compose, d_diagram_fibrancy, discrete, empty, enumerate_morphisms,
                     enumerate_objects_upto, equalizer_comparison, generating_cofibration,
                     hom_object, identity, interval, path_object, point, power_object,
                     presheaf_exponential_law, presheaf_hom, presheaf_homotopy_equalizer,
                     presheaf_sm7_map, sm7_map)
from partset.categories import (enumerate_nat_trans, parallel_pair_category, trivial_category)
from partset.fixtures import i0, i1, j
from partset.presheaves import (diagram_has_llp, enumerate_diagrams, parallel_pair, to_terminal)

SITE = parallel_pair_category()
PAIRS = enumerate_diagrams(SITE, 2)
PRESHEAVES = enumerate_diagrams(SITE.op(), 1, presheaf_site=SITE)
PRESHEAVES2 = enumerate_diagrams(SITE.op(), 2, presheaf_site=SITE)
MAPS2 = [m for X in enumerate_objects_upto(2) for Y in enumerate_objects_upto(2)
         for m in enumerate_morphisms(X, Y)]


def on_trivial(X):
    return Presheaf(trivial_category(), {0: X})


def test_generating_cofibration_on_trivial_site():
    for i in (i0(), i1(), j()):
        g = generating_cofibration(trivial_category(), 0, i)
        comp = g[0]
        assert len(comp.source) == len(i.source) and len(comp.target) == len(i.target)
        assert classify(comp).flags() == classify(i).flags()


def test_generating_cofibration_on_pair_site():
    g = generating_cofibration(SITE, 1, j())
    # two arrows into object 1 from 0, one identity at 1
    assert len(g.target[0]) == 2 * 2 and len(g.target[1]) == 2
    assert classify_pointwise(g).pointwise_weq
    assert classify_pointwise(g).pointwise_cofibration


def test_presheaf_hom_counts_natural_transformations():
    for X in PAIRS[::7]:
        for Y in PAIRS[::11]:
            brute = 0
            for a, b in itertools.product(enumerate_morphisms(X[0], Y[0]),
                                          enumerate_morphisms(X[1], Y[1])):
                if all(compose(b, X.arrows[n]) == compose(Y.arrows[n], a) for n in ("f", "g")):
                    brute += 1
            assert len(presheaf_hom(X, Y)) == brute


def test_presheaf_hom_on_trivial_site_is_hom_object():
    for X in enumerate_objects_upto(2):
        for Y in enumerate_objects_upto(2):
            H = presheaf_hom(on_trivial(X), on_trivial(Y))
            assert sorted(len(b) for b in H.blocks) == sorted(len(b) for b in hom_object(X, Y).blocks)


def test_power_objects():
    for D in PAIRS[::5]:
        assert all(len(power_object(D, point())[c]) == len(D[c]) for c in SITE.objects)
        assert all(len(power_object(D, empty())[c]) == 1 for c in SITE.objects)
        DI = power_object(D, interval())
        assert all(len(DI[c]) == len(path_object(D[c])) for c in SITE.objects)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(PRESHEAVES), st.sampled_from(PRESHEAVES),
       st.sampled_from(enumerate_objects_upto(2)))
def test_presheaf_exponential_law(X, Y, K):
    fwd, bwd = presheaf_exponential_law(X, Y, K)
    assert compose(bwd, fwd) == identity(fwd.source)
    assert compose(fwd, bwd) == identity(fwd.target)


def test_presheaf_sm7_on_trivial_site_matches_sets():
    for i in (i0(), i1(), j()):
        for p in MAPS2:
            if not classify(p).fibration:
                continue
            jj = generating_cofibration(trivial_category(), 0, i)
            pp = NatTrans(on_trivial(p.source), on_trivial(p.target), {0: p})
            res = presheaf_sm7_map(jj, pp)
            plain = sm7_map(i, p)
            assert res.fibration and plain.fibration
            assert res.acyclic == plain.acyclic


def test_presheaf_sm7_generated_j_on_pair_site():
    gens = [generating_cofibration(SITE, c, j()) for c in SITE.objects]
    for D in PRESHEAVES2[::9]:
        p = to_terminal(D)
        if not classify_pointwise(p).pointwise_fibration:
            continue
        for g in gens:
            res = presheaf_sm7_map(g, p)
            assert res.fibration and res.acyclic


def test_fibrancy_examples():
    P, T = discrete(1), codiscrete(2)
    same = parallel_pair(Morphism(P, T, [0]), Morphism(P, T, [0]))
    diff = parallel_pair(Morphism(P, T, [0]), Morphism(P, T, [1]))
    assert d_diagram_fibrancy(same)
    assert not d_diagram_fibrancy(diff)
    assert not enumerate_nat_trans(same, diff)
    term = classify_pointwise(to_terminal(diff))
    assert term.pointwise_fibration and term.pointwise_weq
    with pytest.raises(ShapeError):
        d_diagram_fibrancy(on_trivial(P))


def test_fibrancy_implies_acyclic_equalizer_comparison():
    for D in PAIRS:
        if d_diagram_fibrancy(D):
            assert equalizer_comparison(D.arrows["f"], D.arrows["g"]).inclusion_acyclic


def test_presheaf_homotopy_equalizer_pointwise():
    D = PAIRS[-1]
    phi = NatTrans(D, D, {0: identity(D[0]), 1: identity(D[1])})
    H, incl = presheaf_homotopy_equalizer(phi, phi)
    assert H == D and classify_pointwise(incl).pointwise_weq


def test_pointwise_report_render():
    g = generating_cofibration(trivial_category(), 0, j())
    assert classify_pointwise(g).render().splitlines() == [
        "pointwise_weak_equivalence: true", "pointwise_fibration: false", "pointwise_injective: true"]


def test_generated_cofibrations_lift_against_acyclic_fibrations():
    g = generating_cofibration(SITE, 0, i1())
    for D in PRESHEAVES2[::13]:
        p = to_terminal(D)
        r = classify_pointwise(p)
        if r.pointwise_fibration and r.pointwise_weq:
            assert diagram_has_llp(g, p)
