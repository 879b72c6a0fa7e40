import itertools
from math import prod

import pytest
from hypothesis import given

from partset import (BoundExceeded, CompositionError, MalformedError, Morphism, PartitionedSet,
                     ShapeError, UnknownElementError, check_retract, classify, codiscrete, compose,
                     discrete, enumerate_morphisms, enumerate_objects_upto, identity,
                     induced_quotient_map)
from partset.fixtures import i0, i1, j
from partset.morphisms import respects_partition

from strategies import composable, morphisms, parallel

SMALL = enumerate_objects_upto(3)
TEST_OBJECTS = enumerate_objects_upto(2)


def expected_count(X, Y):
    return prod(sum(len(b) ** len(a) for b in Y.blocks) for a in X.blocks)


def test_hom_counts_match_formula():
    for X in SMALL:
        for Y in SMALL:
            homs = enumerate_morphisms(X, Y)
            assert len(homs) == expected_count(X, Y)
            assert [m.table for m in homs] == sorted(m.table for m in homs)


def is_mono_by_cancellation(f):
    for T in TEST_OBJECTS:
        homs = enumerate_morphisms(T, f.source)
        for g, h in itertools.product(homs, repeat=2):
            if g != h and compose(f, g) == compose(f, h):
                return False
    return True


def is_epi_by_cancellation(f):
    for T in TEST_OBJECTS:
        homs = enumerate_morphisms(f.target, T)
        for g, h in itertools.product(homs, repeat=2):
            if g != h and compose(g, f) == compose(h, f):
                return False
    return True


def has_inverse(f):
    return any(compose(g, f) == identity(f.source) and compose(f, g) == identity(f.target)
               for g in enumerate_morphisms(f.target, f.source))


def test_mono_epi_iso_against_cancellation():
    for X in enumerate_objects_upto(2):
        for Y in SMALL:
            for f in enumerate_morphisms(X, Y):
                r = classify(f)
                assert r.mono == is_mono_by_cancellation(f)
                assert r.epi == is_epi_by_cancellation(f)
                assert r.iso == has_inverse(f)


def test_generating_maps():
    r = classify(i0())
    assert (r.cofibration, r.fibration, r.weak_equivalence) == (True, True, False)
    assert r.effective_mono is True
    r = classify(i1())
    assert (r.cofibration, r.fibration, r.weak_equivalence) == (True, False, False)
    assert r.mono and r.epi and not r.iso and r.effective_mono is False
    r = classify(j())
    assert (r.cofibration, r.fibration, r.weak_equivalence) == (True, False, True)
    assert r.acyclic_cofibration and not r.epi


def test_render_lists_every_flag():
    lines = classify(j()).render().splitlines()
    assert lines[0] == "cofibration: true"
    assert lines[-1] == "effective_mono: true"
    collapse = Morphism(discrete(2), discrete(1), [0, 0])
    assert classify(collapse).render().endswith("effective_mono: n/a")


@given(composable())
def test_associativity_and_units(fgh):
    f, g, h = fgh
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert compose(identity(f.target), f) == f == compose(f, identity(f.source))


@given(composable())
def test_classes_closed_under_composition(fgh):
    f, g, _ = fgh
    cf, cg, cgf = classify(f), classify(g), classify(compose(g, f))
    if cf.cofibration and cg.cofibration:
        assert cgf.cofibration
    if cf.fibration and cg.fibration:
        assert cgf.fibration
    # two out of three
    weq = [cf.weak_equivalence, cg.weak_equivalence, cgf.weak_equivalence]
    assert sum(weq) != 2


@given(morphisms(4))
def test_quotient_map_is_well_defined(f):
    q = induced_quotient_map(f)
    for e in f.source.elements:
        assert q[f.source.representative(e)] == f.target.representative(f(e))


@given(parallel())
def test_retract_of_itself(fg):
    f, _ = fg
    idx, idy = identity(f.source), identity(f.target)
    assert check_retract(f, f, idx, idx, idy, idy)


def test_retract_shape_and_failure():
    f = j()
    ids, idt = identity(f.source), identity(f.target)
    with pytest.raises(ShapeError):
        check_retract(f, f, idt, ids, idt, idt)
    swap = Morphism(f.target, f.target, [1, 0])
    assert not check_retract(f, f, ids, ids, swap, idt)


def test_invalid_morphisms():
    X, Y = codiscrete(2), discrete(2)
    with pytest.raises(MalformedError, match="equivalent"):
        Morphism(X, Y, [0, 1])
    assert not respects_partition(X, Y, (0, 1))
    with pytest.raises(MalformedError, match="not total"):
        Morphism(Y, X, {0: 0})
    with pytest.raises(MalformedError, match="not in the target"):
        Morphism(Y, X, [0, 5])
    with pytest.raises(CompositionError):
        compose(j(), j())
    with pytest.raises(UnknownElementError):
        j()(7)
    with pytest.raises(BoundExceeded):
        enumerate_morphisms(discrete(4), discrete(4), limit=100)


def test_morphisms_are_immutable_and_hashable():
    f = j()
    with pytest.raises(AttributeError):
        f.table = ()
    assert len({f, j(), i1()}) == 2
    assert Morphism(PartitionedSet([["a"]]), discrete(1), lambda e: 0)("a") == 0
