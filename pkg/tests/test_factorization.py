import pytest
from hypothesis import given

from partset import (Morphism, PartitionedSet, ShapeError, classify, codiscrete, compose,
                     cylinder_factorization, discrete, enumerate_morphisms, identity, interval,
                     path_object, pathspace_factorization)
from partset.factorization import constant_path, cylinder_map, path_end, path_start, pathspace_map

from strategies import morphisms, objects


@given(morphisms(4))
def test_cylinder_factorization(f):
    fac = cylinder_factorization(f)
    assert fac.composite() == f
    assert classify(fac.first).cofibration
    assert classify(fac.second).acyclic_fibration


@given(morphisms(4))
def test_pathspace_factorization(f):
    fac = pathspace_factorization(f)
    assert fac.composite() == f
    assert classify(fac.first).acyclic_cofibration
    assert classify(fac.second).fibration


def test_cylinder_sizes():
    # the pushout identifies x with (x, 0), so only the far end of X x I survives
    assert len(cylinder_factorization(identity(PartitionedSet([["a"]]))).middle) == 2
    collapse = Morphism(PartitionedSet([["a"], ["b"]]), PartitionedSet([["p"]]), ["p", "p"])
    M = cylinder_factorization(collapse).middle
    assert len(M) == 3 and len(M.blocks) == 1


@given(objects(4))
def test_path_object_is_hom_from_interval(Y):
    paths = {m.table for m in enumerate_morphisms(interval(), Y)}
    YI = path_object(Y)
    assert set(YI.elements) == paths
    for a in YI.elements:
        for b in YI.elements:
            assert YI.are_equivalent(a, b) == Y.are_equivalent(a[0], b[0])


@given(objects(4))
def test_path_endpoints(Y):
    c = constant_path(Y)
    assert compose(path_start(Y), c) == identity(Y) == compose(path_end(Y), c)
    assert classify(path_start(Y)).acyclic_fibration


@given(morphisms(3))
def test_induced_maps_preserve_identities(f):
    idx, idy = identity(f.source), identity(f.target)
    M = cylinder_factorization(f).middle
    assert cylinder_map(f, f, idx, idy) == identity(M)
    P = pathspace_factorization(f).middle
    assert pathspace_map(f, f, idx, idy) == identity(P)


def test_induced_maps_compose():
    f = Morphism(discrete(2), codiscrete(2), [0, 1])
    g = Morphism(discrete(1), discrete(1), [0])
    u = Morphism(discrete(2), discrete(1), [0, 0])
    v = Morphism(codiscrete(2), discrete(1), [0, 0])
    w = identity(discrete(1))
    both = cylinder_map(f, g, u, v)
    assert compose(cylinder_map(g, g, w, w), both) == both
    fac_f, fac_g = cylinder_factorization(f), cylinder_factorization(g)
    assert compose(both, fac_f.first) == compose(fac_g.first, u)
    assert compose(fac_g.second, both) == compose(v, fac_f.second)
    pf, pg = pathspace_factorization(f), pathspace_factorization(g)
    pm = pathspace_map(f, g, u, v)
    assert compose(pm, pf.first) == compose(pg.first, u)
    assert compose(pg.second, pm) == compose(v, pf.second)
    with pytest.raises(ShapeError):
        cylinder_map(f, g, v, u)
