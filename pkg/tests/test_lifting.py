import pytest
from hypothesis import given, settings, strategies as st

from partset import (LiftingProblem, Morphism, PreconditionError, ShapeError, classify, codiscrete,
                     compose, discrete, enumerate_morphisms, enumerate_objects_upto, has_llp,
                     has_rlp, identity, solve_lift_constructive, solve_lift_search)
from partset.fixtures import i0, i1, j
from partset.lifting import commuting_squares

SMALL = enumerate_objects_upto(2)
MAPS = [m for X in SMALL for Y in SMALL for m in enumerate_morphisms(X, Y)]
COFIBRATIONS = [m for m in MAPS if classify(m).cofibration]
FIBRATIONS = [m for m in MAPS if classify(m).fibration]


def brute_force_lift(prob):
    for s in enumerate_morphisms(prob.left.target, prob.right.source):
        if prob.is_lift(s):
            return s
    return None


def brute_force_squares(left, right):
    out = []
    for top in enumerate_morphisms(left.source, right.source):
        for bottom in enumerate_morphisms(left.target, right.target):
            if compose(right, top) == compose(bottom, left):
                out.append((top, bottom))
    return out


def test_search_finds_least_lift():
    for left in COFIBRATIONS[::3]:
        for right in MAPS[::5]:
            squares = list(commuting_squares(left, right))
            assert [(s.top, s.bottom) for s in squares] == brute_force_squares(left, right)
            for prob in squares:
                assert solve_lift_search(prob) == brute_force_lift(prob)


def test_constructive_lift_solves_model_squares():
    solved = 0
    for left in COFIBRATIONS:
        for right in FIBRATIONS:
            if not (classify(left).weak_equivalence or classify(right).weak_equivalence):
                continue
            for prob in commuting_squares(left, right):
                s = solve_lift_constructive(prob)
                assert prob.is_lift(s)
                solved += 1
    assert solved > 100


def test_generating_maps_detect_fibrations():
    for p in MAPS:
        r = classify(p)
        assert has_rlp(p, j()) == r.fibration
        assert (has_rlp(p, i0()) and has_rlp(p, i1())) == r.acyclic_fibration


def test_i1_does_not_lift_against_itself():
    assert not has_llp(i1(), i1())
    assert has_llp(j(), identity(codiscrete(2)))


def test_constructive_preconditions():
    collapse = Morphism(discrete(2), discrete(1), [0, 0])
    square = LiftingProblem(i0(), collapse, Morphism(i0().source, discrete(2), []),
                            identity(discrete(1)))
    with pytest.raises(PreconditionError, match="neither"):
        solve_lift_constructive(square)
    square = LiftingProblem(collapse, identity(discrete(1)), collapse, identity(discrete(1)))
    with pytest.raises(PreconditionError, match="cofibration"):
        solve_lift_constructive(square)
    square = LiftingProblem(identity(discrete(1)), j(), identity(discrete(1)), j())
    with pytest.raises(PreconditionError, match="fibration"):
        solve_lift_constructive(square)


def test_square_shape_checks():
    with pytest.raises(ShapeError, match="fit"):
        LiftingProblem(j(), i1(), j(), j())
    swap = Morphism(codiscrete(2), codiscrete(2), [1, 0])
    with pytest.raises(ShapeError, match="commute"):
        LiftingProblem(j(), identity(codiscrete(2)), j(), swap)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(COFIBRATIONS), st.sampled_from(FIBRATIONS), st.data())
def test_lift_of_random_square(left, right, data):
    squares = list(commuting_squares(left, right))
    if not squares:
        return
    prob = data.draw(st.sampled_from(squares))
    found = solve_lift_search(prob)
    if classify(left).weak_equivalence or classify(right).weak_equivalence:
        assert found is not None
        assert prob.is_lift(solve_lift_constructive(prob))
    if found is not None:
        assert prob.is_lift(found)
