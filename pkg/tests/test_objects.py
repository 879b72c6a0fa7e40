import itertools

import pytest
from hypothesis import given, strategies as st

from partset import (BoundExceeded, MalformedError, PartitionedSet, UnknownElementError, codiscrete,
                     discrete, empty, enumerate_objects, enumerate_objects_upto, interval, point,
                     quotient)
from partset.objects import restricted_growth_strings
from partset.tokens import order_key

from strategies import objects, tokens


def partitions_by_brute_force(n):
    """Distinct partitions among all labelings of n elements by n labels."""
    seen = set()
    for labels in itertools.product(range(n), repeat=n):
        groups = {}
        for e, lab in enumerate(labels):
            groups.setdefault(lab, set()).add(e)
        seen.add(frozenset(frozenset(g) for g in groups.values()))
    return seen


BELL = [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(6))
def test_counts_match_brute_force(n):
    objs = enumerate_objects(n)
    assert len(objs) == BELL[n] == len(partitions_by_brute_force(n))
    as_sets = {frozenset(frozenset(b) for b in X.blocks) for X in objs}
    assert as_sets == partitions_by_brute_force(n)


def test_growth_strings_are_lexicographic():
    strings = list(restricted_growth_strings(4))
    assert strings == sorted(strings)
    assert strings[0] == (0, 0, 0, 0) and strings[-1] == (0, 1, 2, 3)


def test_upto_concatenates_sizes():
    assert len(enumerate_objects_upto(3)) == 1 + 1 + 2 + 5


def test_enumeration_cap():
    with pytest.raises(BoundExceeded):
        enumerate_objects(4, cap=3)
    with pytest.raises(MalformedError):
        enumerate_objects(-1)


def test_named_objects():
    assert interval().blocks == ((0, 1),)
    assert point().elements == ((),)
    assert len(empty()) == 0 and empty().blocks == ()
    assert discrete(3).is_discrete()
    assert not codiscrete(2).is_discrete()
    assert discrete(["a", "b"]).blocks == (("a",), ("b",))


@given(objects(5, elements=tokens))
def test_canonical_form(X):
    for b in X.blocks:
        assert list(b) == sorted(b, key=order_key)
    firsts = [b[0] for b in X.blocks]
    assert firsts == sorted(firsts, key=order_key)
    shuffled = PartitionedSet(reversed([list(reversed(b)) for b in X.blocks]))
    assert shuffled == X and hash(shuffled) == hash(X)


@given(objects(5), st.data())
def test_from_relation_matches_closure(X, data):
    elems = list(X.elements)
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(elems), st.sampled_from(elems)), max_size=6)
                      if elems else st.just([]))
    Y = PartitionedSet.from_relation(elems, pairs)
    # naive reflexive-symmetric-transitive closure
    rel = {(a, a) for a in elems} | set(pairs) | {(b, a) for a, b in pairs}
    changed = True
    while changed:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        changed = bool(extra)
        rel |= extra
    for a in elems:
        for b in elems:
            assert Y.are_equivalent(a, b) == ((a, b) in rel)


@given(objects(5))
def test_quotient_has_one_representative_per_block(X):
    Q = quotient(X)
    assert len(Q.representatives) == len(X.blocks)
    assert all(X.representative(r) == r for r in Q.representatives)


@given(objects(5), st.data())
def test_restrict_induces_partition(X, data):
    subset = data.draw(st.sets(st.sampled_from(X.elements)) if len(X) else st.just(set()))
    R = X.restrict(subset)
    assert set(R.elements) == subset
    for a in subset:
        for b in subset:
            assert R.are_equivalent(a, b) == X.are_equivalent(a, b)


def test_malformed_objects():
    with pytest.raises(MalformedError):
        PartitionedSet([[1, 2], [2]])
    with pytest.raises(MalformedError):
        PartitionedSet([[]])
    with pytest.raises(UnknownElementError):
        discrete(2).block_index(5)
    with pytest.raises(UnknownElementError):
        PartitionedSet.from_relation([0, 1], [(0, 7)])
