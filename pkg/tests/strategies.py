"""Hypothesis strategies for small partitioned sets and maps."""

from hypothesis import strategies as st

from partset import Morphism, PartitionedSet, discrete, empty

tokens = st.one_of(
    st.integers(-5, 9),
    st.text("abcxyz", min_size=1, max_size=3),
    st.tuples(st.integers(0, 2), st.sampled_from("ab")),
)


@st.composite
def objects(draw, max_size=4, min_size=0, elements=None):
    n = draw(st.integers(min_size, max_size))
    if elements is None:
        elems = list(range(n))
    else:
        elems = draw(st.lists(elements, min_size=n, max_size=n, unique=True))
    labels = draw(st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n))
    return PartitionedSet.from_labels(dict(zip(elems, labels)))


@st.composite
def morphisms(draw, max_size=3, source=None, target=None):
    X = draw(objects(max_size)) if source is None else source
    Y = draw(objects(max_size)) if target is None else target
    if len(X) and not len(Y):
        if target is None:
            Y = discrete(1)
        else:
            X = empty()
    table = {}
    for block in X.blocks:
        image_block = draw(st.sampled_from(Y.blocks))
        for e in block:
            table[e] = draw(st.sampled_from(image_block))
    return Morphism(X, Y, table)


@st.composite
def composable(draw, max_size=3):
    f = draw(morphisms(max_size))
    g = draw(morphisms(max_size, source=f.target))
    h = draw(morphisms(max_size, source=g.target))
    return f, g, h


@st.composite
def parallel(draw, max_size=3):
    f = draw(morphisms(max_size))
    g = draw(morphisms(max_size, source=f.source, target=f.target))
    return f, g


@st.composite
def cospans(draw, max_size=3):
    f = draw(morphisms(max_size))
    g = draw(morphisms(max_size, target=f.target))
    return f, g
