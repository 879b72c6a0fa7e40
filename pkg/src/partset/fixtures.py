"""Named small maps used throughout: the generating maps and the counterexample diagrams."""

from .morphisms import Morphism
from .objects import PartitionedSet, codiscrete, discrete, empty


def i0() -> Morphism:
    """Empty set into a point."""
    return Morphism(empty(), discrete(1), [])


def i1() -> Morphism:
    """Two separate points glued into one class; mono and epi, not iso."""
    return Morphism(discrete(2), codiscrete(2), [0, 1])


def j() -> Morphism:
    """A point into a two-point class; the generating acyclic cofibration."""
    return Morphism(discrete(1), codiscrete(2), [0])


def equalizer_counterexample():
    """Top row of the map of equalizers: ``id, c : {0 | 1} => {0 1}`` with c constant at 0.

    Returns (identity-shaped map, constant map). The ordinary equalizer is {0};
    the homotopy equalizer is everything.
    """
    A = discrete(2)
    X = codiscrete(2)
    ident = Morphism(A, X, [0, 1])
    const = Morphism(A, X, [0, 0])
    return ident, const


def equalizer_counterexample_bottom():
    """Bottom row: ``{0 | 1} => {0}`` and the ladder maps (alpha = id, beta = collapse)."""
    A = discrete(2)
    X = codiscrete(2)
    P = discrete(1)
    f = Morphism(A, P, [0, 0])
    alpha = Morphism(A, A, [0, 1])
    beta = Morphism(X, P, [0, 0])
    return f, f, alpha, beta


def pullback_counterexample():
    """Two points mapping to different elements of one class: ``{0} -> {0 1} <- {0}``."""
    P = discrete(1)
    C = codiscrete(2)
    return Morphism(P, C, [0]), Morphism(P, C, [1])


def d_square():
    """The fixed map of parallel-pair diagrams whose lifting property tests fibrancy.

    Source pair ``1 => {1 2}`` with f(1)=1, g(1)=2; target pair
    ``{1 2} => {1 2 3}`` with h(1)=1, h(2)=3, k(1)=2, k(2)=3; components
    alpha(1)=1 and beta(1)=1, beta(2)=2. Every object is a single class.
    """
    one = PartitionedSet([[1]])
    two = PartitionedSet([[1, 2]])
    three = PartitionedSet([[1, 2, 3]])
    f = Morphism(one, two, {1: 1})
    g = Morphism(one, two, {1: 2})
    h = Morphism(two, three, {1: 1, 2: 3})
    k = Morphism(two, three, {1: 2, 2: 3})
    alpha = Morphism(one, two, {1: 1})
    beta = Morphism(two, three, {1: 1, 2: 2})
    return dict(f=f, g=g, h=h, k=k, alpha=alpha, beta=beta)
