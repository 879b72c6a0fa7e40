"""Finite limits and colimits of partitioned sets.

Limits are set-limits with the coarsest partition making every leg a
morphism; colimits are set-colimits with the finest such partition.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from .categories import Diagram, NatTrans
from .errors import ShapeError
from .morphisms import Morphism, compose
from .objects import PartitionedSet
from .tokens import Tag, order_key
from .unionfind import UnionFind


@dataclass(frozen=True)
class Cone:
    apex: PartitionedSet
    legs: Dict[Hashable, Morphism]


@dataclass(frozen=True)
class Cocone:
    apex: PartitionedSet
    legs: Dict[Hashable, Morphism]


def product(Xs: Sequence[PartitionedSet]) -> Tuple[PartitionedSet, List[Morphism]]:
    """Cartesian product of tuples; (x_i) ~ (x'_i) iff x_i ~ x'_i for every i."""
    Xs = list(Xs)
    tuples: List[tuple] = [()]
    labels: List[tuple] = [()]
    for X in Xs:
        tuples = [t + (x,) for t in tuples for x in X.elements]
        labels = [lab + (X.block_index(x),) for lab in labels for x in X.elements]
    P = PartitionedSet.from_labels(dict(zip(tuples, labels)))
    projections = [Morphism.trusted(P, X, (t[i] for t in P.elements)) for i, X in enumerate(Xs)]
    return P, projections


def product_map(maps: Sequence[Morphism]) -> Morphism:
    """The product of morphisms, acting componentwise on tuples."""
    P, _ = product([m.source for m in maps])
    Q, _ = product([m.target for m in maps])
    return Morphism.trusted(P, Q, (tuple(m(x) for m, x in zip(maps, t)) for t in P.elements))


def pairing(legs: Sequence[Morphism], P: PartitionedSet) -> Morphism:
    """The map into a product induced by maps out of a common source."""
    if not legs:
        raise ShapeError("pairing needs at least one leg")
    W = legs[0].source
    return Morphism(W, P, [tuple(m(w) for m in legs) for w in W.elements])


def coproduct(Xs: Sequence[PartitionedSet]) -> Tuple[PartitionedSet, List[Morphism]]:
    """Tagged disjoint union; element x of the i-th summand becomes ``in(i,x)``."""
    Xs = list(Xs)
    S = PartitionedSet([Tag("in", i, x) for x in b] for i, X in enumerate(Xs) for b in X.blocks)
    injections = [Morphism.trusted(X, S, (Tag("in", i, x) for x in X.elements)) for i, X in enumerate(Xs)]
    return S, injections


def copairing(legs: Sequence[Morphism], S: PartitionedSet) -> Morphism:
    """The map out of a coproduct induced by maps into a common target."""
    Y = legs[0].target
    return Morphism(S, Y, [legs[t.args[0]](t.args[1]) for t in S.elements])


def _check_parallel(f: Morphism, g: Morphism):
    if f.source != g.source or f.target != g.target:
        raise ShapeError("maps are not parallel")


def equalizer(f: Morphism, g: Morphism) -> Tuple[PartitionedSet, Morphism]:
    """{a : f(a) = g(a)} with the partition induced from the source."""
    _check_parallel(f, g)
    A = f.source
    E = A.restrict(a for a in A.elements if f(a) == g(a))
    return E, Morphism.trusted(E, A, E.elements)


def glue(X: PartitionedSet, pairs: Iterable[Tuple[Hashable, Hashable]]
         ) -> Tuple[PartitionedSet, Morphism]:
    """Quotient of X by the equivalence generated by ``pairs``.

    Each glued class is named by its least element. The quotient carries the
    finest partition making the projection a morphism.
    """
    uf = UnionFind(X.elements)
    for a, b in pairs:
        uf.union(a, b)
    canon = {}
    for group in uf.groups():
        name = min(group, key=order_key)
        for e in group:
            canon[e] = name
    names = sorted(set(canon.values()), key=order_key)
    blocks = UnionFind(names)
    for b in X.blocks:
        blocks.union_all(canon[e] for e in b)
    Q = PartitionedSet(blocks.groups())
    return Q, Morphism.trusted(X, Q, (canon[e] for e in X.elements))


def coequalizer(f: Morphism, g: Morphism) -> Tuple[PartitionedSet, Morphism]:
    _check_parallel(f, g)
    return glue(f.target, ((f(a), g(a)) for a in f.source.elements))


def pushout(f: Morphism, h: Morphism) -> Tuple[PartitionedSet, Morphism, Morphism]:
    """Pushout of ``C <-f- A -h-> B``; returns (D, g: B -> D, k: C -> D).

    D is a quotient of the coproduct of B (summand 0) and C (summand 1).
    """
    if f.source != h.source:
        raise ShapeError("pushout legs must share a source")
    B, C = h.target, f.target
    S, (inB, inC) = coproduct([B, C])
    D, proj = glue(S, ((inB(h(a)), inC(f(a))) for a in f.source.elements))
    return D, compose(proj, inB), compose(proj, inC)


def pullback(g: Morphism, k: Morphism) -> Tuple[PartitionedSet, Morphism, Morphism]:
    """Pullback of ``B -g-> D <-k- C``; returns (A, h: A -> B, f: A -> C).

    A = {(b, c) : g(b) = k(c)}, with (b, c) ~ (b', c') iff b ~ b' and c ~ c'.
    """
    if g.target != k.target:
        raise ShapeError("pullback legs must share a target")
    B, C = g.source, k.source
    P, (pB, pC) = product([B, C])
    A = P.restrict(t for t in P.elements if g(t[0]) == k(t[1]))
    return (A, Morphism.trusted(A, B, (t[0] for t in A.elements)),
            Morphism.trusted(A, C, (t[1] for t in A.elements)))


def limit(F: Diagram) -> Cone:
    """Equalizer of the two canonical maps from the product over objects to
    the product over non-identity arrows. Elements are tuples in object order."""
    cat = F.category
    objs = list(cat.objects)
    index = {c: i for i, c in enumerate(objs)}
    P, _ = product([F[c] for c in objs])
    arrows = list(cat.arrows)
    R, _ = product([F[cat.arrows[n][1]] for n in arrows])
    s = Morphism.trusted(P, R, (tuple(F.arrows[n](t[index[cat.arrows[n][0]]]) for n in arrows)
                                for t in P.elements))
    t_ = Morphism.trusted(P, R, (tuple(t[index[cat.arrows[n][1]]] for n in arrows) for t in P.elements))
    L, incl = equalizer(s, t_)
    legs = {c: Morphism.trusted(L, F[c], (t[index[c]] for t in L.elements)) for c in objs}
    return Cone(L, legs)


def colimit(F: Diagram) -> Cocone:
    """Coequalizer of the two canonical maps from the coproduct over
    non-identity arrows to the coproduct over objects. The summand of object
    c is tagged by its position in the object order."""
    cat = F.category
    objs = list(cat.objects)
    index = {c: i for i, c in enumerate(objs)}
    S, injections = coproduct([F[c] for c in objs])
    arrows = list(cat.arrows)
    T, _ = coproduct([F[cat.arrows[n][0]] for n in arrows])
    # in(i, x) for arrow i: a -> b goes to in_a(x) and to in_b(F(arrow)(x))
    s_ = Morphism.trusted(T, S, (injections[index[cat.arrows[arrows[t.args[0]]][0]]](t.args[1])
                                 for t in T.elements))
    t_ = Morphism.trusted(T, S, (injections[index[cat.arrows[arrows[t.args[0]]][1]]](
        F.arrows[arrows[t.args[0]]](t.args[1])) for t in T.elements))
    Q, proj = coequalizer(s_, t_)
    legs = {c: compose(proj, injections[index[c]]) for c in objs}
    return Cocone(Q, legs)


def limit_map(eta: NatTrans) -> Morphism:
    """Map of limits induced by a map of diagrams."""
    src, tgt = limit(eta.source), limit(eta.target)
    objs = list(eta.source.category.objects)
    return Morphism.trusted(src.apex, tgt.apex,
                            (tuple(eta[c](x) for c, x in zip(objs, t)) for t in src.apex.elements))


def colimit_map(eta: NatTrans) -> Morphism:
    """Map of colimits induced by a map of diagrams."""
    src, tgt = colimit(eta.source), colimit(eta.target)
    mapping = {}
    for c, leg in src.legs.items():
        for x in leg.source.elements:
            mapping[leg(x)] = tgt.legs[c](eta[c](x))
    return Morphism(src.apex, tgt.apex, mapping)


def cone_factorization(cone: Cone, competitor: Cone) -> Morphism:
    """The unique map from a competing cone's apex into the limit apex."""
    objs = list(cone.legs)
    W = competitor.apex
    return Morphism(W, cone.apex, [tuple(competitor.legs[c](w) for c in objs) for w in W.elements])


def cocone_factorization(cocone: Cocone, competitor: Cocone) -> Morphism:
    """The unique map from the colimit apex into a competing cocone's apex."""
    mapping = {}
    for c, leg in cocone.legs.items():
        for x in leg.source.elements:
            mapping[leg(x)] = competitor.legs[c](x)
    return Morphism(cocone.apex, competitor.apex, mapping)


def pullback_diagram(g: Morphism, k: Morphism) -> Diagram:
    from .categories import cospan_category
    return Diagram(cospan_category(), {"a": g.source, "b": k.source, "c": g.target}, {"f": g, "g": k})


def pushout_diagram(f: Morphism, h: Morphism) -> Diagram:
    from .categories import span_category
    return Diagram(span_category(), {"a": f.source, "b": h.target, "c": f.target}, {"h": h, "f": f})
