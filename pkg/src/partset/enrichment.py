"""Self-enrichment: Hom objects of partitioned sets and the maps built from them."""

from dataclasses import dataclass
from typing import Optional, Tuple

from .config import bounds, ensure_within
from .errors import PostconditionError, PreconditionError
from .limits import product, pullback
from .morphisms import (ClassificationReport, Morphism, classify, compose, enumerate_morphisms,
                        respects_partition)
from .objects import PartitionedSet


def hom_object(X: PartitionedSet, Y: PartitionedSet, limit: Optional[int] = None) -> PartitionedSet:
    """Morphisms X -> Y, with f ~ g iff f(x) ~ g(x) for every x."""
    if limit is None:
        limit = bounds().max_hom
    ensure_within(len(Y) ** len(X), limit, f"Hom({X.text()}, {Y.text()})")
    labels = {}
    for f in enumerate_morphisms(X, Y, limit):
        labels[f] = tuple(Y.block_index(y) for y in f.table)
    return PartitionedSet.from_labels(labels)


def _checked(source: PartitionedSet, target: PartitionedSet, table) -> Morphism:
    table = tuple(table)
    if not respects_partition(source, target, table):
        raise PostconditionError("constructed map does not respect partitions")
    return Morphism.trusted(source, target, table)


def hom_map(u: Morphism, v: Morphism, limit: Optional[int] = None) -> Morphism:
    """Hom(X, Y) -> Hom(X', Y'), f -> v . f . u, for u: X' -> X and v: Y -> Y'."""
    H = hom_object(u.target, v.source, limit)
    H2 = hom_object(u.source, v.target, limit)
    return _checked(H, H2, (compose(v, compose(f, u)) for f in H.elements))


def precompose_map(j: Morphism, X: PartitionedSet, limit: Optional[int] = None) -> Morphism:
    """j^*: Hom(B, X) -> Hom(A, X) for j: A -> B."""
    H = hom_object(j.target, X, limit)
    H2 = hom_object(j.source, X, limit)
    return _checked(H, H2, (compose(f, j) for f in H.elements))


def postcompose_map(p: Morphism, A: PartitionedSet, limit: Optional[int] = None) -> Morphism:
    """p_*: Hom(A, X) -> Hom(A, Y) for p: X -> Y."""
    H = hom_object(A, p.source, limit)
    H2 = hom_object(A, p.target, limit)
    return _checked(H, H2, (compose(p, f) for f in H.elements))


def evaluation_morphism(X: PartitionedSet, Y: PartitionedSet, limit: Optional[int] = None) -> Morphism:
    """X x Hom(X, Y) -> Y, (x, f) -> f(x)."""
    P, _ = product([X, hom_object(X, Y, limit)])
    return _checked(P, Y, (f(x) for x, f in P.elements))


def composition_morphism(X: PartitionedSet, Y: PartitionedSet, Z: PartitionedSet,
                         limit: Optional[int] = None) -> Morphism:
    """Hom(X, Y) x Hom(Y, Z) -> Hom(X, Z), (f, g) -> g . f."""
    P, _ = product([hom_object(X, Y, limit), hom_object(Y, Z, limit)])
    return _checked(P, hom_object(X, Z, limit), (compose(g, f) for f, g in P.elements))


def exponential_law(A: PartitionedSet, X: PartitionedSet, Y: PartitionedSet,
                    limit: Optional[int] = None) -> Tuple[Morphism, Morphism]:
    """The isomorphism Hom(A, Hom(X, Y)) -> Hom(X x A, Y), g -> ((x, a) -> g(a)(x)),
    together with its inverse h -> (a -> (x -> h(x, a)))."""
    HXY = hom_object(X, Y, limit)
    left = hom_object(A, HXY, limit)
    XA, _ = product([X, A])
    right = hom_object(XA, Y, limit)
    forward = _checked(left, right, (
        Morphism.trusted(XA, Y, (g(a)(x) for x, a in XA.elements)) for g in left.elements))
    backward = _checked(right, left, (
        Morphism.trusted(A, HXY, (Morphism.trusted(X, Y, (h((x, a)) for x in X.elements))
                                  for a in A.elements))
        for h in right.elements))
    return forward, backward


@dataclass(frozen=True)
class SM7Result:
    corner: Morphism
    report: ClassificationReport
    expect_acyclic: bool

    @property
    def fibration(self) -> bool:
        return self.report.fibration

    @property
    def acyclic(self) -> bool:
        return self.report.weak_equivalence

    @property
    def holds(self) -> bool:
        return self.fibration and (self.acyclic or not self.expect_acyclic)


def corner_map(j: Morphism, p: Morphism, limit: Optional[int] = None) -> Morphism:
    """(j^*, p_*): Hom(B, X) -> Hom(A, X) x_{Hom(A, Y)} Hom(B, Y)."""
    post = postcompose_map(p, j.source, limit)   # Hom(A, X) -> Hom(A, Y)
    pre = precompose_map(j, p.target, limit)     # Hom(B, Y) -> Hom(A, Y)
    P, _, _ = pullback(post, pre)
    HBX = hom_object(j.target, p.source, limit)
    return _checked(HBX, P, ((compose(phi, j), compose(p, phi)) for phi in HBX.elements))


def sm7_map(j: Morphism, p: Morphism, verify: bool = True, limit: Optional[int] = None) -> SM7Result:
    """Corner map of a cofibration j and a fibration p, with its classification.

    With ``verify`` set, a corner map that is not a fibration (or not acyclic
    when j or p is) raises PostconditionError.
    """
    cj, cp = classify(j), classify(p)
    if not cj.cofibration:
        raise PreconditionError("j is not a cofibration")
    if not cp.fibration:
        raise PreconditionError("p is not a fibration")
    corner = corner_map(j, p, limit)
    result = SM7Result(corner, classify(corner), cj.weak_equivalence or cp.weak_equivalence)
    if verify and not result.holds:
        raise PostconditionError(f"corner map fails the enrichment axiom: {result.report.flags()}")
    return result
