"""Functorial factorizations: mapping cylinder and mapping path space."""

from dataclasses import dataclass
from typing import Dict, Hashable, Tuple

from .errors import ShapeError
from .limits import glue, pullback
from .morphisms import Morphism, compose
from .objects import PartitionedSet
from .tokens import Tag


@dataclass(frozen=True)
class Factorization:
    first: Morphism
    second: Morphism

    def __post_init__(self):
        if self.first.target != self.second.source:
            raise ShapeError("factors do not compose")

    @property
    def middle(self) -> PartitionedSet:
        return self.first.target

    def composite(self) -> Morphism:
        return compose(self.second, self.first)


def _cylinder(f: Morphism) -> Tuple[PartitionedSet, Dict[Hashable, Hashable]]:
    """Y glued to X x I along x -> (x, 0). Returns the glued object and the
    naming map from tagged disjoint-union tokens to canonical elements."""
    X, Y = f.source, f.target
    blocks = [[Tag("inY", y) for y in b] for b in Y.blocks]
    blocks += [[Tag("inXI", x, t) for x in b for t in (0, 1)] for b in X.blocks]
    U = PartitionedSet(blocks)
    M, proj = glue(U, ((Tag("inY", f(x)), Tag("inXI", x, 0)) for x in X.elements))
    return M, proj.mapping


def cylinder_factorization(f: Morphism) -> Factorization:
    """f = p . j with j: x -> (x, 1) a cofibration and p: M -> Y an acyclic fibration,
    where M is the mapping cylinder."""
    X, Y = f.source, f.target
    M, name = _cylinder(f)
    j = Morphism(X, M, [name[Tag("inXI", x, 1)] for x in X.elements])
    down = {}
    for token, m in name.items():
        down[m] = token.args[0] if token.name == "inY" else f(token.args[0])
    p = Morphism(M, Y, down)
    return Factorization(j, p)


def cylinder_map(f: Morphism, f2: Morphism, u: Morphism, v: Morphism) -> Morphism:
    """Map of mapping cylinders induced by a square ``f2 . u == v . f``."""
    _check_square(f, f2, u, v)
    M, name = _cylinder(f)
    M2, name2 = _cylinder(f2)
    mapping = {}
    for token, m in name.items():
        if token.name == "inY":
            mapping[m] = name2[Tag("inY", v(token.args[0]))]
        else:
            x, t = token.args
            mapping[m] = name2[Tag("inXI", u(x), t)]
    return Morphism(M, M2, mapping)


def path_object(Y: PartitionedSet) -> PartitionedSet:
    """Maps I -> Y, as pairs (y0, y1) with y0 ~ y1; paths are equivalent iff
    they lie in the same class."""
    return PartitionedSet([(a, b) for a in block for b in block] for block in Y.blocks)


def path_start(Y: PartitionedSet) -> Morphism:
    """The endpoint map Y^I -> Y, path -> path(0)."""
    YI = path_object(Y)
    return Morphism(YI, Y, [a for a, _ in YI.elements])


def path_end(Y: PartitionedSet) -> Morphism:
    YI = path_object(Y)
    return Morphism(YI, Y, [b for _, b in YI.elements])


def constant_path(Y: PartitionedSet) -> Morphism:
    return Morphism(Y, path_object(Y), [(y, y) for y in Y.elements])


def pathspace_factorization(f: Morphism) -> Factorization:
    """f = q . i with i: x -> (x, constant path at f(x)) an acyclic cofibration and
    q: (x, path) -> path(1) a fibration, through the pullback of f and path(0)."""
    X = f.source
    P, _, _ = pullback(f, path_start(f.target))
    i = Morphism(X, P, [(x, (f(x), f(x))) for x in X.elements])
    q = Morphism(P, f.target, [alpha[1] for _, alpha in P.elements])
    return Factorization(i, q)


def pathspace_map(f: Morphism, f2: Morphism, u: Morphism, v: Morphism) -> Morphism:
    """Map of mapping path spaces induced by a square ``f2 . u == v . f``."""
    _check_square(f, f2, u, v)
    P = pathspace_factorization(f).middle
    P2 = pathspace_factorization(f2).middle
    return Morphism(P, P2, [(u(x), (v(a), v(b))) for x, (a, b) in P.elements])


def _check_square(f, f2, u, v):
    if (u.source != f.source or u.target != f2.source or v.source != f.target
            or v.target != f2.target):
        raise ShapeError("maps do not form a square between f and f2")
    if compose(f2, u) != compose(v, f):
        raise ShapeError("square does not commute")
