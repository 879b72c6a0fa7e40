"""Homotopy equalizers and pullbacks, acyclicity of colimit maps, homotopy
inverses, effective monomorphisms, and the quotient/discrete adjunction."""

import itertools
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .config import bounds, ensure_within
from .errors import PreconditionError, ShapeError
from .factorization import pathspace_factorization
from .limits import coequalizer, equalizer, pullback, pushout, product
from .morphisms import (Morphism, compose, induced_quotient_map, is_weak_equivalence,
                        reflects_equivalence)
from .objects import PartitionedSet, discrete
from .tokens import sort_tokens


def _check_parallel(f: Morphism, g: Morphism):
    if f.source != g.source or f.target != g.target:
        raise ShapeError("maps are not parallel")


def homotopy_equalizer(f: Morphism, g: Morphism) -> Tuple[PartitionedSet, Morphism]:
    """{a : f(a) ~ g(a)} with the partition induced from the source."""
    _check_parallel(f, g)
    A, X = f.source, f.target
    H = A.restrict(a for a in A.elements if X.are_equivalent(f(a), g(a)))
    return H, Morphism.trusted(H, A, H.elements)


@dataclass(frozen=True)
class ComparisonResult:
    equalizer: PartitionedSet
    homotopy_equalizer: PartitionedSet
    inclusion: Morphism
    inclusion_acyclic: bool


def equalizer_comparison(f: Morphism, g: Morphism) -> ComparisonResult:
    """Inclusion of the equalizer into the homotopy equalizer. It is acyclic iff
    every a with f(a) ~ g(a) is equivalent to some a' with f(a') = g(a')."""
    E, _ = equalizer(f, g)
    H, _ = homotopy_equalizer(f, g)
    incl = Morphism(E, H, E.elements)
    A = f.source
    ok = all(any(A.are_equivalent(a, e) for e in E.elements) for a in H.elements)
    return ComparisonResult(E, H, incl, ok)


@dataclass(frozen=True)
class PairMap:
    """A map between parallel pairs ``f, g: A => X`` and ``h, k: B => Y``:
    alpha: A -> B and beta: X -> Y with h.alpha = beta.f and k.alpha = beta.g."""

    f: Morphism
    g: Morphism
    h: Morphism
    k: Morphism
    alpha: Morphism
    beta: Morphism

    def __post_init__(self):
        _check_parallel(self.f, self.g)
        _check_parallel(self.h, self.k)
        if (self.alpha.source != self.f.source or self.alpha.target != self.h.source
                or self.beta.source != self.f.target or self.beta.target != self.h.target):
            raise ShapeError("ladder maps do not fit the two pairs")
        if (compose(self.h, self.alpha) != compose(self.beta, self.f)
                or compose(self.k, self.alpha) != compose(self.beta, self.g)):
            raise ShapeError("ladder does not commute")

    def then(self, other: "PairMap") -> "PairMap":
        if (other.f, other.g) != (self.h, self.k):
            raise ShapeError("ladders are not composable")
        return PairMap(self.f, self.g, other.h, other.k,
                       compose(other.alpha, self.alpha), compose(other.beta, self.beta))


def coequalizer_map(ladder: PairMap) -> Morphism:
    """Induced map of coequalizers."""
    M, p = coequalizer(ladder.f, ladder.g)
    N, q = coequalizer(ladder.h, ladder.k)
    mapping = {}
    for x in ladder.f.target.elements:
        mapping[p(x)] = q(ladder.beta(x))
    return Morphism(M, N, mapping)


def homotopy_equalizer_map(ladder: PairMap) -> Morphism:
    """Restriction of alpha to the homotopy equalizers."""
    H, _ = homotopy_equalizer(ladder.f, ladder.g)
    K, _ = homotopy_equalizer(ladder.h, ladder.k)
    return Morphism(H, K, [ladder.alpha(a) for a in H.elements])


@dataclass(frozen=True)
class ColimitVerdict:
    gamma: Morphism
    gamma_acyclic: bool
    alpha_acyclic: bool
    beta_acyclic: bool
    alpha_quotient_injective: bool

    @property
    def holds(self) -> bool:
        """Acyclic alpha and beta force an acyclic gamma."""
        return self.gamma_acyclic or not (self.alpha_acyclic and self.beta_acyclic)


def check_colimit_acyclicity(ladder: PairMap) -> ColimitVerdict:
    gamma = coequalizer_map(ladder)
    return ColimitVerdict(
        gamma=gamma,
        gamma_acyclic=is_weak_equivalence(gamma),
        alpha_acyclic=is_weak_equivalence(ladder.alpha),
        beta_acyclic=is_weak_equivalence(ladder.beta),
        alpha_quotient_injective=reflects_equivalence(ladder.alpha),
    )


def adjoin_twin(ladder: PairMap, s, t) -> PairMap:
    """Adjoin a new element t to A, alone in its class, that f, g and alpha send
    where they send s. The quotient map of alpha stops being injective while the
    ladder still commutes."""
    A = ladder.f.source
    if s not in A:
        raise PreconditionError("s must be an element of A")
    if t in A:
        raise PreconditionError("t must be a new element")
    A2 = PartitionedSet(list(A.blocks) + [[t]])

    def extend(m: Morphism) -> Morphism:
        mapping = dict(m.mapping)
        mapping[t] = m(s)
        return Morphism(A2, m.target, mapping)

    return PairMap(extend(ladder.f), extend(ladder.g), ladder.h, ladder.k,
                   extend(ladder.alpha), ladder.beta)


def homotopy_pullback(f: Morphism, g: Morphism) -> Tuple[PartitionedSet, Morphism, Morphism]:
    """{(a, b) : f(a) ~ g(b)} with the product partition, and its two projections."""
    if f.target != g.target:
        raise ShapeError("maps must share a target")
    C = f.target
    P, _ = product([f.source, g.source])
    H = P.restrict(t for t in P.elements if C.are_equivalent(f(t[0]), g(t[1])))
    return (H, Morphism.trusted(H, f.source, (t[0] for t in H.elements)),
            Morphism.trusted(H, g.source, (t[1] for t in H.elements)))


def homotopy_pullback_via_pathspace(f: Morphism, g: Morphism) -> PartitionedSet:
    """Pullback of g against the fibration of f's mapping path space factorization.
    Elements are (b, (a, (c0, c1)))."""
    q = pathspace_factorization(f).second
    P, _, _ = pullback(g, q)
    return P


def homotopy_pullback_comparison(f: Morphism, g: Morphism) -> Morphism:
    """(a, b) -> (b, (a, (f(a), g(b)))), an isomorphism between the two constructions."""
    H, _, _ = homotopy_pullback(f, g)
    P = homotopy_pullback_via_pathspace(f, g)
    return Morphism(H, P, [(b, (a, (f(a), g(b)))) for a, b in H.elements])


def homotopy_inverse(f: Morphism) -> Morphism:
    """A map Y -> X for acyclic f: X -> Y, sending each class of Y to the least
    element of the unique class of X that f maps into it."""
    if not is_weak_equivalence(f):
        raise PreconditionError("map is not a weak equivalence")
    X, Y = f.source, f.target
    back = {}
    for block in X.blocks:
        back.setdefault(Y.block_index(f(block[0])), block[0])
    return Morphism(Y, X, [back[Y.block_index(y)] for y in Y.elements])


def is_effective_mono(m: Morphism) -> bool:
    if not m.is_injective():
        raise PreconditionError("map is not a monomorphism")
    return reflects_equivalence(m)


def equalizer_witness(m: Morphism) -> Tuple[Morphism, Morphism]:
    """The two inclusions of B into the pushout of B <- A -> B."""
    if not m.is_injective():
        raise PreconditionError("map is not a monomorphism")
    _, u, v = pushout(m, m)
    return u, v


def is_equalizer_of(m: Morphism, u: Morphism, v: Morphism) -> bool:
    """Whether m is (isomorphic over B to) the equalizer of u, v."""
    E, incl = equalizer(u, v)
    if set(E.elements) != m.image():
        return False
    A = m.source
    return all(A.are_equivalent(a, a2) == E.are_equivalent(m(a), m(a2))
               for a in A.elements for a2 in A.elements)


# Quotient functor Q and discrete functor R

def quotient_functor(X: PartitionedSet) -> Tuple[Hashable, ...]:
    """QX as a plain set: the class representatives."""
    return tuple(b[0] for b in X.blocks)


def quotient_functor_map(f: Morphism) -> Dict[Hashable, Hashable]:
    return induced_quotient_map(f)


def discrete_functor(A: Sequence[Hashable]) -> PartitionedSet:
    return discrete(list(A))


def discrete_functor_map(fn: Dict[Hashable, Hashable], A: Sequence[Hashable],
                         B: Sequence[Hashable]) -> Morphism:
    return Morphism(discrete_functor(A), discrete_functor(B), fn)


def transpose(X: PartitionedSet, A: Sequence[Hashable], fn: Dict[Hashable, Hashable]) -> Morphism:
    """A function QX -> A, as the morphism X -> RA, x -> fn(class of x)."""
    return Morphism(X, discrete_functor(A), [fn[X.representative(x)] for x in X.elements])


def untranspose(m: Morphism) -> Dict[Hashable, Hashable]:
    """A morphism X -> RA, as the function QX -> A."""
    return {b[0]: m(b[0]) for b in m.source.blocks}


def set_functions(S: Sequence[Hashable], T: Sequence[Hashable], limit: Optional[int] = None
                  ) -> List[Dict[Hashable, Hashable]]:
    if limit is None:
        limit = bounds().max_candidates
    ensure_within(len(T) ** len(S), limit, "set functions")
    S = list(S)
    return [dict(zip(S, images)) for images in itertools.product(sort_tokens(T), repeat=len(S))]


def adjunction(X: PartitionedSet, A: Sequence[Hashable], limit: Optional[int] = None
               ) -> List[Tuple[Dict[Hashable, Hashable], Morphism]]:
    """The bijection between functions QX -> A and morphisms X -> RA, as pairs."""
    return [(fn, transpose(X, A, fn)) for fn in set_functions(quotient_functor(X), A, limit)]


def is_bijection(fn: Dict[Hashable, Hashable], A: Sequence[Hashable]) -> bool:
    return len(set(fn.values())) == len(fn) and set(fn.values()) == set(A)
