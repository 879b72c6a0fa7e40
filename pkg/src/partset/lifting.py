"""Lifting problems: the constructive lift for model-structure squares, and exhaustive search."""

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .config import bounds, ensure_within
from .errors import PostconditionError, PreconditionError, ShapeError
from .morphisms import (Morphism, classify, compose, iter_morphisms, respects_partition)
from .tokens import format_token


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square ``right . top == bottom . left``.

    ::

        A --top--> X
        |          |
      left       right
        v          v
        B -bottom> Y
    """

    left: Morphism
    right: Morphism
    top: Morphism
    bottom: Morphism

    def __post_init__(self):
        if (self.top.source != self.left.source or self.top.target != self.right.source
                or self.bottom.source != self.left.target or self.bottom.target != self.right.target):
            raise ShapeError("square maps do not fit together")
        if compose(self.right, self.top) != compose(self.bottom, self.left):
            raise ShapeError("square does not commute")

    def is_lift(self, s: Morphism) -> bool:
        return (s.source == self.left.target and s.target == self.right.source
                and compose(s, self.left) == self.top and compose(self.right, s) == self.bottom)


def solve_lift_constructive(prob: LiftingProblem) -> Morphism:
    """Lift in a square whose left leg is a cofibration and right leg a fibration,
    one of them acyclic. Ties are broken by the least eligible element."""
    j, p, f, g = prob.left, prob.right, prob.top, prob.bottom
    cj, cp = classify(j), classify(p)
    if not cj.cofibration:
        raise PreconditionError("left leg is not a cofibration")
    if not cp.fibration:
        raise PreconditionError("right leg is not a fibration")
    if not (cj.weak_equivalence or cp.weak_equivalence):
        raise PreconditionError("neither leg is acyclic")
    A, B, X = j.source, j.target, p.source
    preimage = {j(a): a for a in A.elements}
    s = {}
    for b in B.elements:
        if b in preimage:
            s[b] = f(preimage[b])
            continue
        gb = g(b)
        if cj.weak_equivalence:
            a = next((a for a in A.elements if B.are_equivalent(b, j(a))), None)
            pool = () if a is None else X.block_of(f(a))
        else:
            pool = X.elements
        x = next((x for x in pool if p(x) == gb), None)
        if x is None:
            raise PostconditionError(f"no eligible value for {format_token(b)}")
        s[b] = x
    return Morphism(B, X, s)


def lift_candidate_count(prob: LiftingProblem) -> int:
    return len(prob.right.source) ** len(prob.left.target)


def solve_lift_search(prob: LiftingProblem, limit: Optional[int] = None) -> Optional[Morphism]:
    """Lexicographically least lift, or None. Candidates are restricted pointwise to
    values forced by the two triangles before the partition check."""
    if limit is None:
        limit = bounds().max_candidates
    j, p, f, g = prob.left, prob.right, prob.top, prob.bottom
    B, X = j.target, p.source
    forced = {}
    for a in j.source.elements:
        forced.setdefault(j(a), set()).add(f(a))
    choices = []
    for b in B.elements:
        opts = [x for x in X.elements if p(x) == g(b)]
        if b in forced:
            opts = [x for x in opts if x in forced[b]]
        if not opts:
            return None
        choices.append(opts)
    total = 1
    for c in choices:
        total *= len(c)
    ensure_within(total, limit, "lift candidates")
    for table in itertools.product(*choices):
        if respects_partition(B, X, table):
            s = Morphism.trusted(B, X, table)
            if prob.is_lift(s):
                return s
    return None


def commuting_squares(j: Morphism, p: Morphism, limit: Optional[int] = None) -> Iterator[LiftingProblem]:
    """Every commuting square with left leg j and right leg p."""
    bottoms = list(iter_morphisms(j.target, p.target, limit))
    for top in iter_morphisms(j.source, p.source, limit):
        pf = compose(p, top)
        for bottom in bottoms:
            if compose(bottom, j) == pf:
                yield LiftingProblem(j, p, top, bottom)


def find_unliftable_square(p: Morphism, j: Morphism, limit: Optional[int] = None) -> Optional[LiftingProblem]:
    for prob in commuting_squares(j, p, limit):
        if solve_lift_search(prob, limit) is None:
            return prob
    return None


def has_rlp(p: Morphism, j: Morphism, limit: Optional[int] = None) -> bool:
    """p has the right lifting property with respect to j."""
    return find_unliftable_square(p, j, limit) is None


def has_llp(j: Morphism, p: Morphism, limit: Optional[int] = None) -> bool:
    return has_rlp(p, j, limit)
