"""Partition-respecting maps, their classification, and brute-force enumeration."""

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Union

from .config import bounds, ensure_within
from .errors import CompositionError, MalformedError, ShapeError, UnknownElementError
from .objects import PartitionedSet
from .tokens import format_token, order_key


def respects_partition(source: PartitionedSet, target: PartitionedSet, table: Sequence) -> bool:
    """True iff equivalent source elements have equivalent images.

    ``table`` lists the images in the order of ``source.elements``.
    """
    pos = source.position
    for block in source.blocks:
        first = target.block_index(table[pos(block[0])])
        for e in block[1:]:
            if target.block_index(table[pos(e)]) != first:
                return False
    return True


class Morphism:
    """A map of partitioned sets.

    ``mapping`` may be a dict, a callable, or a sequence of images listed in
    the order of ``source.elements``.
    """

    __slots__ = ("source", "target", "table", "_map", "_hash", "_key")

    def __init__(self, source: PartitionedSet, target: PartitionedSet,
                 mapping: Union[Mapping, Callable, Sequence]):
        if isinstance(mapping, Mapping):
            extra = set(mapping) - set(source.elements)
            if extra:
                e = sorted(extra, key=order_key)[0]
                raise MalformedError(f"map defined on {format_token(e)}, which is not in the source")
            missing = [e for e in source.elements if e not in mapping]
            if missing:
                raise MalformedError(f"map is not total: no image for {format_token(missing[0])}")
            table = tuple(mapping[e] for e in source.elements)
        elif callable(mapping):
            table = tuple(mapping(e) for e in source.elements)
        else:
            table = tuple(mapping)
            if len(table) != len(source):
                raise MalformedError("image table length differs from the source size")
        for e, y in zip(source.elements, table):
            if y not in target:
                raise MalformedError(f"image {format_token(y)} of {format_token(e)} is not in the target")
        if not respects_partition(source, target, table):
            raise MalformedError("map does not take equivalent elements to equivalent elements")
        self._init(source, target, table)

    def _init(self, source, target, table):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_map", None)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_key", None)

    @classmethod
    def trusted(cls, source, target, table) -> "Morphism":
        """Build without validation; for maps that are morphisms by construction."""
        m = cls.__new__(cls)
        m._init(source, target, tuple(table))
        return m

    def __setattr__(self, key, value):
        raise AttributeError("Morphism is immutable")

    @property
    def mapping(self) -> Dict[Hashable, Hashable]:
        if self._map is None:
            object.__setattr__(self, "_map", dict(zip(self.source.elements, self.table)))
        return self._map

    def __call__(self, e):
        try:
            return self.mapping[e]
        except KeyError:
            raise UnknownElementError(f"{format_token(e)} is not in the source") from None

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.table == other.table and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.source, self.target, self.table)))
        return self._hash

    def sort_key(self):
        if self._key is None:
            object.__setattr__(self, "_key", tuple(order_key(y) for y in self.table))
        return self._key

    def token_text(self) -> str:
        return "map(" + ",".join(format_token(y) for y in self.table) + ")"

    def __repr__(self):
        pairs = ", ".join(f"{format_token(x)}->{format_token(y)}"
                          for x, y in zip(self.source.elements, self.table))
        return f"Morphism({self.source.text()} -> {self.target.text()}: {pairs})"

    def __reduce__(self):
        return (Morphism.trusted, (self.source, self.target, self.table))

    def then(self, other: "Morphism") -> "Morphism":
        return compose(other, self)

    def image(self) -> frozenset:
        return frozenset(self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.target)


def identity(X: PartitionedSet) -> Morphism:
    return Morphism.trusted(X, X, X.elements)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.target != g.source:
        raise CompositionError(
            f"cannot compose: target {f.target.text()} differs from source {g.source.text()}")
    gm = g.mapping
    return Morphism.trusted(f.source, g.target, (gm[y] for y in f.table))


def compose_all(*maps: Morphism) -> Morphism:
    """compose_all(h, g, f) == h after g after f."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def inclusion(subset: PartitionedSet, X: PartitionedSet) -> Morphism:
    return Morphism(subset, X, subset.elements)


def constant(X: PartitionedSet, Y: PartitionedSet, y) -> Morphism:
    return Morphism(X, Y, [y] * len(X))


def induced_quotient_map(f: Morphism) -> Dict[Hashable, Hashable]:
    """The map of quotient sets, on class representatives."""
    return {b[0]: f.target.representative(f(b[0])) for b in f.source.blocks}


def _quotient_table(f: Morphism):
    return tuple(f.target.block_index(f(b[0])) for b in f.source.blocks)


def is_cofibration(f: Morphism) -> bool:
    return f.is_injective()


def is_fibration(f: Morphism) -> bool:
    """Every source block maps onto a whole target block."""
    for block in f.source.blocks:
        image = {f(e) for e in block}
        if len(image) != len(f.target.block_of(next(iter(image)))):
            return False
    return True


def is_weak_equivalence(f: Morphism) -> bool:
    qt = _quotient_table(f)
    return len(set(qt)) == len(qt) == len(f.target.blocks)


def reflects_equivalence(f: Morphism) -> bool:
    """f(a) ~ f(a') implies a ~ a'; i.e. the quotient map is injective."""
    qt = _quotient_table(f)
    return len(set(qt)) == len(qt)


@dataclass(frozen=True)
class ClassificationReport:
    cofibration: bool
    fibration: bool
    weak_equivalence: bool
    mono: bool
    epi: bool
    iso: bool
    effective_mono: Optional[bool]

    @property
    def acyclic_cofibration(self) -> bool:
        return self.cofibration and self.weak_equivalence

    @property
    def acyclic_fibration(self) -> bool:
        return self.fibration and self.weak_equivalence

    def flags(self) -> List[str]:
        names = ["cofibration", "fibration", "weak_equivalence", "mono", "epi", "iso"]
        out = [n for n in names if getattr(self, n)]
        if self.effective_mono:
            out.append("effective_mono")
        return out

    def render(self) -> str:
        lines = [f"{n}: {str(getattr(self, n)).lower()}" for n in
                 ["cofibration", "fibration", "weak_equivalence", "mono", "epi", "iso"]]
        em = "n/a" if self.effective_mono is None else str(self.effective_mono).lower()
        lines.append(f"effective_mono: {em}")
        return "\n".join(lines)


def classify(f: Morphism) -> ClassificationReport:
    mono = f.is_injective()
    epi = f.is_surjective()
    reflects = reflects_equivalence(f)
    return ClassificationReport(
        cofibration=mono,
        fibration=is_fibration(f),
        weak_equivalence=is_weak_equivalence(f),
        mono=mono,
        epi=epi,
        iso=mono and epi and reflects,
        effective_mono=reflects if mono else None,
    )


def count_functions(X: PartitionedSet, Y: PartitionedSet) -> int:
    return len(Y) ** len(X)


def iter_morphisms(X: PartitionedSet, Y: PartitionedSet, limit: Optional[int] = None) -> Iterator[Morphism]:
    if limit is None:
        limit = bounds().max_candidates
    ensure_within(count_functions(X, Y), limit, f"functions {X.text()} -> {Y.text()}")
    for table in itertools.product(Y.elements, repeat=len(X)):
        if respects_partition(X, Y, table):
            yield Morphism.trusted(X, Y, table)


def enumerate_morphisms(X: PartitionedSet, Y: PartitionedSet, limit: Optional[int] = None) -> List[Morphism]:
    """All morphisms X -> Y, ordered lexicographically by their image tables."""
    return list(iter_morphisms(X, Y, limit))


def check_retract(f: Morphism, g: Morphism, i_src: Morphism, r_src: Morphism,
                  i_tgt: Morphism, r_tgt: Morphism) -> bool:
    """Whether f is a retract of g via the given section/retraction pairs.

    Shape: i_src: src f -> src g, r_src: src g -> src f, and likewise on targets.
    """
    shape = [
        (i_src.source, f.source), (i_src.target, g.source),
        (r_src.source, g.source), (r_src.target, f.source),
        (i_tgt.source, f.target), (i_tgt.target, g.target),
        (r_tgt.source, g.target), (r_tgt.target, f.target),
    ]
    if any(a != b for a, b in shape):
        raise ShapeError("maps do not form a retract diagram of f and g")
    return (compose(r_src, i_src) == identity(f.source)
            and compose(r_tgt, i_tgt) == identity(f.target)
            and compose(g, i_src) == compose(i_tgt, f)
            and compose(f, r_src) == compose(r_tgt, g))
