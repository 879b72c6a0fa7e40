"""Finite partitioned sets (sets with an equivalence relation) and their quotients."""

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .config import bounds
from .errors import BoundExceeded, MalformedError, UnknownElementError
from .tokens import format_token, order_key
from .unionfind import UnionFind


class PartitionedSet:
    """A finite set of ordered tokens together with a partition into blocks.

    Instances are immutable and kept in canonical form: elements sorted inside
    each block, blocks sorted by their least element. Two instances are equal
    iff they have the same blocks.
    """

    __slots__ = ("_blocks", "_elements", "_block_index", "_position", "_hash")

    def __init__(self, blocks: Iterable[Iterable[Hashable]] = ()):
        seen: Dict[Hashable, int] = {}
        normalized = []
        for block in blocks:
            items = list(block)
            if not items:
                raise MalformedError("blocks must be nonempty")
            for e in items:
                order_key(e)  # rejects unsupported token types
                if e in seen:
                    raise MalformedError(f"element {format_token(e)} occurs more than once")
                seen[e] = -1
            normalized.append(tuple(sorted(items, key=order_key)))
        normalized.sort(key=lambda b: order_key(b[0]))
        self._blocks: Tuple[Tuple[Hashable, ...], ...] = tuple(normalized)
        self._block_index = {e: i for i, b in enumerate(self._blocks) for e in b}
        self._elements = tuple(sorted(self._block_index, key=order_key))
        self._position = {e: i for i, e in enumerate(self._elements)}
        self._hash = hash(self._blocks)

    @classmethod
    def from_relation(cls, elements: Iterable[Hashable],
                      pairs: Iterable[Tuple[Hashable, Hashable]] = ()) -> "PartitionedSet":
        """Partition of ``elements`` by the equivalence relation generated by ``pairs``."""
        uf = UnionFind(elements)
        for a, b in pairs:
            if a not in uf.parent or b not in uf.parent:
                missing = a if a not in uf.parent else b
                raise UnknownElementError(f"unknown element {format_token(missing)}")
            uf.union(a, b)
        return cls(uf.groups())

    @classmethod
    def from_labels(cls, labels: Dict[Hashable, Hashable]) -> "PartitionedSet":
        """Partition grouping elements that share a label."""
        groups: Dict[Hashable, List[Hashable]] = {}
        for e, lab in labels.items():
            groups.setdefault(lab, []).append(e)
        return cls(groups.values())

    @property
    def blocks(self) -> Tuple[Tuple[Hashable, ...], ...]:
        return self._blocks

    @property
    def elements(self) -> Tuple[Hashable, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._elements)

    def __contains__(self, e) -> bool:
        return e in self._block_index

    def __eq__(self, other):
        if not isinstance(other, PartitionedSet):
            return NotImplemented
        return self._hash == other._hash and self._blocks == other._blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "PartitionedSet({})".format(self.text())

    def text(self) -> str:
        """Compact rendering such as ``{a b | c}``."""
        return "{" + " | ".join(" ".join(format_token(e) for e in b) for b in self._blocks) + "}"

    def sort_key(self):
        return tuple(tuple(order_key(e) for e in b) for b in self._blocks)

    def _check(self, e):
        if e not in self._block_index:
            raise UnknownElementError(f"unknown element {format_token(e)}")

    def block_index(self, e) -> int:
        self._check(e)
        return self._block_index[e]

    def block_of(self, e) -> Tuple[Hashable, ...]:
        return self._blocks[self.block_index(e)]

    def representative(self, e):
        """Least element of the block containing ``e``."""
        return self.block_of(e)[0]

    def position(self, e) -> int:
        self._check(e)
        return self._position[e]

    def are_equivalent(self, e1, e2) -> bool:
        return self.block_index(e1) == self.block_index(e2)

    def restrict(self, subset: Iterable[Hashable]) -> "PartitionedSet":
        """Subset with the induced partition."""
        chosen = set(subset)
        for e in chosen:
            self._check(e)
        blocks = [[e for e in b if e in chosen] for b in self._blocks]
        return PartitionedSet(b for b in blocks if b)

    def is_discrete(self) -> bool:
        return len(self._blocks) == len(self._elements)


def are_equivalent(X: PartitionedSet, e1, e2) -> bool:
    return X.are_equivalent(e1, e2)


@dataclass(frozen=True)
class QuotientSet:
    """Classes of a partitioned set, each with its least element as representative."""

    classes: Tuple[Tuple[Hashable, ...], ...]

    @property
    def representatives(self) -> Tuple[Hashable, ...]:
        return tuple(c[0] for c in self.classes)

    def __len__(self):
        return len(self.classes)


def quotient(X: PartitionedSet) -> QuotientSet:
    return QuotientSet(X.blocks)


def _element_list(n: Union[int, Sequence[Hashable]]) -> List[Hashable]:
    if isinstance(n, int):
        if n < 0:
            raise MalformedError("size must be nonnegative")
        return list(range(n))
    return list(n)


def discrete(n: Union[int, Sequence[Hashable]]) -> PartitionedSet:
    return PartitionedSet([e] for e in _element_list(n))


def codiscrete(n: Union[int, Sequence[Hashable]]) -> PartitionedSet:
    elements = _element_list(n)
    return PartitionedSet([elements] if elements else [])


def interval() -> PartitionedSet:
    """The two-point set {0, 1} with 0 ~ 1."""
    return codiscrete(2)


def point() -> PartitionedSet:
    """The final object: one point, written ``()`` so it doubles as the empty product."""
    return PartitionedSet([[()]])


def empty() -> PartitionedSet:
    return PartitionedSet()


def restricted_growth_strings(n: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    s = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(s)
            return
        for v in range(m + 2):
            s[i] = v
            yield from rec(i + 1, max(m, v))

    s[0] = 0
    yield from rec(1, 0)


def enumerate_objects(n: int, cap: Optional[int] = None) -> List[PartitionedSet]:
    """All partitions of {0, ..., n-1}, in restricted-growth-string order."""
    if cap is None:
        cap = bounds().max_object_size
    if n < 0:
        raise MalformedError("size must be nonnegative")
    if n > cap:
        raise BoundExceeded(f"object size {n} exceeds the enumeration cap {cap}")
    out = []
    for rgs in restricted_growth_strings(n):
        blocks: List[List[int]] = [[] for _ in range(max(rgs, default=-1) + 1)]
        for e, b in enumerate(rgs):
            blocks[b].append(e)
        out.append(PartitionedSet(blocks))
    return out


def enumerate_objects_upto(n: int, cap: Optional[int] = None) -> List[PartitionedSet]:
    """All canonical objects of size 0..n."""
    return [X for k in range(n + 1) for X in enumerate_objects(k, cap)]
