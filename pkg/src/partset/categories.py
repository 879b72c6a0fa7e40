"""Finite index categories, diagrams of partitioned sets, and maps of diagrams."""

from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple

from .config import bounds, ensure_within
from .errors import MalformedError, ShapeError
from .morphisms import Morphism, compose, identity, iter_morphisms
from .objects import PartitionedSet
from .tokens import format_token, sort_tokens

IDENTITY_PREFIX = "id_"


def identity_name(obj) -> str:
    return IDENTITY_PREFIX + format_token(obj)


class FiniteCategory:
    """A finite category presented by objects, named non-identity arrows, and a
    composition table on composable pairs of non-identity arrows.

    Identity arrows are implicit and named ``id_<object>``. ``compose[(g, f)]``
    is the name of g after f.
    """

    def __init__(self, objects: Iterable[Hashable],
                 arrows: Mapping[str, Tuple[Hashable, Hashable]] = (),
                 compose: Mapping[Tuple[str, str], str] = ()):
        self.objects: Tuple[Hashable, ...] = tuple(sort_tokens(objects))
        if len(set(self.objects)) != len(self.objects):
            raise MalformedError("duplicate objects in category")
        arrows = dict(arrows)
        for name, (s, t) in arrows.items():
            if name.startswith(IDENTITY_PREFIX):
                raise MalformedError(f"arrow name {name!r} is reserved for identities")
            if s not in self.objects or t not in self.objects:
                raise MalformedError(f"arrow {name} has an endpoint outside the objects")
        self.arrows: Dict[str, Tuple[Hashable, Hashable]] = dict(sorted(arrows.items()))
        self.table: Dict[Tuple[str, str], str] = dict(compose)
        self._identities = {identity_name(c): c for c in self.objects}
        self._validate()

    def _validate(self):
        for (g, f), h in self.table.items():
            for name in (g, f, h):
                if name not in self.arrows:
                    raise MalformedError(f"composition table mentions unknown arrow {name!r}")
            if self.arrows[f][1] != self.arrows[g][0]:
                raise MalformedError(f"{g}.{f} is not composable")
            if self.arrows[h] != (self.arrows[f][0], self.arrows[g][1]):
                raise MalformedError(f"{g}.{f} = {h} has the wrong endpoints")
        for f, (_, t) in self.arrows.items():
            for g, (s, _) in self.arrows.items():
                if s == t and (g, f) not in self.table:
                    raise MalformedError(f"composition {g}.{f} is missing from the table")
        names = list(self.all_arrows())
        for f in names:
            for g in names:
                if self.target(f) != self.source(g):
                    continue
                for h in names:
                    if self.target(g) != self.source(h):
                        continue
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        raise MalformedError(f"composition is not associative at {h}, {g}, {f}")

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects, self.arrows, self.table) == (other.objects, other.arrows, other.table)

    def __hash__(self):
        return hash((self.objects, tuple(self.arrows.items()), tuple(sorted(self.table.items()))))

    def __repr__(self):
        arrows = ", ".join(f"{n}: {format_token(s)}->{format_token(t)}" for n, (s, t) in self.arrows.items())
        return f"FiniteCategory(objects={list(self.objects)}, arrows=[{arrows}])"

    def is_identity(self, name: str) -> bool:
        return name in self._identities

    def identity(self, obj) -> str:
        if obj not in self.objects:
            raise MalformedError(f"unknown object {format_token(obj)}")
        return identity_name(obj)

    def source(self, name: str):
        if name in self._identities:
            return self._identities[name]
        try:
            return self.arrows[name][0]
        except KeyError:
            raise MalformedError(f"unknown arrow {name!r}") from None

    def target(self, name: str):
        if name in self._identities:
            return self._identities[name]
        try:
            return self.arrows[name][1]
        except KeyError:
            raise MalformedError(f"unknown arrow {name!r}") from None

    def all_arrows(self) -> Iterator[str]:
        for c in self.objects:
            yield identity_name(c)
        yield from self.arrows

    def hom(self, a, b) -> List[str]:
        return [u for u in self.all_arrows() if self.source(u) == a and self.target(u) == b]

    def compose(self, g: str, f: str) -> str:
        if self.target(f) != self.source(g):
            raise ShapeError(f"arrows {g} and {f} are not composable")
        if g in self._identities:
            return f
        if f in self._identities:
            return g
        return self.table[(g, f)]

    def op(self) -> "FiniteCategory":
        return FiniteCategory(
            self.objects,
            {n: (t, s) for n, (s, t) in self.arrows.items()},
            {(f, g): h for (g, f), h in self.table.items()},
        )


def trivial_category(obj=0) -> FiniteCategory:
    return FiniteCategory([obj])


def empty_category() -> FiniteCategory:
    return FiniteCategory([])


def discrete_category(objects: Iterable[Hashable]) -> FiniteCategory:
    return FiniteCategory(objects)


def parallel_pair_category() -> FiniteCategory:
    """Two objects 0, 1 and two arrows f, g: 0 -> 1."""
    return FiniteCategory([0, 1], {"f": (0, 1), "g": (0, 1)})


def cospan_category() -> FiniteCategory:
    """a -> c <- b, arrows named f (from a) and g (from b)."""
    return FiniteCategory(["a", "b", "c"], {"f": ("a", "c"), "g": ("b", "c")})


def span_category() -> FiniteCategory:
    """b <- a -> c, arrows named h (to b) and f (to c)."""
    return FiniteCategory(["a", "b", "c"], {"h": ("a", "b"), "f": ("a", "c")})


class Diagram:
    """A functor from a finite category into partitioned sets.

    ``arrows`` assigns a morphism to each non-identity arrow.
    """

    def __init__(self, category: FiniteCategory, objects: Mapping[Hashable, PartitionedSet],
                 arrows: Mapping[str, Morphism] = ()):
        self.category = category
        objects = dict(objects)
        arrows = dict(arrows)
        if set(objects) != set(category.objects):
            raise MalformedError("diagram must assign an object to every object of the category")
        if set(arrows) != set(category.arrows):
            raise MalformedError("diagram must assign a morphism to every non-identity arrow")
        self.objects: Dict[Hashable, PartitionedSet] = {c: objects[c] for c in category.objects}
        self.arrows: Dict[str, Morphism] = {n: arrows[n] for n in category.arrows}
        for n, m in self.arrows.items():
            s, t = category.arrows[n]
            if m.source != self.objects[s] or m.target != self.objects[t]:
                raise MalformedError(f"morphism for arrow {n} has the wrong source or target")
        for (g, f), h in category.table.items():
            if compose(self.arrows[g], self.arrows[f]) != self.arrows[h]:
                raise MalformedError(f"diagram is not functorial at {g}.{f} = {h}")

    def __getitem__(self, obj) -> PartitionedSet:
        return self.objects[obj]

    def on_arrow(self, name: str) -> Morphism:
        if self.category.is_identity(name):
            return identity(self.objects[self.category.source(name)])
        return self.arrows[name]

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (type(self) is type(other) and self.category == other.category
                and self.objects == other.objects and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.category, tuple(self.objects.items()), tuple(self.arrows.items())))

    def __repr__(self):
        return f"{type(self).__name__}(objects={self.objects}, arrows={list(self.arrows)})"


def constant_diagram(category: FiniteCategory, X: PartitionedSet) -> Diagram:
    return Diagram(category, {c: X for c in category.objects},
                   {n: identity(X) for n in category.arrows})


class NatTrans:
    """A map of diagrams over the same index category: one component per object."""

    __slots__ = ("source", "target", "components", "_hash", "_key")

    def __init__(self, source: Diagram, target: Diagram, components: Mapping[Hashable, Morphism],
                 check: bool = True):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        comps = dict(components)
        object.__setattr__(self, "components", {c: comps[c] for c in source.category.objects}
                           if set(comps) == set(source.category.objects) else comps)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_key", None)
        if check:
            self._validate()

    def _validate(self):
        src, tgt = self.source, self.target
        if src.category != tgt.category:
            raise MalformedError("natural transformation between diagrams over different categories")
        if set(self.components) != set(src.category.objects):
            raise MalformedError("natural transformation needs one component per object")
        for c, m in self.components.items():
            if m.source != src[c] or m.target != tgt[c]:
                raise MalformedError(f"component at {format_token(c)} has the wrong source or target")
        for n, (a, b) in src.category.arrows.items():
            if compose(self.components[b], src.arrows[n]) != compose(tgt.arrows[n], self.components[a]):
                raise MalformedError(f"naturality fails at arrow {n}")

    def __setattr__(self, key, value):
        raise AttributeError("NatTrans is immutable")

    def __getitem__(self, obj) -> Morphism:
        return self.components[obj]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.components == other.components and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self.components.items())))
        return self._hash

    def sort_key(self):
        if self._key is None:
            object.__setattr__(self, "_key", tuple(m.sort_key() for m in self.components.values()))
        return self._key

    def token_text(self) -> str:
        return "nat(" + ",".join(m.token_text() for m in self.components.values()) + ")"

    def __repr__(self):
        return f"NatTrans({self.token_text()})"

    def __reduce__(self):
        return (NatTrans, (self.source, self.target, self.components, False))


def nat_identity(X: Diagram) -> NatTrans:
    return NatTrans(X, X, {c: identity(X[c]) for c in X.category.objects}, check=False)


def nat_compose(psi: NatTrans, phi: NatTrans) -> NatTrans:
    """psi after phi."""
    if phi.target != psi.source:
        raise ShapeError("natural transformations are not composable")
    return NatTrans(phi.source, psi.target,
                    {c: compose(psi[c], phi[c]) for c in phi.source.category.objects}, check=False)


def iter_nat_trans(X: Diagram, Y: Diagram, limit: Optional[int] = None) -> Iterator[NatTrans]:
    """All natural transformations X -> Y, by backtracking over objects in order,
    ordered lexicographically by component tables."""
    if X.category != Y.category:
        raise MalformedError("diagrams over different categories")
    if limit is None:
        limit = bounds().max_candidates
    cat = X.category
    objs = list(cat.objects)
    total = 1
    for c in objs:
        total *= len(Y[c]) ** len(X[c])
    ensure_within(total, limit, "natural transformation candidates")
    options = [list(iter_morphisms(X[c], Y[c], limit)) for c in objs]
    index = {c: i for i, c in enumerate(objs)}
    # arrows checked once both endpoints are assigned
    checks: List[List[str]] = [[] for _ in objs]
    for n, (a, b) in cat.arrows.items():
        checks[max(index[a], index[b])].append(n)
    chosen: List[Morphism] = []

    def rec(i):
        if i == len(objs):
            yield NatTrans(X, Y, dict(zip(objs, chosen)), check=False)
            return
        for m in options[i]:
            chosen.append(m)
            ok = True
            for n in checks[i]:
                a, b = cat.arrows[n]
                if compose(chosen[index[b]], X.arrows[n]) != compose(Y.arrows[n], chosen[index[a]]):
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
            chosen.pop()

    yield from rec(0)


def enumerate_nat_trans(X: Diagram, Y: Diagram, limit: Optional[int] = None) -> List[NatTrans]:
    return list(iter_nat_trans(X, Y, limit))
