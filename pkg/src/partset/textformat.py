"""Line-based text format for workspaces of named objects, maps, categories,
diagrams, presheaves, natural transformations and lifting squares.

Records are separated by blank lines; lines starting with ``#`` are comments.
Example::

    object X
    a b
    c

    morphism f : X -> Y
    a |-> p
    b |-> p
    c |-> q
"""

import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .categories import Diagram, FiniteCategory, NatTrans
from .errors import MalformedError, ParseError, PartsetError
from .lifting import LiftingProblem
from .morphisms import Morphism
from .objects import PartitionedSet
from .presheaves import Presheaf
from .tokens import TokenSyntaxError, _parse, format_token

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
KINDS = ("object", "morphism", "category", "diagram", "presheaf", "natrans", "square")


@dataclass
class Workspace:
    """Named values, one namespace per kind, in insertion order.

    Morphisms remember the names of their source and target objects; diagrams
    and presheaves remember their category and the names bound to each object
    and arrow; natural transformations remember endpoints and component names.
    """

    objects: Dict[str, PartitionedSet] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)
    categories: Dict[str, FiniteCategory] = field(default_factory=dict)
    diagrams: Dict[str, Diagram] = field(default_factory=dict)
    presheaves: Dict[str, Presheaf] = field(default_factory=dict)
    natrans: Dict[str, NatTrans] = field(default_factory=dict)
    squares: Dict[str, LiftingProblem] = field(default_factory=dict)
    refs: Dict[Tuple[str, str], Tuple] = field(default_factory=dict)

    # building

    def _fresh(self, table: Dict[str, Any], stem: str) -> str:
        if stem not in table:
            return stem
        k = 1
        while f"{stem}{k}" in table:
            k += 1
        return f"{stem}{k}"

    def _claim(self, table: Dict[str, Any], name: str, kind: str):
        if not NAME.fullmatch(name):
            raise MalformedError(f"invalid {kind} name {name!r}")
        if name in table:
            raise MalformedError(f"duplicate {kind} name {name!r}")

    def add_object(self, name: str, X: PartitionedSet) -> str:
        self._claim(self.objects, name, "object")
        self.objects[name] = X
        return name

    def object_name(self, X: PartitionedSet, stem: str = "X") -> str:
        """Name of an existing object equal to X, or of a newly added one."""
        for name, Y in self.objects.items():
            if Y == X:
                return name
        return self.add_object(self._fresh(self.objects, stem), X)

    def add_morphism(self, name: str, m: Morphism, source: Optional[str] = None,
                     target: Optional[str] = None) -> str:
        self._claim(self.morphisms, name, "morphism")
        source = source or self.object_name(m.source)
        target = target or self.object_name(m.target)
        if self.objects[source] != m.source or self.objects[target] != m.target:
            raise MalformedError(f"morphism {name} does not match its named endpoints")
        self.morphisms[name] = m
        self.refs[("morphism", name)] = (source, target)
        return name

    def morphism_name(self, m: Morphism, stem: str = "m") -> str:
        for name, n in self.morphisms.items():
            if n == m:
                return name
        return self.add_morphism(self._fresh(self.morphisms, stem), m)

    def add_category(self, name: str, C: FiniteCategory) -> str:
        self._claim(self.categories, name, "category")
        self.categories[name] = C
        return name

    def category_name(self, C: FiniteCategory, stem: str = "C") -> str:
        for name, D in self.categories.items():
            if D == C:
                return name
        return self.add_category(self._fresh(self.categories, stem), C)

    def _bind(self, D: Diagram, category: FiniteCategory, stem: str):
        cat = self.category_name(category)
        objs = {c: self.object_name(D[c], f"{stem}_{_slug(c)}") for c in D.category.objects}
        arrows = {n: self.morphism_name(D.arrows[n], f"{stem}_{n}") for n in D.category.arrows}
        return cat, objs, arrows

    def add_diagram(self, name: str, D: Diagram) -> str:
        if isinstance(D, Presheaf):
            return self.add_presheaf(name, D)
        self._claim(self.diagrams, name, "diagram")
        self.diagrams[name] = D
        self.refs[("diagram", name)] = self._bind(D, D.category, name)
        return name

    def add_presheaf(self, name: str, P: Presheaf) -> str:
        self._claim(self.presheaves, name, "presheaf")
        self.presheaves[name] = P
        self.refs[("presheaf", name)] = self._bind(P, P.site, name)
        return name

    def diagram_name(self, D: Diagram, stem: str = "D") -> str:
        table = self.presheaves if isinstance(D, Presheaf) else self.diagrams
        for name, E in table.items():
            if E == D:
                return name
        return self.add_diagram(self._fresh(table, stem), D)

    def add_natrans(self, name: str, phi: NatTrans) -> str:
        self._claim(self.natrans, name, "natrans")
        src = self.diagram_name(phi.source, f"{name}_src")
        tgt = self.diagram_name(phi.target, f"{name}_tgt")
        comps = {c: self.morphism_name(phi[c], f"{name}_{_slug(c)}") for c in phi.components}
        self.natrans[name] = phi
        self.refs[("natrans", name)] = (src, tgt, comps)
        return name

    def add_square(self, name: str, sq: LiftingProblem) -> str:
        self._claim(self.squares, name, "square")
        legs = tuple(self.morphism_name(getattr(sq, k), f"{name}_{k}")
                     for k in ("left", "right", "top", "bottom"))
        self.squares[name] = sq
        self.refs[("square", name)] = legs
        return name

    def lookup(self, name: str):
        """The value of that name in whichever namespace defines it."""
        found = [table[name] for table in (self.objects, self.morphisms, self.categories,
                                           self.diagrams, self.presheaves, self.natrans, self.squares)
                 if name in table]
        if not found:
            raise KeyError(name)
        if len(found) > 1:
            raise MalformedError(f"name {name!r} is ambiguous")
        return found[0]


def _slug(token) -> str:
    text = format_token(token)
    return text if NAME.fullmatch(text) else re.sub(r"[^A-Za-z0-9_]", "_", text)


# serialization

def _object_lines(name: str, X: PartitionedSet) -> List[str]:
    return [f"object {name}"] + [" ".join(format_token(e) for e in b) for b in X.blocks]


def serialize(ws: Workspace) -> str:
    records: List[List[str]] = []
    for name, X in ws.objects.items():
        records.append(_object_lines(name, X))
    for name, m in ws.morphisms.items():
        src, tgt = ws.refs[("morphism", name)]
        lines = [f"morphism {name} : {src} -> {tgt}"]
        lines += [f"{format_token(x)} |-> {format_token(y)}" for x, y in zip(m.source.elements, m.table)]
        records.append(lines)
    for name, C in ws.categories.items():
        lines = [f"category {name}", "objects: " + " ".join(format_token(c) for c in C.objects)]
        lines += [f"arrows: {n}: {format_token(s)} -> {format_token(t)}" for n, (s, t) in C.arrows.items()]
        lines += [f"compose: {g}.{f} = {h}" for (g, f), h in sorted(C.table.items())]
        records.append([ln.rstrip() for ln in lines])
    for kind, table, word in (("diagram", ws.diagrams, "arrow"), ("presheaf", ws.presheaves, "restriction")):
        for name in table:
            cat, objs, arrows = ws.refs[(kind, name)]
            lines = [f"{kind} {name} over {cat}"]
            lines += [f"object {format_token(c)} = {o}" for c, o in objs.items()]
            lines += [f"{word} {n} = {m}" for n, m in arrows.items()]
            records.append(lines)
    for name in ws.natrans:
        src, tgt, comps = ws.refs[("natrans", name)]
        lines = [f"natrans {name} : {src} -> {tgt}"]
        lines += [f"component {format_token(c)} = {m}" for c, m in comps.items()]
        records.append(lines)
    for name in ws.squares:
        legs = ws.refs[("square", name)]
        lines = [f"square {name}"]
        lines += [f"{k} = {m}" for k, m in zip(("left", "right", "top", "bottom"), legs)]
        records.append(lines)
    return "".join("\n".join(r) + "\n\n" for r in records)


def dumps_object(name: str, X: PartitionedSet) -> str:
    return "\n".join(_object_lines(name, X)) + "\n\n"


# parsing

class _Line:
    def __init__(self, text: str, number: int, source):
        self.text = text
        self.number = number
        self.source = source

    def error(self, message: str, column: int = 1) -> ParseError:
        return ParseError(message, self.number, column, self.source)


def split_tokens(text: str, start: int = 0) -> List[Tuple[Any, int]]:
    """Whitespace-separated element tokens with their 0-based offsets."""
    out = []
    pos = start
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            return out
        value, end = _parse(text, pos)
        if end < n and not text[end].isspace():
            raise TokenSyntaxError(f"unexpected {text[end]!r} after token", end)
        out.append((value, pos))
        pos = end


def _records(text: str, source) -> List[List[_Line]]:
    records, current = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            if current:
                records.append(current)
                current = []
            continue
        current.append(_Line(raw.rstrip(), number, source))
    if current:
        records.append(current)
    return records


def _token_list(line: _Line, start: int) -> List[Any]:
    try:
        return [v for v, _ in split_tokens(line.text, start)]
    except TokenSyntaxError as exc:
        raise line.error(str(exc), exc.offset + 1) from None


def _one_token(line: _Line, text_start: int, text_end: int) -> Any:
    segment = line.text[:text_end]
    try:
        items = split_tokens(segment, text_start)
    except TokenSyntaxError as exc:
        raise line.error(str(exc), exc.offset + 1) from None
    if len(items) != 1:
        raise line.error("expected exactly one token", text_start + 1)
    return items[0][0]


_HEADERS = {
    "object": re.compile(r"object\s+(?P<name>\S+)\s*$"),
    "morphism": re.compile(r"morphism\s+(?P<name>\S+)\s*:\s*(?P<src>\S+)\s*->\s*(?P<tgt>\S+)\s*$"),
    "category": re.compile(r"category\s+(?P<name>\S+)\s*$"),
    "diagram": re.compile(r"diagram\s+(?P<name>\S+)\s+over\s+(?P<cat>\S+)\s*$"),
    "presheaf": re.compile(r"presheaf\s+(?P<name>\S+)\s+over\s+(?P<cat>\S+)\s*$"),
    "natrans": re.compile(r"natrans\s+(?P<name>\S+)\s*:\s*(?P<src>\S+)\s*->\s*(?P<tgt>\S+)\s*$"),
    "square": re.compile(r"square\s+(?P<name>\S+)\s*$"),
}
_BINDING = re.compile(r"(?P<key>[A-Za-z]+)\s+(?P<lhs>.+?)\s*=\s*(?P<rhs>\S+)\s*$")
_SQUARE_LEG = re.compile(r"(?P<key>left|right|top|bottom)\s*=\s*(?P<rhs>\S+)\s*$")


class _Parser:
    def __init__(self, source):
        self.ws = Workspace()
        self.source = source

    def run(self, text: str) -> Workspace:
        for record in _records(text, self.source):
            head = record[0]
            word = head.text.split(None, 1)[0]
            if word not in _HEADERS:
                raise head.error(f"unknown record kind {word!r}; expected one of {', '.join(KINDS)}")
            m = _HEADERS[word].match(head.text)
            if not m:
                raise head.error(f"malformed {word} header")
            name = m.group("name")
            if not NAME.fullmatch(name):
                raise head.error(f"invalid name {name!r}", m.start("name") + 1)
            try:
                getattr(self, "_" + word)(m, record)
            except ParseError:
                raise
            except PartsetError as exc:
                raise head.error(str(exc)) from None
        return self.ws

    def _ref(self, table: Dict[str, Any], name: str, kind: str, line: _Line, column: int):
        if name not in table:
            raise line.error(f"unknown {kind} {name!r}", column)
        return table[name]

    def _claim(self, table, name, kind, line):
        if name in table:
            raise line.error(f"duplicate {kind} name {name!r}", line.text.index(name) + 1)

    def _object(self, m, record):
        head = record[0]
        self._claim(self.ws.objects, m.group("name"), "object", head)
        blocks, seen = [], {}
        for line in record[1:]:
            block = []
            for value, offset in self._tokens_at(line):
                if value in seen:
                    raise line.error(f"duplicate element {format_token(value)} "
                                     f"(first on line {seen[value]})", offset + 1)
                seen[value] = line.number
                block.append(value)
            blocks.append(block)
        self.ws.add_object(m.group("name"), PartitionedSet(blocks))

    def _tokens_at(self, line: _Line, start: int = 0):
        try:
            return split_tokens(line.text, start)
        except TokenSyntaxError as exc:
            raise line.error(str(exc), exc.offset + 1) from None

    def _morphism(self, m, record):
        head = record[0]
        name = m.group("name")
        self._claim(self.ws.morphisms, name, "morphism", head)
        X = self._ref(self.ws.objects, m.group("src"), "object", head, m.start("src") + 1)
        Y = self._ref(self.ws.objects, m.group("tgt"), "object", head, m.start("tgt") + 1)
        mapping = {}
        for line in record[1:]:
            arrow = line.text.find("|->")
            if arrow < 0:
                raise line.error("expected 'element |-> image'")
            x = _one_token(line, 0, arrow)
            y = _one_token(line, arrow + 3, len(line.text))
            if x not in X:
                raise line.error(f"{format_token(x)} is not an element of {m.group('src')}")
            if y not in Y:
                rest = line.text[arrow + 3:]
                raise line.error(f"{format_token(y)} is not an element of {m.group('tgt')}",
                                 arrow + 4 + len(rest) - len(rest.lstrip()))
            if x in mapping:
                raise line.error(f"{format_token(x)} is mapped twice")
            mapping[x] = y
        try:
            f = Morphism(X, Y, mapping)
        except MalformedError as exc:
            raise head.error(f"morphism {name}: {exc}") from None
        self.ws.add_morphism(name, f, m.group("src"), m.group("tgt"))

    def _category(self, m, record):
        head = record[0]
        name = m.group("name")
        self._claim(self.ws.categories, name, "category", head)
        objects, arrows, table = None, {}, {}
        for line in record[1:]:
            key, _, rest = line.text.partition(":")
            key = key.strip()
            start = len(key) + 1 + (len(line.text) - len(line.text.lstrip()))
            if key == "objects":
                objects = (objects or []) + _token_list(line, start)
            elif key == "arrows":
                for part in rest.split(","):
                    am = re.fullmatch(r"\s*(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", part)
                    if not am:
                        raise line.error("expected 'name: source -> target'", start + 1)
                    an = am.group(1)
                    if not NAME.fullmatch(an):
                        raise line.error(f"invalid arrow name {an!r}", start + 1)
                    if an in arrows:
                        raise line.error(f"duplicate arrow {an!r}", start + 1)
                    arrows[an] = (self._parse_one(line, am.group(2)), self._parse_one(line, am.group(3)))
            elif key == "compose":
                for part in rest.split(","):
                    cm = re.fullmatch(r"\s*(\S+)\s*\.\s*(\S+)\s*=\s*(\S+)\s*", part)
                    if not cm:
                        raise line.error("expected 'g.f = h'", start + 1)
                    table[(cm.group(1), cm.group(2))] = cm.group(3)
            else:
                raise line.error(f"expected 'objects:', 'arrows:' or 'compose:', got {key!r}")
        if objects is None:
            raise head.error(f"category {name} has no 'objects:' line")
        self.ws.add_category(name, FiniteCategory(objects, arrows, table))

    def _parse_one(self, line: _Line, text: str):
        try:
            value, end = _parse(text, 0)
        except TokenSyntaxError as exc:
            raise line.error(str(exc), line.text.find(text) + exc.offset + 1) from None
        if end != len(text):
            raise line.error(f"unexpected text after {text[:end]!r}", line.text.find(text) + end + 1)
        return value

    def _bindings(self, record, keys):
        out = {k: {} for k in keys}
        for line in record[1:]:
            bm = _BINDING.match(line.text.strip())
            indent = len(line.text) - len(line.text.lstrip())
            if not bm or bm.group("key") not in keys:
                raise line.error(f"expected '{keys[0]} <name> = <value>'" if len(keys) == 1
                                 else f"expected one of {', '.join(keys)} bindings")
            lhs = bm.group("lhs")
            key = bm.group("key")
            value = self._parse_one(line, lhs) if key in ("object", "component") else lhs
            if value in out[key]:
                raise line.error(f"{key} {lhs} bound twice", indent + 1)
            out[key][value] = (bm.group("rhs"), line, indent + bm.start("rhs") + 1)
        return out

    def _diagram_like(self, m, record, kind, word):
        head = record[0]
        name = m.group("name")
        table = self.ws.diagrams if kind == "diagram" else self.ws.presheaves
        self._claim(table, name, kind, head)
        cat_name = m.group("cat")
        C = self._ref(self.ws.categories, cat_name, "category", head, m.start("cat") + 1)
        b = self._bindings(record, ("object", word))
        objs, obj_names, arrows, arrow_names = {}, {}, {}, {}
        for c, (ref, line, col) in b["object"].items():
            if c not in C.objects:
                raise line.error(f"{format_token(c)} is not an object of {cat_name}")
            objs[c] = self._ref(self.ws.objects, ref, "object", line, col)
            obj_names[c] = ref
        for n, (ref, line, col) in b[word].items():
            if n not in C.arrows:
                raise line.error(f"{n} is not an arrow of {cat_name}")
            arrows[n] = self._ref(self.ws.morphisms, ref, "morphism", line, col)
            arrow_names[n] = ref
        try:
            D = Diagram(C, objs, arrows) if kind == "diagram" else Presheaf(C, objs, arrows)
        except MalformedError as exc:
            raise head.error(f"{kind} {name}: {exc}") from None
        order_o = {c: obj_names[c] for c in D.category.objects}
        order_a = {n: arrow_names[n] for n in D.category.arrows}
        table[name] = D
        self.ws.refs[(kind, name)] = (cat_name, order_o, order_a)

    def _diagram(self, m, record):
        self._diagram_like(m, record, "diagram", "arrow")

    def _presheaf(self, m, record):
        self._diagram_like(m, record, "presheaf", "restriction")

    def _endpoint(self, ref: str, line: _Line, column: int):
        hits = [(k, t[ref]) for k, t in (("diagram", self.ws.diagrams), ("presheaf", self.ws.presheaves))
                if ref in t]
        if not hits:
            raise line.error(f"unknown diagram or presheaf {ref!r}", column)
        if len(hits) > 1:
            raise line.error(f"{ref!r} names both a diagram and a presheaf", column)
        return hits[0][1]

    def _natrans(self, m, record):
        head = record[0]
        name = m.group("name")
        self._claim(self.ws.natrans, name, "natrans", head)
        X = self._endpoint(m.group("src"), head, m.start("src") + 1)
        Y = self._endpoint(m.group("tgt"), head, m.start("tgt") + 1)
        b = self._bindings(record, ("component",))["component"]
        comps, names = {}, {}
        for c, (ref, line, col) in b.items():
            if c not in X.category.objects:
                raise line.error(f"{format_token(c)} is not an object of the index category")
            comps[c] = self._ref(self.ws.morphisms, ref, "morphism", line, col)
            names[c] = ref
        try:
            phi = NatTrans(X, Y, comps)
        except MalformedError as exc:
            raise head.error(f"natrans {name}: {exc}") from None
        self.ws.natrans[name] = phi
        self.ws.refs[("natrans", name)] = (m.group("src"), m.group("tgt"),
                                           {c: names[c] for c in X.category.objects})

    def _square(self, m, record):
        head = record[0]
        name = m.group("name")
        self._claim(self.ws.squares, name, "square", head)
        legs = {}
        for line in record[1:]:
            sm = _SQUARE_LEG.match(line.text.strip())
            if not sm:
                raise line.error("expected 'left|right|top|bottom = <morphism>'")
            key = sm.group("key")
            if key in legs:
                raise line.error(f"{key} bound twice")
            col = line.text.find(sm.group("rhs")) + 1
            legs[key] = (sm.group("rhs"), self._ref(self.ws.morphisms, sm.group("rhs"), "morphism", line, col))
        missing = [k for k in ("left", "right", "top", "bottom") if k not in legs]
        if missing:
            raise head.error(f"square {name} is missing {', '.join(missing)}")
        try:
            sq = LiftingProblem(legs["left"][1], legs["right"][1], legs["top"][1], legs["bottom"][1])
        except PartsetError as exc:
            raise head.error(f"square {name}: {exc}") from None
        self.ws.squares[name] = sq
        self.ws.refs[("square", name)] = tuple(legs[k][0] for k in ("left", "right", "top", "bottom"))


def parse(text: str, source: Optional[str] = None) -> Workspace:
    """Parse a workspace; errors carry 1-based line and column numbers."""
    return _Parser(source).run(text)


def parse_file(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse(text, str(path))


def workspace_equal(a: Workspace, b: Workspace) -> bool:
    return (a.objects == b.objects and a.morphisms == b.morphisms and a.categories == b.categories
            and a.diagrams == b.diagrams and a.presheaves == b.presheaves and a.natrans == b.natrans
            and a.squares == b.squares and a.refs == b.refs
            and list(a.objects) == list(b.objects) and list(a.morphisms) == list(b.morphisms))
