"""Element tokens: a total order over heterogeneous identifiers and their text syntax.

Grammar of a token (no whitespace inside)::

    token  := int | name | string | tuple | tagged
    int    := -?[0-9]+
    name   := [A-Za-z_][A-Za-z0-9_']*
    string := JSON-style double-quoted string
    tuple  := "(" ")" | "(" token "," ")" | "(" token ("," token)+ ")"
    tagged := name "(" [token ("," token)*] ")"
"""

import json
import re
from typing import Any, Iterable, List, Tuple

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"-?[0-9]+")


class Tag:
    """A named token such as ``in(0,a)`` or ``inXI(x,1)``; used for disjoint unions."""

    __slots__ = ("name", "args", "_hash")

    def __init__(self, name: str, *args):
        if not _NAME.fullmatch(name):
            raise ValueError(f"invalid tag name {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", tuple(args))
        object.__setattr__(self, "_hash", hash(("Tag", name, self.args)))

    def __setattr__(self, key, value):
        raise AttributeError("Tag is immutable")

    def __eq__(self, other):
        if not isinstance(other, Tag):
            return NotImplemented
        return self.name == other.name and self.args == other.args

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return format_token(self)

    def __reduce__(self):
        return (Tag, (self.name,) + self.args)


def order_key(token: Any):
    """Sort key giving a total order on every supported token type.

    Ranks: integers < strings < tuples < tags < structured values (morphisms,
    natural transformations), which provide their own ``sort_key``.
    """
    if isinstance(token, bool):
        return (0, int(token))
    if isinstance(token, int):
        return (0, token)
    if isinstance(token, str):
        return (1, token)
    if isinstance(token, tuple):
        return (2, tuple(order_key(t) for t in token))
    if isinstance(token, Tag):
        return (3, token.name, tuple(order_key(t) for t in token.args))
    sort_key = getattr(token, "sort_key", None)
    if sort_key is not None:
        return (4, type(token).__name__, sort_key())
    raise TypeError(f"unsupported element token: {token!r}")


def sort_tokens(tokens: Iterable[Any]) -> List[Any]:
    return sorted(tokens, key=order_key)


def format_token(token: Any) -> str:
    if isinstance(token, bool):
        return str(int(token))
    if isinstance(token, int):
        return str(token)
    if isinstance(token, str):
        if _NAME.fullmatch(token):
            return token
        return json.dumps(token, ensure_ascii=False)
    if isinstance(token, tuple):
        inner = ",".join(format_token(t) for t in token)
        return f"({inner},)" if len(token) == 1 else f"({inner})"
    if isinstance(token, Tag):
        return f"{token.name}({','.join(format_token(t) for t in token.args)})"
    fmt = getattr(token, "token_text", None)
    if fmt is not None:
        return fmt()
    raise TypeError(f"unsupported element token: {token!r}")


class TokenSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


def parse_token(text: str) -> Any:
    value, pos = _parse(text, 0)
    if pos != len(text):
        raise TokenSyntaxError(f"unexpected {text[pos]!r} after token", pos)
    return value


def _parse(text: str, pos: int) -> Tuple[Any, int]:
    if pos >= len(text):
        raise TokenSyntaxError("expected a token", pos)
    ch = text[pos]
    if ch == '"':
        return _parse_string(text, pos)
    if ch == "(":
        items, pos, trailing = _parse_items(text, pos)
        if len(items) == 1 and not trailing:
            raise TokenSyntaxError("a 1-tuple needs a trailing comma", pos - 1)
        return tuple(items), pos
    m = _INT.match(text, pos)
    if m:
        end = m.end()
        if end < len(text) and (text[end].isalnum() or text[end] == "_"):
            raise TokenSyntaxError("malformed integer", pos)
        return int(m.group()), end
    m = _NAME.match(text, pos)
    if m:
        name, end = m.group(), m.end()
        if end < len(text) and text[end] == "(":
            items, end, trailing = _parse_items(text, end)
            if trailing:
                raise TokenSyntaxError("trailing comma in tagged token", end - 1)
            return Tag(name, *items), end
        return name, end
    raise TokenSyntaxError(f"unexpected character {ch!r}", pos)


def _parse_items(text: str, pos: int):
    assert text[pos] == "("
    pos += 1
    items = []
    trailing = False
    if pos < len(text) and text[pos] == ")":
        return items, pos + 1, False
    while True:
        value, pos = _parse(text, pos)
        items.append(value)
        if pos >= len(text):
            raise TokenSyntaxError("unterminated parenthesis", pos)
        if text[pos] == ",":
            pos += 1
            if pos < len(text) and text[pos] == ")":
                trailing = True
                return items, pos + 1, trailing
            continue
        if text[pos] == ")":
            return items, pos + 1, trailing
        raise TokenSyntaxError(f"expected ',' or ')', got {text[pos]!r}", pos)


def _parse_string(text: str, pos: int) -> Tuple[str, int]:
    end = pos + 1
    while end < len(text):
        if text[end] == "\\":
            end += 2
            continue
        if text[end] == '"':
            try:
                return json.loads(text[pos:end + 1]), end + 1
            except json.JSONDecodeError as exc:
                raise TokenSyntaxError(f"bad string literal: {exc.msg}", pos) from None
        end += 1
    raise TokenSyntaxError("unterminated string", pos)
