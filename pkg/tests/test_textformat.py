from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from partset import MalformedError, Morphism, ParseError, PartitionedSet, discrete
from partset.textformat import Workspace, parse, parse_file, serialize, workspace_equal
from partset.tokens import Tag, format_token, parse_token

from strategies import morphisms, objects, tokens

HERE = Path(__file__).parent
GOLDEN = sorted((HERE / "golden").glob("*.txt"))
SAMPLES = sorted((HERE.parent / "samples").glob("*.txt"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.name)
def test_golden_files_are_canonical(path):
    text = path.read_text()
    assert serialize(parse_file(path)) == text


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_samples_round_trip(path):
    ws = parse_file(path)
    again = parse(serialize(ws))
    assert workspace_equal(ws, again)
    assert serialize(again) == serialize(ws)


nested = st.recursive(tokens, lambda inner: st.one_of(
    st.tuples(inner, inner),
    st.builds(lambda xs: Tag("t", *xs), st.lists(inner, max_size=2))), max_leaves=4)


@given(nested)
def test_token_syntax_round_trips(token):
    assert parse_token(format_token(token)) == token


@given(objects(4, elements=nested))
def test_object_round_trip(X):
    ws = Workspace()
    ws.add_object("X", X)
    assert parse(serialize(ws)).objects["X"] == X


@given(morphisms(3))
def test_morphism_round_trip(f):
    ws = Workspace()
    ws.add_object("A", f.source)
    ws.add_object("B", f.target)
    ws.add_morphism("f", f)
    back = parse(serialize(ws))
    assert back.morphisms["f"] == f
    assert workspace_equal(ws, back)


def test_builder_reuses_names():
    ws = Workspace()
    f = Morphism(discrete(1), discrete(2), [0])
    name = ws.add_morphism("f", f)
    assert name == "f"
    assert len(ws.objects) == 2
    assert ws.morphism_name(f) == "f"
    assert ws.morphism_name(Morphism(discrete(1), discrete(2), [1])) == "m"
    with pytest.raises(MalformedError, match="duplicate"):
        ws.add_morphism("f", f)


ERRORS = [
    ("object X\na a\n", 2, 3, "duplicate element a"),
    ("object X\na\n\nmorphism f : X -> Y\na |-> b\n", 4, 19, "unknown object 'Y'"),
    ("object X\na b\n\nobject Y\np\nq\n\nmorphism f : X -> Y\na |-> p\nb |-> q\n", 8, 1,
     "equivalent elements"),
    ("blah\n", 1, 1, "unknown record kind"),
    ("object X\n(a\n", 2, 3, "unterminated"),
    ("object X\na\n\nobject X\nb\n", 4, 8, "duplicate object name"),
    ("object X\na\n\nmorphism f : X -> X\n", 4, 1, "not total"),
    ("object X\na\n\nmorphism f : X -> X\nb |-> a\na |-> a\n", 5, 1, "not an element"),
]


@pytest.mark.parametrize("text,line,col,fragment", ERRORS)
def test_parse_errors_carry_positions(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse(text, "in.txt")
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert fragment in str(err)
    assert str(err).startswith(f"in.txt:{line}:{col}: ")


def test_comments_and_blank_lines_are_ignored():
    ws = parse("# header\n\n\nobject X\n# inside\na b\n\n\n")
    assert ws.objects["X"] == PartitionedSet([["a", "b"]])
