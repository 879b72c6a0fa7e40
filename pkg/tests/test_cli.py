import subprocess
import sys
from pathlib import Path

from partset.cli import main
from partset.textformat import parse

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
MAPS = str(SAMPLES / "maps.txt")
CX = str(SAMPLES / "counterexamples.txt")
SQUARE = str(SAMPLES / "square.txt")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_j(capsys):
    code, out, _ = run(capsys, "classify", MAPS, "j")
    assert code == 0
    assert "cofibration: true" in out and "weak_equivalence: true" in out
    assert "fibration: false" in out.splitlines()


def test_classify_i1(capsys):
    code, out, _ = run(capsys, "classify", MAPS, "i1")
    assert out.splitlines() == ["cofibration: true", "fibration: false", "weak_equivalence: false",
                                "mono: true", "epi: true", "iso: false", "effective_mono: false"]


def test_factor_outputs_parse_back(capsys):
    for via, names in (("cylinder", ("j", "p")), ("pathspace", ("i", "q"))):
        code, out, _ = run(capsys, "factor", MAPS, "collapse", "--via", via)
        assert code == 0
        ws = parse(out)
        first, second = (ws.morphisms[n] for n in names)
        assert first.then(second) == parse(open(MAPS).read()).morphisms["collapse"]


def test_lift_modes(capsys):
    for mode in ("constructive", "search"):
        code, out, _ = run(capsys, "lift", SQUARE, "S", "--mode", mode)
        assert code == 0
        lift = parse(out).morphisms["lift"]
        assert lift.table == ("y", "x")


def test_hopb_counterexample(capsys):
    code, out, _ = run(capsys, "hopb", CX, "f", "g")
    assert code == 0
    assert len(parse(out).objects["H"]) == 1
    code, out, _ = run(capsys, "compute", "pullback", CX, "f", "g")
    assert len(parse(out).objects["P"]) == 0


def test_hoeq_note(capsys):
    code, out, _ = run(capsys, "hoeq", CX, "ident", "const")
    assert code == 0
    assert "# equalizer inclusion acyclic: false" in out
    assert len(parse(out).objects["H"]) == 2


def test_limit_of_empty_diagram(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("category Nothing\nobjects:\n\ndiagram D over Nothing\n")
    code, out, _ = run(capsys, "compute", "limit", path, "D")
    assert code == 0
    assert parse(out).objects["L"].elements == ((),)
    code, out, _ = run(capsys, "compute", "colimit", path, "D")
    assert len(parse(out).objects["Q"]) == 0


def test_effective_mono_witness(capsys):
    code, out, _ = run(capsys, "effective-mono", MAPS, "j")
    assert out.startswith("effective_mono: true")
    ws = parse(out.split("\n", 1)[1])
    assert set(ws.morphisms) == {"u", "v"}
    code, out, _ = run(capsys, "effective-mono", MAPS, "i1")
    assert out.strip() == "effective_mono: false"


def test_presheaf_fibrancy(capsys):
    assert run(capsys, "presheaf", "fibrancy", CX, "Same")[1].strip() == "fibrant: true"
    assert run(capsys, "presheaf", "fibrancy", CX, "Diff")[1].strip() == "fibrant: false"


def test_hom_listing(capsys):
    code, out, _ = run(capsys, "hom", MAPS, "P", "I")
    assert code == 0
    assert "# map(0) = class 0: 0 |-> 0" in out
    assert len(parse(out).objects["Hom"].blocks) == 1


def test_homotopy_inverse(capsys):
    code, out, _ = run(capsys, "homotopy-inverse", MAPS, "idI")
    assert code == 0 and "morphism inverse : I -> I" in out
    code, _, err = run(capsys, "homotopy-inverse", MAPS, "collapse")
    assert code == 2 and "not a weak equivalence" in err


def test_malformed_file_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("object X\na b\n\nobject Y\np\nq\n\nmorphism f : X -> Y\na |-> p\nb |-> q\n")
    code, _, err = run(capsys, "classify", path, "f")
    assert code == 2
    assert f"{path}:8:1:" in err


def test_usage_errors(capsys):
    assert run(capsys, "classify", MAPS, "nope")[0] == 2
    assert run(capsys, "classify", "/nonexistent/file.txt", "f")[0] == 2
    assert run(capsys, "compute", "pushout", MAPS, "j")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_candidate_bound(capsys):
    code, _, err = run(capsys, "--max-candidates", "1", "lift", SQUARE, "S", "--mode", "search")
    assert code == 2 and "exceeds the bound" in err


def test_dot_output(capsys):
    code, out, _ = run(capsys, "factor", MAPS, "j", "--dot")
    assert code == 0
    assert out.startswith('digraph "result" {') and out.rstrip().endswith("}")
    assert '"cluster_M"' in out and "->" in out


def test_check_is_deterministic(capsys):
    first = run(capsys, "check", "--suite", "effective-mono", "--no-timing")
    second = run(capsys, "check", "--suite", "effective-mono", "--no-timing")
    assert first == second
    assert first[0] == 0
    assert all(line.startswith("PASS ") for line in first[1].splitlines())


def test_check_cap_refusal(capsys):
    code, _, err = run(capsys, "check", "--suite", "presheaf", "--max-size", "3")
    assert code == 2 and "PARTSET_CHECK_PRESHEAF_CAP" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "partset", "classify", MAPS, "i0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "cofibration: true"
