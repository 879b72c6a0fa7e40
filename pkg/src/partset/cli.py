"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage, parse or bound errors.
"""

import argparse
import os
import sys
from typing import List, Optional

from . import dot
from .categories import Diagram, NatTrans
from .config import ENV_PREFIX
from .enrichment import hom_object
from .errors import PartsetError
from .factorization import cylinder_factorization, pathspace_factorization
from .harness import MUTATIONS, SUITES, mutation, replay, run_suite
from .homotopy import (equalizer_comparison, equalizer_witness, homotopy_equalizer, homotopy_inverse,
                       homotopy_pullback, is_effective_mono)
from .lifting import solve_lift_constructive, solve_lift_search
from .limits import coequalizer, colimit, equalizer, limit, pullback, pushout
from .morphisms import Morphism, classify
from .objects import PartitionedSet
from .presheaves import (classify_pointwise, d_diagram_fibrancy, power_object, presheaf_hom,
                         presheaf_homotopy_equalizer, presheaf_sm7_map)
from .textformat import Workspace, parse_file, serialize
from .tokens import format_token


class UsageError(Exception):
    pass


def _load(path: str) -> Workspace:
    return parse_file(path)


def _get(ws: Workspace, table: str, name: str, kind: str):
    values = getattr(ws, table)
    if name not in values:
        raise UsageError(f"no {kind} named {name!r}")
    return values[name]


def _morphism(ws, name) -> Morphism:
    return _get(ws, "morphisms", name, "morphism")


def _object(ws, name) -> PartitionedSet:
    return _get(ws, "objects", name, "object")


def _diagram(ws, name) -> Diagram:
    if name in ws.diagrams:
        return ws.diagrams[name]
    if name in ws.presheaves:
        return ws.presheaves[name]
    raise UsageError(f"no diagram or presheaf named {name!r}")


def _natrans(ws, name) -> NatTrans:
    return _get(ws, "natrans", name, "natrans")


class _Output:
    """Collects named results and prints them as a workspace or as DOT."""

    def __init__(self, as_dot: bool):
        self.ws = Workspace()
        self.as_dot = as_dot
        self.notes: List[str] = []

    def obj(self, name, X):
        self.ws.add_object(name, X)
        return name

    def mor(self, name, m, src=None, tgt=None):
        self.ws.add_morphism(name, m, src, tgt)

    def note(self, text):
        self.notes.append(text)

    def emit(self):
        if self.as_dot:
            sys.stdout.write(dot.workspace_to_dot(self.ws, "result"))
            return
        for n in self.notes:
            print(f"# {n}")
        sys.stdout.write(serialize(self.ws))


# commands

def cmd_classify(args):
    ws = _load(args.file)
    print(classify(_morphism(ws, args.morphism)).render())
    return 0


def cmd_factor(args):
    ws = _load(args.file)
    f = _morphism(ws, args.morphism)
    fac = cylinder_factorization(f) if args.via == "cylinder" else pathspace_factorization(f)
    out = _Output(args.dot)
    src = out.obj("X", f.source)
    tgt = out.obj("Y", f.target) if f.target != f.source else src
    out.obj("M", fac.middle)
    first, second = ("j", "p") if args.via == "cylinder" else ("i", "q")
    out.mor(first, fac.first, src, "M")
    out.mor(second, fac.second, "M", tgt)
    out.note(f"{first}: {' '.join(classify(fac.first).flags()) or 'none'}")
    out.note(f"{second}: {' '.join(classify(fac.second).flags()) or 'none'}")
    out.emit()
    return 0


def cmd_lift(args):
    ws = _load(args.file)
    sq = _get(ws, "squares", args.square, "square")
    if args.mode == "constructive":
        s = solve_lift_constructive(sq)
    else:
        s = solve_lift_search(sq, args.max_candidates)
    if s is None:
        print("none")
        return 0
    left, right = ws.refs[("square", args.square)][:2]
    src = ws.refs[("morphism", left)][1]
    tgt = ws.refs[("morphism", right)][0]
    out = Workspace()
    out.add_object(src, s.source)
    if tgt != src:
        out.add_object(tgt, s.target)
    out.add_morphism("lift", s, src, tgt)
    sys.stdout.write(serialize(out))
    return 0


def _two_maps(ws, names, what):
    if len(names) != 2:
        raise UsageError(f"compute {what} needs two morphism names")
    return _morphism(ws, names[0]), _morphism(ws, names[1])


def cmd_compute(args):
    ws = _load(args.file)
    out = _Output(args.dot)
    what, names = args.what, args.names
    if what in ("limit", "colimit"):
        if len(names) != 1:
            raise UsageError(f"compute {what} needs one diagram name")
        D = _diagram(ws, names[0])
        cone = limit(D) if what == "limit" else colimit(D)
        apex = out.obj("L" if what == "limit" else "Q", cone.apex)
        for c, leg in cone.legs.items():
            obj = out.obj(f"D_{_slug(c)}", leg.target if what == "limit" else leg.source)
            if what == "limit":
                out.mor(f"leg_{_slug(c)}", leg, apex, obj)
            else:
                out.mor(f"leg_{_slug(c)}", leg, obj, apex)
    elif what in ("equalizer", "hoeq"):
        f, g = _two_maps(ws, names, what)
        E, incl = equalizer(f, g) if what == "equalizer" else homotopy_equalizer(f, g)
        out.obj("A", f.source)
        out.obj("E" if what == "equalizer" else "H", E)
        out.mor("incl", incl, "E" if what == "equalizer" else "H", "A")
        if what == "hoeq":
            res = equalizer_comparison(f, g)
            out.note(f"equalizer inclusion acyclic: {str(res.inclusion_acyclic).lower()}")
    elif what == "coequalizer":
        f, g = _two_maps(ws, names, what)
        Q, proj = coequalizer(f, g)
        out.obj("X", f.target)
        out.obj("Q", Q)
        out.mor("proj", proj, "X", "Q")
    elif what == "pushout":
        f, h = _two_maps(ws, names, what)
        D, g, k = pushout(f, h)
        b = out.obj("B", h.target)
        c = out.obj("C", f.target) if f.target != h.target else b
        out.obj("D", D)
        out.mor("g", g, b, "D")
        out.mor("k", k, c, "D")
    elif what in ("pullback", "hopb"):
        g, k = _two_maps(ws, names, what)
        if what == "pullback":
            A, h, f = pullback(g, k)
        else:
            A, h, f = homotopy_pullback(g, k)
        b = out.obj("B", g.source)
        c = out.obj("C", k.source) if k.source != g.source else b
        name = "P" if what == "pullback" else "H"
        out.obj(name, A)
        out.mor("pB", h, name, b)
        out.mor("pC", f, name, c)
    elif what == "hom":
        if len(names) != 2:
            raise UsageError("compute hom needs two object names")
        return _print_hom(_object(ws, names[0]), _object(ws, names[1]), out)
    elif what == "power":
        if len(names) != 2:
            raise UsageError("compute power needs a diagram (or object) name and an object name")
        K = _object(ws, names[1])
        if names[0] in ws.objects:
            out.obj("P", hom_object(K, ws.objects[names[0]]))
        else:
            P = power_object(_diagram(ws, names[0]), K)
            out.ws.add_diagram("P", P)
    else:
        raise UsageError(f"unknown computation {what!r}")
    out.emit()
    return 0


def _slug(c) -> str:
    from .textformat import _slug as slug
    return slug(c)


def _print_hom(X, Y, out: "_Output"):
    H = hom_object(X, Y)
    out.obj("Hom", H)
    if out.as_dot:
        out.emit()
        return 0
    out.emit()
    for k, f in enumerate(H.elements):
        pairs = ", ".join(f"{format_token(x)} |-> {format_token(y)}" for x, y in zip(X.elements, f.table))
        print(f"# {format_token(f)} = class {H.block_index(f)}: {pairs}")
    return 0


def cmd_hom(args):
    ws = _load(args.file)
    return _print_hom(_object(ws, args.X), _object(ws, args.Y), _Output(args.dot))


def cmd_hoeq(args):
    args.what, args.names = "hoeq", [args.f, args.g]
    return cmd_compute(args)


def cmd_hopb(args):
    args.what, args.names = "hopb", [args.f, args.g]
    return cmd_compute(args)


def cmd_effective_mono(args):
    ws = _load(args.file)
    m = _morphism(ws, args.morphism)
    eff = is_effective_mono(m)
    print(f"effective_mono: {str(eff).lower()}")
    if eff:
        u, v = equalizer_witness(m)
        out = Workspace()
        out.add_object("B", m.target)
        out.add_object("C", u.target)
        out.add_morphism("u", u, "B", "C")
        out.add_morphism("v", v, "B", "C")
        sys.stdout.write("\n" + serialize(out))
    return 0


def cmd_homotopy_inverse(args):
    ws = _load(args.file)
    f = _morphism(ws, args.morphism)
    g = homotopy_inverse(f)
    src, tgt = ws.refs[("morphism", args.morphism)]
    out = Workspace()
    out.add_object(src, f.source)
    if tgt != src:
        out.add_object(tgt, f.target)
    out.add_morphism("inverse", g, tgt, src)
    sys.stdout.write(serialize(out))
    return 0


def cmd_presheaf(args):
    ws = _load(args.file)
    if args.action == "classify":
        _need(args.names, 1, "presheaf classify NATRANS")
        print(classify_pointwise(_natrans(ws, args.names[0])).render())
    elif args.action == "holim":
        _need(args.names, 2, "presheaf holim PHI PSI")
        H, incl = presheaf_homotopy_equalizer(_natrans(ws, args.names[0]), _natrans(ws, args.names[1]))
        out = Workspace()
        out.add_natrans("incl", incl)
        sys.stdout.write(serialize(out))
    elif args.action == "hom":
        _need(args.names, 2, "presheaf hom X Y")
        H = presheaf_hom(_diagram(ws, args.names[0]), _diagram(ws, args.names[1]))
        out = Workspace()
        out.add_object("Hom", H)
        sys.stdout.write(serialize(out))
    elif args.action == "sm7":
        _need(args.names, 2, "presheaf sm7 J P")
        res = presheaf_sm7_map(_natrans(ws, args.names[0]), _natrans(ws, args.names[1]))
        print(res.report.render())
        print(f"expected_acyclic: {str(res.expect_acyclic).lower()}")
    elif args.action == "fibrancy":
        _need(args.names, 1, "presheaf fibrancy DIAGRAM")
        D = _diagram(ws, args.names[0])
        print(f"fibrant: {str(d_diagram_fibrancy(D)).lower()}")
    return 0


def _need(names, n, usage):
    if len(names) != n:
        raise UsageError(f"usage: {usage}")


def cmd_check(args):
    context = mutation(args.mutate) if args.mutate else _null()
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            text = fh.read()
        with context:
            report = replay(text, args.replay)
        print(report.render(timing=not args.no_timing))
        return 0 if report.passed else 1
    failed = False
    with context:
        for report in run_suite(args.suite, args.max_size, args.seed):
            print(report.render(timing=not args.no_timing), flush=True)
            if not report.passed:
                failed = True
                if args.counterexample_dir:
                    os.makedirs(args.counterexample_dir, exist_ok=True)
                    path = os.path.join(args.counterexample_dir, report.check + ".txt")
                    with open(path, "w", encoding="utf-8") as fh:
                        fh.write(report.counterexample)
    return 1 if failed else 0


class _null:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partset", description=__doc__)
    parser.add_argument("--max-candidates", type=int, default=None,
                        help="bound on brute-force candidate counts (default 10^6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the classification flags of a morphism")
    p.add_argument("file")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("factor", help="factor a morphism through a mapping cylinder or path space")
    p.add_argument("file")
    p.add_argument("morphism")
    p.add_argument("--via", choices=("cylinder", "pathspace"), default="cylinder")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("lift", help="solve a lifting square")
    p.add_argument("file")
    p.add_argument("square")
    p.add_argument("--mode", choices=("constructive", "search"), default="constructive")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("compute", help="compute a (homotopy) limit, colimit, Hom or power object")
    p.add_argument("what", choices=("limit", "colimit", "pushout", "pullback", "equalizer",
                                    "coequalizer", "hoeq", "hopb", "hom", "power"))
    p.add_argument("file")
    p.add_argument("names", nargs="*")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("hom", help="print Hom(X, Y) with each element's table")
    p.add_argument("file")
    p.add_argument("X")
    p.add_argument("Y")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_hom)

    for name, func in (("hoeq", cmd_hoeq), ("hopb", cmd_hopb)):
        p = sub.add_parser(name, help=f"shorthand for 'compute {name}'")
        p.add_argument("file")
        p.add_argument("f")
        p.add_argument("g")
        p.add_argument("--dot", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("effective-mono", help="decide whether a monomorphism is effective")
    p.add_argument("file")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_effective_mono)

    p = sub.add_parser("homotopy-inverse", help="a homotopy inverse of a weak equivalence")
    p.add_argument("file")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_homotopy_inverse)

    p = sub.add_parser("presheaf", help="operations on presheaves and diagrams")
    p.add_argument("action", choices=("classify", "holim", "hom", "sm7", "fibrancy"))
    p.add_argument("file")
    p.add_argument("names", nargs="*")
    p.set_defaults(func=cmd_presheaf)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-size", type=int, default=None,
                   help="size bound for enumeration (default 3; sm7 and presheaf 2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true", help="omit durations from reports")
    p.add_argument("--replay", metavar="FILE", help="re-run a saved counterexample")
    p.add_argument("--counterexample-dir", metavar="DIR", help="write failing instances here")
    p.add_argument("--mutate", choices=sorted(MUTATIONS), help="inject a known bug (self-test)")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    key = ENV_PREFIX + "MAX_CANDIDATES"
    saved = os.environ.get(key)
    if args.max_candidates is not None:
        os.environ[key] = str(args.max_candidates)
    try:
        return args.func(args)
    except (UsageError, PartsetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if saved is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = saved


if __name__ == "__main__":
    sys.exit(main())
