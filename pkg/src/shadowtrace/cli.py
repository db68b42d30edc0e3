"""Command line front end.

Input documents are line oriented:

    # comment
    vertex a
    simplex a b c        maximal face; the closure is computed
    map a -> b           vertex image
    path a b : a c b     image path of the edge {a, b}, for degree-style
                         maps on graphs; endpoints must match the images
    pi1 free-abelian 2   or: pi1 finite 8, pi1 auto
    basepoint a
    basepath a b c       path from the basepoint to its image

Vertices may also be introduced by the simplex lines themselves.  Integer
tokens become integer labels, everything else stays a string.

Commands: lefschetz, reidemeister, fuller, obstruction, selftest.  Output
is a human table by default; --format kv emits one `key = value` pair per
line and is byte-stable for a fixed input and seed.  Exit codes: 0 ok,
1 verification failure, 2 input error, 3 budget exceeded.
"""

import argparse
import re
import sys
import time

from .bimodules import UnsupportedStructure
from .complexes import (InputError, SimplicialComplex, SimplicialSelfMap,
                        iterate, lefschetz)
from .covers import pi1_presentation, reidemeister
from .fuller import (BudgetError, fixed_subcomplex_check, fuller_complex,
                     fuller_lefschetz_check, fuller_reidemeister_check,
                     obstruction_table)
from . import selftest as selftest_mod


class ParseError(ValueError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, message))


class InputDocument:
    """Parsed complex, map, and group bookkeeping from one text file."""

    def __init__(self):
        self.vertices = []
        self.simplices = []
        self.vertex_map = {}
        self.edge_paths = {}
        self.declare = None
        self.expect = None
        self.basepoint = None
        self.basepath = None
        self.name = ""

    def build_complex(self):
        return SimplicialComplex(self.vertices, self.simplices,
                                 name=self.name)

    def build_map(self, x):
        if not self.vertex_map:
            raise InputError("the document has no map lines")
        return SimplicialSelfMap(x, self.vertex_map,
                                 edge_paths=self.edge_paths or None,
                                 name="input map")

    def presentation(self, x):
        return pi1_presentation(x, basepoint=self.basepoint,
                                declare=self.declare, expect=self.expect)


def _label(tok):
    if re.fullmatch(r"-?\d+", tok):
        return int(tok)
    return tok


def parse_document(text, name="input"):
    doc = InputDocument()
    doc.name = name
    known = set()

    def add_vertex(lbl):
        if lbl not in known:
            known.add(lbl)
            doc.vertices.append(lbl)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue
        col0, head = toks[0]
        args = toks[1:]

        def need(k, what):
            if len(args) < k:
                at = args[-1][0] if args else col0
                raise ParseError(ln, at, "%s expects %s" % (head, what))

        if head == "vertex":
            need(1, "a label")
            add_vertex(_label(args[0][1]))
        elif head == "simplex":
            need(1, "at least one vertex")
            labels = tuple(_label(t) for _, t in args)
            for lbl in labels:
                add_vertex(lbl)
            doc.simplices.append(labels)
        elif head == "map":
            need(3, "`map v -> w`")
            if args[1][1] != "->":
                raise ParseError(ln, args[1][0], "expected `->`")
            src = _label(args[0][1])
            dst = _label(args[2][1])
            for lbl, col in ((src, args[0][0]), (dst, args[2][0])):
                if lbl not in known:
                    raise ParseError(ln, col, "unknown vertex %r" % (lbl,))
            if src in doc.vertex_map:
                raise ParseError(ln, args[0][0],
                                 "vertex %r mapped twice" % (src,))
            doc.vertex_map[src] = dst
        elif head == "path":
            need(4, "`path u v : w0 w1 ...`")
            u = _label(args[0][1])
            v = _label(args[1][1])
            if args[2][1] != ":":
                raise ParseError(ln, args[2][0], "expected `:`")
            for lbl, col in ((u, args[0][0]), (v, args[1][0])):
                if lbl not in known:
                    raise ParseError(ln, col, "unknown vertex %r" % (lbl,))
            walk = [_label(t) for _, t in args[3:]]
            for (col, t), lbl in zip(args[3:], walk):
                if lbl not in known:
                    raise ParseError(ln, col, "unknown vertex %r" % (lbl,))
            doc.edge_paths[(u, v)] = walk
        elif head == "pi1":
            need(1, "`auto`, `free-abelian N`, or `finite N`")
            kind = args[0][1]
            if kind == "auto":
                doc.declare, doc.expect = None, None
            elif kind in ("free-abelian", "finite"):
                doc.declare = kind
                if len(args) > 1:
                    if not re.fullmatch(r"\d+", args[1][1]):
                        raise ParseError(ln, args[1][0],
                                         "expected a number")
                    doc.expect = int(args[1][1])
            else:
                raise ParseError(ln, args[0][0],
                                 "unknown pi1 declaration %r" % (kind,))
        elif head == "basepoint":
            need(1, "a vertex")
            lbl = _label(args[0][1])
            if lbl not in known:
                raise ParseError(ln, args[0][0], "unknown vertex %r" % (lbl,))
            doc.basepoint = lbl
        elif head == "basepath":
            need(1, "at least one vertex")
            walk = [_label(t) for _, t in args]
            for (col, t), lbl in zip(args, walk):
                if lbl not in known:
                    raise ParseError(ln, col, "unknown vertex %r" % (lbl,))
            doc.basepath = walk
        else:
            raise ParseError(ln, col0, "unknown directive %r" % (head,))
    return doc


def serialize_document(doc):
    """The document back as text; parse(serialize(d)) builds the same
    complex and map."""
    lines = []
    for v in doc.vertices:
        lines.append("vertex %s" % (v,))
    for s in doc.simplices:
        lines.append("simplex %s" % " ".join(str(v) for v in s))
    for u in doc.vertices:
        if u in doc.vertex_map:
            lines.append("map %s -> %s" % (u, doc.vertex_map[u]))
    for (u, v), walk in doc.edge_paths.items():
        lines.append("path %s %s : %s"
                     % (u, v, " ".join(str(w) for w in walk)))
    if doc.declare is not None:
        tail = "" if doc.expect is None else " %d" % doc.expect
        lines.append("pi1 %s%s" % (doc.declare, tail))
    if doc.basepoint is not None:
        lines.append("basepoint %s" % (doc.basepoint,))
    if doc.basepath is not None:
        lines.append("basepath %s" % " ".join(str(v) for v in doc.basepath))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports


class Report:
    """Command output: ordered key-value pairs plus human lines."""

    def __init__(self, command):
        self.command = command
        self.pairs = [("command", command)]
        self.human = []
        self.exit_code = 0

    def kv(self, key, value):
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.pairs.append((key, str(value)))

    def line(self, text):
        self.human.append(text)

    def render(self, fmt):
        if fmt == "kv":
            return "\n".join("%s = %s" % (k, v) for k, v in self.pairs)
        return "\n".join(self.human)


def format_class_sum(fs):
    """Deterministic serialization of a class sum; classes print through
    their canonical representatives, in representative order."""
    items = [(k.sort_key(), repr(k), c) for k, c in fs.terms.items() if c]
    if not items:
        return "0"
    items.sort(key=lambda t: (t[0], t[1]))
    return " + ".join("%d*%s" % (c, rep) for _key, rep, c in items)


# ---------------------------------------------------------------------------
# commands


def cmd_lefschetz(doc, power=1):
    x = doc.build_complex()
    f = doc.build_map(x)
    g = iterate(f, power) if power != 1 else f
    val = lefschetz(g)
    rep = Report("lefschetz")
    rep.kv("power", power)
    rep.kv("lefschetz", val)
    rep.line("L(f^%d) = %d" % (power, val))
    return rep

def cmd_reidemeister(doc, power=1):
    x = doc.build_complex()
    f = doc.build_map(x)
    p = doc.presentation(x)
    r = reidemeister(f, p, basepath=doc.basepath, power=power)
    val = lefschetz(iterate(f, power) if power != 1 else f)
    rep = Report("reidemeister")
    rep.kv("power", power)
    rep.kv("reidemeister", format_class_sum(r))
    rep.kv("classes", sum(1 for c in r.terms.values() if c))
    rep.kv("augmentation", r.augmentation())
    rep.kv("lefschetz", val)
    rep.line("R(f^%d) = %s  (augmentation %d)"
             % (power, format_class_sum(r), r.augmentation()))
    rep.line("L(f^%d) = %d" % (power, val))
    return rep


def cmd_fuller(doc, n=1, check=False):
    x = doc.build_complex()
    f = doc.build_map(x)
    t0 = time.time()
    pd = fuller_complex(x, f, n)
    rep = Report("fuller")
    rep.kv("n", n)
    rep.kv("route", pd.route)
    rep.kv("subdivided", pd.subdivided)
    if pd.complex is not None:
        rep.kv("product_simplices", pd.complex.total_simplices())
    else:
        rep.kv("product_simplices", "none")
    rep.kv("has_map", pd.fuller_map is not None)
    rep.line("order-%d cyclic construction on %s" % (n, x.name or "input"))
    rep.line("  route: %s%s" % (pd.route,
                                " (subdivided once)" if pd.subdivided
                                else ""))
    if pd.complex is not None:
        rep.line("  product: %d simplices total"
                 % pd.complex.total_simplices())
    for note in pd.notes:
        rep.line("  note: %s" % note)
    if check:
        okl = fuller_lefschetz_check(x, f, n)
        rep.kv("lefschetz_check", okl)
        rep.line("  trace check: %s" % ("pass" if okl else "FAIL"))
        okr = fuller_reidemeister_check(x, f, n, declare=doc.declare,
                                        expect=doc.expect)
        rep.kv("reidemeister_check", okr)
        rep.line("  class sum check: %s" % ("pass" if okr else "FAIL"))
        oks = fixed_subcomplex_check(x, f, n, declare=doc.declare,
                                     expect=doc.expect)
        rep.kv("fixed_subcomplex_check", oks)
        rep.line("  fixed subcomplex check (all d | %d): %s"
                 % (n, "pass" if oks else "FAIL"))
        ok = okl and okr and oks
        rep.kv("ok", ok)
        if not ok:
            rep.exit_code = 1
    rep.line("  (%.2fs)" % (time.time() - t0))
    return rep


def cmd_obstruction(doc, n=1):
    x = doc.build_complex()
    f = doc.build_map(x)
    t0 = time.time()
    table = obstruction_table(x, f, n, declare=doc.declare,
                              expect=doc.expect)
    rep = Report("obstruction")
    rep.kv("n", n)
    rep.line("periodic point obstructions up to order %d on %s"
             % (n, x.name or "input"))
    rep.line("  %-4s %-10s %-28s %-8s %s"
             % ("k", "L(f^k)", "R(f^k)", "verdict", "route"))
    for row in table["rows"]:
        k = row["k"]
        rep.kv("k%d.lefschetz" % k, row["lefschetz"])
        rep.kv("k%d.reidemeister" % k, format_class_sum(row["reidemeister"]))
        rep.kv("k%d.nonzero" % k, row["nonzero"])
        rep.kv("k%d.recovered_match" % k, row["recovered_match"])
        rep.kv("k%d.route" % k, row["route"])
        rep.line("  %-4d %-10d %-28s %-8s %s"
                 % (k, row["lefschetz"],
                    format_class_sum(row["reidemeister"]),
                    "nonzero" if row["nonzero"] else "zero",
                    row["route"]
                    + ("" if row["recovered_match"] else " MISMATCH")))
        if not row["recovered_match"]:
            rep.exit_code = 1
    rep.kv("caveat", table["caveat"])
    rep.line("caveat: %s" % table["caveat"])
    rep.line("  (%.2fs)" % (time.time() - t0))
    return rep


def cmd_selftest(seed=0, size="full"):
    records = selftest_mod.run_suites(seed=seed, size=size)
    rep = Report("selftest")
    rep.pairs = []
    for ln in selftest_mod.kv_lines(records, seed, size):
        k, _, v = ln.partition(" = ")
        rep.pairs.append((k, v))
    rep.human = selftest_mod.human_lines(records, seed, size)
    if any(fails for _name, _cases, fails, _dt in records):
        rep.exit_code = 1
    return rep


# ---------------------------------------------------------------------------
# entry point


def _read(path):
    if path == "-":
        return sys.stdin.read(), "stdin"
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read(), path


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="shadowtrace",
        description="exact fixed point invariants of simplicial self-maps")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="input document, or - for stdin")
        p.add_argument("--format", choices=("human", "kv"),
                       default="human")

    p = sub.add_parser("lefschetz", help="Lefschetz number of f^k")
    common(p)
    p.add_argument("--power", type=int, default=1, metavar="k")

    p = sub.add_parser("reidemeister",
                       help="class sum of f^k over twisted conjugacy")
    common(p)
    p.add_argument("--power", type=int, default=1, metavar="k")

    p = sub.add_parser("fuller",
                       help="order-n cyclic construction and its checks")
    common(p)
    p.add_argument("--n", type=int, default=1, metavar="N")
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("obstruction",
                       help="table of L(f^k), R(f^k) for k | N")
    common(p)
    p.add_argument("--n", type=int, default=1, metavar="N")

    p = sub.add_parser("selftest", help="seeded property suites")
    common(p, with_file=False)
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--size", choices=selftest_mod.SIZES, default="full",
                   metavar="budget")
    return ap


def main(argv=None):
    ap = _build_parser()
    ns = ap.parse_args(argv)
    try:
        if ns.cmd == "selftest":
            rep = cmd_selftest(seed=ns.seed, size=ns.size)
        else:
            text, name = _read(ns.file)
            doc = parse_document(text, name=name)
            if ns.cmd == "lefschetz":
                rep = cmd_lefschetz(doc, power=ns.power)
            elif ns.cmd == "reidemeister":
                rep = cmd_reidemeister(doc, power=ns.power)
            elif ns.cmd == "fuller":
                rep = cmd_fuller(doc, n=ns.n, check=ns.check)
            else:
                rep = cmd_obstruction(doc, n=ns.n)
    except ParseError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except BudgetError as e:
        print("budget: %s" % e, file=sys.stderr)
        return 3
    except UnsupportedStructure as e:
        print("input error: %s" % e, file=sys.stderr)
        print("hint: add a `pi1 free-abelian N` or `pi1 finite N` line "
              "when the fundamental group is known", file=sys.stderr)
        return 2
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    print(rep.render(ns.format))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
