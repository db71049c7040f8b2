"""Command-line front end.

Results go to stdout; diagnostics go to stderr.  Exit status is 0 on
success (or a positive verdict), 1 on a negative verdict and 2 on input errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from pathlib import Path

from . import classify as cls
from .gf2core import GlMatrix, char_name, check_rank
from .labgraph import (
    CharacteristicData,
    GraphStructureError,
    build_from_data,
    check_structure,
    coloring_polynomial,
    is_geometric,
    parse_graph,
    print_graph,
    product,
    property_P,
    quotient_matrix,
    restrict_generic,
    rp2xrp2_graph,
    rpk_graph,
    small_cover_graph,
    validate,
)
from .localization import default_family, integrality_test
from .realizability import is_realizable
from .repalgebra import aut_orbit
from .textio import ParseError, parse_char, parse_poly, print_poly

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Log:
    verbose = False

    def __call__(self, message: str) -> None:
        stamp = time.strftime("%H:%M:%S ") if self.verbose else ""
        print(f"{stamp}{message}", file=sys.stderr, flush=True)


log = _Log()


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _poly(path: str, k: int):
    try:
        return parse_poly(_read(path), k)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------- subcommands


def cmd_check(args) -> int:
    p = _poly(args.file, args.k)
    v = is_realizable(p)
    print(f"realizable {_yes(v.realizable)}")
    if args.certificate:
        if v.realizable:
            for rho, classes in v.certificate.items():
                for c in classes:
                    members = " ; ".join(str(r) for r in c.members)
                    print(f"class rho={char_name(rho)} m={c.m} size={len(c.members)} : {members}")
        else:
            w = v.witness
            members = " ; ".join(str(r) for r in w.rho_class.members)
            print(f"witness rho={char_name(w.rho_class.rho)} m={w.rho_class.m} {w.describe()} : {members}")
    log(f"checked {v.classes_checked} classes")
    return EXIT_OK if v else EXIT_NO


def cmd_localize(args) -> int:
    p = _poly(args.file, args.k)
    fam = default_family(p.n if p else 1, args.L, args.D)
    log(f"family of {len(fam)} symmetric functions")
    w = integrality_test(p, fam)
    print(f"integral {_yes(w is None)}")
    print(f"family_size {len(fam)}")
    if w is not None:
        print(f"witness f={w.f} ell={char_name(w.ell)}")
    return EXIT_OK if w is None else EXIT_NO


def cmd_graph_validate(args) -> int:
    g = _graph(args.file)
    try:
        v = validate(g)
    except GraphStructureError as e:
        raise InputError(f"{args.file}: {e}") from None
    print(f"valid {_yes(v is None)}")
    if v is not None:
        print(f"violation {v.describe()}")
    return EXIT_OK if v is None else EXIT_NO


def cmd_graph_lambda(args) -> int:
    g = _graph(args.file)
    try:
        check_structure(g)
    except GraphStructureError as e:
        raise InputError(f"{args.file}: {e}") from None
    print(print_poly(coloring_polynomial(g)))
    return EXIT_OK


def cmd_graph_geometric(args) -> int:
    g = _graph(args.file)
    try:
        ok = is_geometric(g)
    except GraphStructureError as e:
        raise InputError(f"{args.file}: {e}") from None
    print(f"geometric {_yes(ok)}")
    if not ok:
        v = validate(g)
        print(f"violation {v.describe() if v else property_P(g).describe()}")
    return EXIT_OK if ok else EXIT_NO


def cmd_graph_build(args) -> int:
    p = _poly(args.polyfile, args.k)
    v = is_realizable(p)
    if not v:
        print("realizable no")
        log(f"cannot build a graph: {v.witness.describe()}")
        return EXIT_NO
    _write(args.output, print_graph(build_from_data(p)))
    return EXIT_OK


def cmd_graph_product(args) -> int:
    a, b = _graph(args.a), _graph(args.b)
    try:
        g = product(a, b)
    except (GraphStructureError, ValueError) as e:
        raise InputError(str(e)) from None
    _write(args.output, print_graph(g))
    return EXIT_OK


def cmd_rpk(args) -> int:
    sys.stdout.write(print_graph(rpk_graph(args.k)))
    return EXIT_OK


def _read_matrix(path: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(_read(path).splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [int(x) for x in line.replace(",", " ").split()]
        except ValueError:
            raise InputError(f"{path}: line {lineno}: expected 0/1 entries") from None
        if any(x not in (0, 1) for x in row):
            raise InputError(f"{path}: line {lineno}: entries must be 0 or 1")
        rows.append(row)
    if not rows or len({len(r) for r in rows}) != 1:
        raise InputError(f"{path}: matrix rows must be nonempty and of equal length")
    return rows


def _characteristic_data(dims: tuple[int, ...], rows) -> CharacteristicData:
    """Use the column blocks in the given order, else the first working block order."""
    errors = []
    for order in dict.fromkeys(itertools.permutations(dims)):
        try:
            cd = CharacteristicData.from_rows(order, rows)
        except ValueError as e:
            errors.append(str(e))
            continue
        if order != dims:
            log(f"column blocks read in simplex order {','.join(map(str, order))}")
        return cd
    raise InputError(errors[0])


def cmd_smallcover(args) -> int:
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError:
        raise InputError(f"bad --dims {args.dims!r}") from None
    cd = _characteristic_data(dims, _read_matrix(args.matrix))
    sys.stdout.write(print_graph(small_cover_graph(cd)))
    return EXIT_OK


def cmd_rp2xrp2(args) -> int:
    sys.stdout.write(print_graph(rp2xrp2_graph()))
    return EXIT_OK


def cmd_orbit(args) -> int:
    p = _poly(args.file, args.k)
    if args.k > 4:
        raise InputError("orbits are computed for k <= 4")
    orbit = sorted(aut_orbit(p), key=lambda q: q.monomials())
    print(f"orbit_size {len(orbit)}")
    for q in orbit:
        print(print_poly(q))
    return EXIT_OK


def cmd_span(args) -> int:
    polys = [_poly(f, args.k) for f in args.files]
    try:
        print(f"rank {cls.span_rank(polys)}")
    except ValueError as e:
        raise InputError(str(e)) from None
    return EXIT_OK


def _read_map(path: str, k: int) -> dict[int, int]:
    images = {}
    for lineno, line in enumerate(_read(path).splitlines(), start=1):
        line = line.split("#", 1)[0].replace("->", " ").strip()
        if not line:
            continue
        words = line.split()
        if len(words) != 2:
            raise InputError(f"{path}: line {lineno}: expected '<char> -> <char>'")
        try:
            src = parse_char(words[0], k, lineno, 1)
            dst = 0 if words[1] == "0" else parse_char(words[1], k - 1, lineno, 1)
        except ParseError as e:
            raise InputError(f"{path}: {e}") from None
        images[src] = dst
    return images


def cmd_restrict(args) -> int:
    k = args.k
    try:
        rho = parse_char(args.rho, k, 1, 1)
    except ParseError as e:
        raise InputError(f"--rho: {e}") from None
    m: GlMatrix | None = None
    if args.map:
        try:
            m = quotient_matrix(rho, k, _read_map(args.map, k))
        except ValueError as e:
            raise InputError(f"{args.map}: {e}") from None
    p = _poly(args.poly, k)
    try:
        q = restrict_generic(p, rho, m)
    except ValueError as e:
        raise InputError(str(e)) from None
    print(print_poly(q))
    return EXIT_OK


def cmd_classify(args) -> int:
    report = cls.s4g3_report(exhaustive_essential=args.exhaustive_essential, progress=log)
    sys.stdout.write(report.render())
    if not report.ok:
        log("some checks failed; see lines marked FAIL")
    return EXIT_OK if report.ok else EXIT_NO


def cmd_ak(args) -> int:
    if args.K < 1:
        raise InputError("K must be >= 1")
    print(cls.a_k(args.K))
    return EXIT_OK


# ---------- parser


def _rank(text: str) -> int:
    try:
        return check_rank(int(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bordismlab", description=__doc__.splitlines()[0])
    ap.add_argument("--verbose", action="store_true", help="timestamped diagnostics on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide realizability of a polynomial")
    p.add_argument("--k", type=_rank, required=True)
    p.add_argument("--certificate", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("localize", help="integrality test with a finite family")
    p.add_argument("--k", type=_rank, required=True)
    p.add_argument("--L", type=int, default=4)
    p.add_argument("--D", type=int, default=None)
    p.add_argument("file")
    p.set_defaults(func=cmd_localize)

    g = sub.add_parser("graph", help="labelled graph tools").add_subparsers(dest="graph_cmd", required=True)
    for name, func in (("validate", cmd_graph_validate), ("lambda", cmd_graph_lambda), ("geometric", cmd_graph_geometric)):
        q = g.add_parser(name)
        q.add_argument("file")
        q.set_defaults(func=func)
    q = g.add_parser("build")
    q.add_argument("--k", type=_rank, required=True)
    q.add_argument("polyfile")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_graph_build)
    q = g.add_parser("product")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_graph_product)

    e = sub.add_parser("examples", help="example graphs").add_subparsers(dest="example", required=True)
    q = e.add_parser("rpk")
    q.add_argument("--k", type=_rank, required=True)
    q.set_defaults(func=cmd_rpk)
    q = e.add_parser("smallcover")
    q.add_argument("--dims", required=True)
    q.add_argument("--matrix", required=True)
    q.set_defaults(func=cmd_smallcover)
    q = e.add_parser("rp2xrp2")
    q.set_defaults(func=cmd_rp2xrp2)

    p = sub.add_parser("orbit", help="automorphism orbit of a polynomial")
    p.add_argument("--k", type=_rank, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("span", help="GF(2) rank of polynomials")
    p.add_argument("--k", type=_rank, required=True)
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("restrict", help="restrict to the kernel of a generic character")
    p.add_argument("--k", type=_rank, required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--map")
    p.add_argument("poly")
    p.set_defaults(func=cmd_restrict)

    c = sub.add_parser("classify", help="classification reports").add_subparsers(dest="target", required=True)
    q = c.add_parser("s4g3")
    q.add_argument("--exhaustive-essential", action="store_true")
    q.set_defaults(func=cmd_classify)

    p = sub.add_parser("ak", help="dimension formula A_K")
    p.add_argument("K", type=int)
    p.set_defaults(func=cmd_ak)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    log.verbose = args.verbose
    try:
        return args.func(args)
    except InputError as e:
        log(f"error: {e}")
        return EXIT_INPUT
    except (ValueError, GraphStructureError) as e:
        log(f"error: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
