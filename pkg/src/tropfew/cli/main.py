"""Command-line entry point: ``tropfew <command> ...``.

Every command writes a JSON document (sorted keys, two-space indent) to
stdout unless it says otherwise.  Exit codes: 0 success, 1 a verification
failed, 2 bad input, 3 unsupported geometry, 4 certification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .. import fixtures
from ..arrangement import NonTransversalError, arrangement, bound_report
from ..field import LaurentPoly, LaurentSystem
from ..reduction import DegenerateSupportError, build_fan, construction_check, normalize, reduced_system
from ..realsolve.bivariate import IrrationalSpecializationError, ZeroResultantError, solve_positive, specialize_t
from ..realsolve.genpow import IndeterminateError
from ..realsolve.intervals import precision_from_env
from ..realsolve.univariate import NotSquarefreeError
from ..realsolve.verify import verify_paper
from ..tropical import check_balancing, check_duality, corner_locus, positive_part
from . import svg
from .grammar import ParseError, SystemFile, format_polynomial, format_system, parse_file

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GEOMETRY, EXIT_CERTIFY = 0, 1, 2, 3, 4


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---- JSON encodings ---------------------------------------------------------------

def _q(x) -> str:
    return str(Fraction(x))


def _pt(p) -> list[str]:
    return [_q(p[0]), _q(p[1])]


def _ws(ws) -> list[list[int]]:
    return [list(w) for w in ws]


def curve_json(f: LaurentPoly) -> dict:
    c = corner_locus(f)
    pos = positive_part(c)
    return {
        "polynomial": format_polynomial(f),
        "tropical": str(c.poly),
        "vertices": [{"id": i, "point": _pt(v.point), "dual": _ws(v.dual.vertices)}
                     for i, v in enumerate(c.vertices)],
        "edges": [{"id": i, "kind": e.kind, "start": _pt(e.start),
                   "end": _pt(e.end) if e.end is not None else None,
                   "direction": list(e.direction), "weight": e.weight,
                   "dual": _ws(e.dual.vertices), "positive": i in pos}
                  for i, e in enumerate(c.edges)],
        "regions": [{"monomial": list(r.monomial), "sign": r.sign} for r in c.regions],
        "balanced": check_balancing(c).balanced,
        "duality_violations": check_duality(c),
    }


def cell_json(i: int, cell) -> dict:
    return {
        "id": i,
        "kind": cell.kind,
        "geometry": cell.geometry,
        "points": [_pt(p) for p in cell.points],
        "direction": list(cell.direction) if cell.direction else None,
        "xi1": list(cell.xi1),
        "xi2": list(cell.xi2),
        "sigma1": _ws(cell.sigma1.points),
        "sigma2": _ws(cell.sigma2.points),
        "sigma": _ws(cell.sigma),
        "positive": cell.positive,
        "multiplicity": cell.multiplicity,
    }


def _real_poly_text(p: dict) -> str:
    return format_polynomial({w: Fraction(c) for w, c in p.items()})


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


# ---- commands ---------------------------------------------------------------------

def _load(path: str) -> SystemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}", EXIT_INPUT) from None
    try:
        return parse_file(text)
    except ParseError as exc:
        raise CommandError(f"{path}:{exc.line}:{exc.column}: {exc.message}", EXIT_INPUT) from None


def _system(sf: SystemFile) -> LaurentSystem:
    if len(sf.polynomials) != 2:
        raise CommandError(f"expected a system of two polynomials, found {len(sf.polynomials)}",
                           EXIT_INPUT)
    return sf.system


def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CommandError(f"{what} must be a rational such as 1/100000, got {text!r}",
                           EXIT_INPUT) from None


def cmd_curve(args, out) -> int:
    sf = _load(args.file)
    doc = {"name": sf.name, "curves": [curve_json(f) for f in sf.polynomials]}
    if args.svg:
        Path(args.svg).write_text(svg.render([corner_locus(f) for f in sf.polynomials], title=sf.name))
    if args.json:
        out.write(dump(doc))
    else:
        for k, c in enumerate(doc["curves"], 1):
            out.write(f"curve {k}: {c['tropical']}\n")
            out.write(f"  {len(c['vertices'])} vertices, {len(c['edges'])} edges, "
                      f"{sum(e['positive'] for e in c['edges'])} positive, "
                      f"balanced={c['balanced']}\n")
    return EXIT_OK


def cmd_intersect(args, out) -> int:
    sf = _load(args.file)
    f1, f2 = _system(sf)
    T1, T2, cells = arrangement(f1, f2)
    doc = {
        "name": sf.name,
        "cells": [cell_json(i, c) for i, c in enumerate(cells)],
        "transversal_points": len({c.point for c in cells if c.kind == "transversal"}),
        "positive_points": sum(1 for c in cells if c.positive),
        "non_transversal": sum(1 for c in cells if c.kind != "transversal"),
    }
    if args.svg:
        pts = [(c.point, bool(c.positive)) for c in cells if c.geometry == "point"]
        Path(args.svg).write_text(svg.render([T1, T2], pts, title=sf.name))
    if args.json or not args.svg:
        out.write(dump(doc))
    return EXIT_OK


def cmd_dmv(args, out) -> int:
    f1, f2 = _system(_load(args.file))
    out.write(dump(bound_report(f1, f2).as_dict()))
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    f1, f2 = _system(_load(args.file))
    _, _, cells = arrangement(f1, f2)
    if not 0 <= args.cell < len(cells):
        raise CommandError(f"cell {args.cell} out of range (0..{len(cells) - 1})", EXIT_INPUT)
    cell = cells[args.cell]
    r1, r2 = reduced_system(f1, f2, cell)
    out.write(dump({
        "cell": cell_json(args.cell, cell),
        "reduced": [_real_poly_text(r1), _real_poly_text(r2)],
        "support": [_ws(sorted(r1)), _ws(sorted(r2))],
    }))
    return EXIT_OK


def cmd_normalize(args, out) -> int:
    sf = _load(args.file)
    ns = normalize(_system(sf))
    fan = build_fan(ns)
    doc = ns.as_dict()
    doc["system"] = format_system(ns.system(), name=sf.name).splitlines()
    doc["gamma0"] = _q(ns.gamma0) if ns.c0.terms else None
    doc["gamma2"] = _q(ns.gamma2) if ns.c2.terms else None
    doc["fan"] = {"rays": {k: list(v) for k, v in fan.rays.items()},
                  "cones": {k: [list(a), list(b)] for k, (a, b) in fan.cones.items()}}
    try:
        doc["construction"] = construction_check(ns)
    except (ValueError, ZeroDivisionError) as exc:
        doc["construction"] = {"error": str(exc)}
    if args.svg:
        g1, g2 = ns.system()
        T1, T2, cells = arrangement(g1, g2)
        pts = [(c.point, bool(c.positive)) for c in cells if c.geometry == "point"]
        Path(args.svg).write_text(svg.render([T1, T2], pts, fan=fan.rays, title=sf.name))
    out.write(dump(doc))
    return EXIT_OK


def cmd_solve(args, out) -> int:
    sf = _load(args.file)
    system = _system(sf)
    if args.t is None:
        if any(e != 0 for f in system for c in f.values() for e in c.exponents()):
            raise CommandError("coefficients depend on t; pass --t", EXIT_INPUT)
        t = Fraction(1)
    else:
        t = _rational(args.t, "--t")
        if t <= 0:
            raise CommandError("--t must be positive", EXIT_INPUT)
    report = solve_positive(specialize_t(system, t), args.precision)
    doc = {"name": sf.name, "t": _q(t), **report.as_dict()}
    if sf.expect is not None:
        doc["expect"] = sf.expect
        doc["matches_expect"] = report.count == sf.expect
    out.write(dump(doc))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    name = args.target.split(":", 1)[1] if args.target.startswith("paper:") else None
    if name not in ("six", "seven", "drrs"):
        raise CommandError(f"unknown target {args.target!r}; use paper:six, paper:seven or paper:drrs",
                           EXIT_INPUT)
    t = _rational(args.t, "--t") if args.t is not None else None
    report = verify_paper(name, t, args.precision)
    out.write(dump(report))
    return EXIT_OK if report.get("pass") else EXIT_FAILED


def cmd_fixture(args, out) -> int:
    out.write(format_system(fixtures.FIXTURES[args.name]()))
    return EXIT_OK


# ---- parser -----------------------------------------------------------------------

def _bits(text: str) -> int:
    v = int(text)
    if not 16 <= v <= 16384:
        raise argparse.ArgumentTypeError("precision must lie in [16, 16384]")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropfew", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("curve", help="tropical curve of each polynomial in FILE")
    c.add_argument("file")
    c.add_argument("--svg", metavar="PATH")
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_curve)

    c = sub.add_parser("intersect", help="cells of the arrangement of the two curves")
    c.add_argument("file")
    c.add_argument("--svg", metavar="PATH")
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_intersect)

    c = sub.add_parser("dmv", help="discrete mixed volume and transversal point bounds")
    c.add_argument("file")
    c.set_defaults(run=cmd_dmv)

    c = sub.add_parser("reduce", help="reduced system at one arrangement cell")
    c.add_argument("file")
    c.add_argument("--cell", type=int, required=True, metavar="ID")
    c.set_defaults(run=cmd_reduce)

    c = sub.add_parser("normalize", help="normal form of a system with five monomials")
    c.add_argument("file")
    c.add_argument("--svg", metavar="PATH")
    c.set_defaults(run=cmd_normalize)

    c = sub.add_parser("solve", help="certified positive solutions at a rational t")
    c.add_argument("file")
    c.add_argument("--t", metavar="RAT")
    c.add_argument("--precision", type=_bits, metavar="BITS")
    c.set_defaults(run=cmd_solve)

    c = sub.add_parser("verify", help="run a built-in end-to-end check")
    c.add_argument("target", metavar="paper:six|paper:seven|paper:drrs")
    c.add_argument("--t", metavar="RAT")
    c.add_argument("--precision", type=_bits, metavar="BITS")
    c.set_defaults(run=cmd_verify)

    c = sub.add_parser("fixture", help="print a built-in system in the text format")
    c.add_argument("name", choices=sorted(fixtures.FIXTURES))
    c.set_defaults(run=cmd_fixture)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        precision_from_env()
        return args.run(args, out)
    except CommandError as exc:
        print(f"tropfew: {exc}", file=sys.stderr)
        return exc.code
    except (NonTransversalError, DegenerateSupportError) as exc:
        print(f"tropfew: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (IrrationalSpecializationError, ZeroResultantError, NotSquarefreeError,
            IndeterminateError) as exc:
        print(f"tropfew: {exc}", file=sys.stderr)
        return EXIT_CERTIFY
    except ValueError as exc:
        print(f"tropfew: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
