"""Command-line front end: ``mukai-walls <subcommand> ...``.

Vectors are given as ``r,dH,s`` where ``dH`` is the H-degree of the
divisor part. Rationals are written ``p/q`` on input and output. JSON output
has sorted keys and nothing run-dependent in it.

Exit codes: 0 on success, 2 on usage errors, 3 on domain errors. Errors go
to stderr as one JSON object ``{"error": ..., "message": ...}``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import charge, destab, intersect, mukai, nslattice, walls
from .exact import fmt, frac


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- flag parsing ---------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return frac(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _rationals(n: int):
    def parse(text: str) -> tuple[Fraction, ...]:
        parts = text.split(",")
        if len(parts) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated values, got {text!r}")
        return tuple(_rational(p) for p in parts)
    return parse


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vector(text: str) -> tuple[Fraction, Fraction, Fraction]:
    r, d, s = _rationals(3)(text)
    if r.denominator != 1:
        raise argparse.ArgumentTypeError(f"rank must be an integer, got {fmt(r)}")
    return r, d, s


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _surface(args) -> mukai.PolarizedSurface:
    if args.lattice is not None:
        lat = _load(nslattice.GramLattice.load, args.lattice, "--lattice")
        if args.h2 is not None and args.h2 != lat.h2:
            raise UsageError(f"argument --h2: {args.h2} disagrees with the lattice (H^2 = {lat.h2})")
        return mukai.PolarizedSurface(lat.h2, lat)
    if args.h2 is None:
        raise UsageError("one of the arguments --h2 --lattice is required")
    return mukai.PolarizedSurface(args.h2)


def _load(loader, path, flag):
    try:
        return loader(path)
    except OSError as exc:
        raise UsageError(f"argument {flag}: cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"argument {flag}: malformed file {path}: {exc}") from None


def _mk(surface: mukai.PolarizedSurface, vec) -> mukai.MukaiVector:
    r, d, s = vec
    return surface.from_degree(int(r), d, s)


# -- output ---------------------------------------------------------------------

def _plain(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"


def _table(rows: list[Sequence], header: Sequence[str]) -> str:
    cells = [list(header)] + [[fmt(c) if isinstance(c, Fraction) else str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _emit(args, data, rows=None, header=None) -> str:
    if args.format == "table":
        if rows is None:
            rows = sorted((k, v if not isinstance(v, (dict, list)) else json.dumps(_plain(v), sort_keys=True))
                          for k, v in _plain(data).items())
            header = ("key", "value")
        return _table(rows, header)
    if args.format == "svg":
        raise UsageError("argument --format: svg output is only available for the wall subcommand")
    return dumps(data)


# -- subcommands ----------------------------------------------------------------

def cmd_charge(args) -> str:
    X = _surface(args)
    v = _mk(X, args.v)
    b, a = args.point
    z = charge.central_charge(charge.StabilityPoint(b, a, X), v)
    return _emit(args, {"re": z.re, "im": z.im})


def cmd_wall(args) -> str:
    X = _surface(args)
    v = _mk(X, args.v)
    ws = [walls.numerical_wall(v, _mk(X, w)) for w in args.w]
    out = []
    for wall in ws:
        entry = wall.to_json()
        entry["w"] = mukai.vector_to_json(wall.pair[1])
        entry["ray_a2"] = walls.ray_wall_a2(v, wall.pair[1], b=args.b)
        if args.samples and wall.kind in (walls.SEMICIRCLE, walls.VERTICAL_LINE):
            entry["samples"] = [[b, a2] for b, a2 in walls.sample_wall(wall, args.samples)]
        out.append(entry)
    svg = walls.walls_svg(ws, scale=args.scale)
    if args.svg:
        Path(args.svg).write_text(svg)
    if args.format == "svg":
        return svg
    if args.format == "table":
        rows = [(mukai.vector_to_json(w.pair[1])["r"], fmt(w.pair[1].d), fmt(w.pair[1].s), e["kind"],
                 e.get("center_b", e.get("b", "-")), e.get("radius_sq", "-"),
                 "-" if e["ray_a2"] is None else fmt(e["ray_a2"]))
                for w, e in zip(ws, out)]
        return _table(rows, ("r", "dH", "s", "kind", "center_b", "radius_sq", "ray_a2"))
    return dumps(out)


def cmd_destab(args) -> str:
    X = _surface(args)
    v = _mk(X, args.v)
    cands = destab.enumerate_destabilizers(v, max_rank=args.max_rank, a2h2_min=args.w2min)
    data = [c.to_json() for c in cands]
    if args.format == "table":
        rows = [(c.r0, c.d0, c.s0, c.a2h2, ",".join(map(str, c.delta0_sq_options)),
                 c.verdict[0] + (f" ({c.verdict[1]})" if c.verdict[1] else "")) for c in cands]
        return _table(rows, ("r0", "d0", "s0", "a2h2", "delta0_sq", "verdict"))
    return _emit(args, data)


def cmd_lemma(args) -> str:
    rep = destab.lemma_case_table(args.genus_mod4, args.param)
    if args.format == "table":
        rows = [(c.a, c.b, c.k, c.r0, c.d0, c.s0) for c in rep.survivors]
        return _table(rows, ("a", "b", "k", "r0", "d0", "s0"))
    return _emit(args, rep.to_json())


def cmd_simultaneity(args) -> str:
    return _emit(args, destab.simultaneity_check(args.s).to_json())


def cmd_oxwall(args) -> str:
    sols = destab.ox_wall_solutions(args.s, rk_max=args.rk_max, beta_max=args.beta_max)
    if args.format == "table":
        return _table(sols, ("alpha", "beta", "rk"))
    return _emit(args, [{"alpha": a, "beta": b, "rk": rk} for a, b, rk in sols])


def cmd_lattice(args) -> str:
    if args.lattice is None:
        raise UsageError("the following arguments are required: --lattice")
    lat = _load(nslattice.GramLattice.load, args.lattice, "--lattice")
    data: dict = {"rank": lat.rank, "h2": lat.h2}
    if args.a_class is not None:
        d = nslattice.hyperelliptic_diagnostics(lat, args.a_class)
        data["hyperelliptic"] = {"h_minus_a_sq": d.h_minus_a_sq, "h_minus_2a_sq": d.h_minus_2a_sq,
                                 "cross": d.cross, "pattern": d.hyperelliptic_pattern}
    res = nslattice.search_classes(lat, args.sq, args.hdeg, args.bound)
    data["search"] = {"sq": args.sq, "hdeg": args.hdeg, "flag": res.flag, "vectors": [list(x) for x in res.vectors]}
    if (args.sq, args.hdeg) == (0, 1):
        data["verdict"] = "GeometricallyExcluded" if res.vectors else "NoWitness"
    return _emit(args, data)


def cmd_fano(args) -> str:
    if (args.builtin is None) == (args.table is None):
        raise UsageError("exactly one of the arguments --builtin --table is required")
    if args.builtin is not None:
        table = intersect.BUILTIN_TABLES[args.builtin]()
    else:
        table = _load(intersect.TripleTable.load, args.table, "--table")
    c = intersect.cube(table, args.divisor)
    return _emit(args, {"cube": c, "genus": intersect.fano_genus(table, args.divisor)})


def cmd_h0bound(args) -> str:
    X = _surface(args)
    v = _mk(X, args.v)
    half, rad = mukai.h0_upper_bound(v, statement_radicand=args.statement_radicand)
    return _emit(args, {"chi_half": half, "radicand": rad,
                        "h0_max": mukai.h0_max(v, statement_radicand=args.statement_radicand)})


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mukai-walls", description="Exact wall and destabilizer computations on polarized K3 surfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_, surface=False, vector=False, formats=("json", "table")):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=formats, default="json")
        if surface:
            sp.add_argument("--h2", type=_positive_int, help="self-intersection H^2 (even)")
            sp.add_argument("--lattice", help="JSON lattice file {rank, gram, h}")
        if vector:
            sp.add_argument("--v", type=_vector, required=True, metavar="r,dH,s")
        return sp

    sp = add("charge", cmd_charge, "central charge at a point", True, True)
    sp.add_argument("--point", type=_rationals(2), required=True, metavar="b,a")

    sp = add("wall", cmd_wall, "numerical walls of v against one or more w", True, True, ("json", "table", "svg"))
    sp.add_argument("--w", type=_vector, action="append", required=True, metavar="r,dH,s")
    sp.add_argument("--b", type=_rational, default=Fraction(0), help="vertical line for ray_a2 (default 0)")
    sp.add_argument("--samples", type=int, default=0, help="number of exact sample points per wall")
    sp.add_argument("--svg", help="also write the SVG picture to this path")
    sp.add_argument("--scale", type=_positive_int, default=100)

    sp = add("destab", cmd_destab, "numerical destabilizers on b = 0", True, True)
    sp.add_argument("--max-rank", type=_positive_int)
    sp.add_argument("--w2min", type=_rational, default=Fraction(2), metavar="p/q",
                    help="only walls with a^2 H^2 above this (default 2)")

    sp = add("lemma", cmd_lemma, "congruence case table for a genus family")
    sp.add_argument("--genus-mod4", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--param", type=int, required=True, help="s (classes 1, 3) or p (class 2)")

    sp = add("simultaneity", cmd_simultaneity, "can the two rank-one exceptions coexist")
    sp.add_argument("--s", type=int, required=True)

    sp = add("oxwall", cmd_oxwall, "brute force for the structure-sheaf wall")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--rk-max", type=_positive_int, default=6)
    sp.add_argument("--beta-max", type=_rational, default=Fraction(4))

    sp = add("lattice", cmd_lattice, "class search in a Gram lattice")
    sp.add_argument("--lattice")
    sp.add_argument("--sq", type=int, default=0)
    sp.add_argument("--hdeg", type=int, default=1)
    sp.add_argument("--bound", type=_positive_int, default=10)
    sp.add_argument("--a-class", type=_ints, metavar="x1,...,xn")

    sp = add("fano", cmd_fano, "cube and genus from a triple-intersection table")
    sp.add_argument("--builtin", choices=sorted(intersect.BUILTIN_TABLES))
    sp.add_argument("--table", help="JSON table file {basis, products}")
    sp.add_argument("--divisor", type=_ints, required=True, metavar="x1,...,xn")

    sp = add("h0bound", cmd_h0bound, "upper bound on global sections", True, True)
    sp.add_argument("--statement-radicand", action="store_true",
                    help="use (r - s)^2 + c^2 (H^2 + 4) under the root")
    return p


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        raw = os.environ.get("MUKAI_WALLS_THREADS")
        if raw is not None and not (raw.isdigit() and int(raw) >= 1):
            raise UsageError(f"MUKAI_WALLS_THREADS must be a positive integer, got {raw!r}")
        out = args.func(args)
    except UsageError as exc:
        return _error("UsageError", str(exc), 2)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        return _error(type(exc).__name__, str(exc), 3)
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
