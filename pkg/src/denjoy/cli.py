"""Command-line entry point: ``denjoy <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import harness
from .circleset import (dstar_distance, format_openset, parse_openset, quotient_distance,
                        rho, sym_diff_distance)
from .errors import DenjoyError
from .exactreal import Alpha, RotationNumber, parse_alpha, parse_point
from .families import GammaVector, density_openset, gamma_openset
from .itinerary import context, itinerary
from .measure import cylinder_table, discrepancy_report, weak_distance
from .subshift import language


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _csv(rows: List[dict], cols: List[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _rotation(args, alpha: Alpha) -> RotationNumber:
    return RotationNumber(parse_point(args.r, alpha))


def cmd_gen(args, alpha):
    U = parse_openset(args.u, alpha)
    ctx = context(U, _rotation(args, alpha))
    word = itinerary(parse_point(args.x0, alpha), ctx, args.len)
    _emit(args, json.dumps({"itinerary": word}) if args.json else word)
    return 0


def cmd_language(args, alpha):
    ctx = context(parse_openset(args.u, alpha), _rotation(args, alpha))
    table = language(ctx, args.n)
    if args.json or args.format == "json":
        _emit(args, table.to_json())
    else:
        _emit(args, "\n".join(table.blocks))
    return 0


def cmd_measure(args, alpha):
    ctx = context(parse_openset(args.u, alpha), _rotation(args, alpha))
    table = cylinder_table(ctx, args.depth)
    if args.format == "csv" and not args.json:
        rows = [{"block": b, "a": str(table[b].a), "b": str(table[b].b)} for b in table.blocks()]
        _emit(args, _csv(rows, ["block", "a", "b"]))
    else:
        _emit(args, json.dumps(table.to_json(), sort_keys=True))
    return 0


def cmd_dist(args, alpha):
    U, V = parse_openset(args.u, alpha), parse_openset(args.v, alpha)
    if args.metric == "weak":
        r = _rotation(args, alpha)
        wd = weak_distance(cylinder_table(context(U, r), args.depth),
                           cylinder_table(context(V, r), args.depth), args.depth)
        out = wd.to_json()
    elif args.metric == "quotient":
        value, eta = quotient_distance(U, V)
        out = {"value": value.to_json(), "eta": eta.to_json()}
    else:
        fn = {"d": sym_diff_distance, "dstar": dstar_distance, "rho": rho}[args.metric]
        out = {"value": fn(U, V).to_json()}
    _emit(args, json.dumps(out, sort_keys=True))
    return 0


def cmd_family(args, alpha):
    if args.kind == "gamma":
        if not args.gamma:
            raise DenjoyError("family gamma needs --gamma")
        _emit(args, format_openset(gamma_openset(GammaVector.parse(args.gamma), alpha)))
    else:
        if not args.block:
            raise DenjoyError("family density needs --block")
        U, eps = density_openset(args.block, _rotation(args, alpha), parse_point(args.x0, alpha))
        if args.format == "json":
            _emit(args, json.dumps({"U": format_openset(U), "eps": str(eps)}, sort_keys=True))
        else:
            _emit(args, format_openset(U))
    return 0


def cmd_discrepancy(args, alpha):
    ctx = context(parse_openset(args.u, alpha), _rotation(args, alpha))
    lengths = [int(t) for t in args.lengths.split(",")]
    rows = discrepancy_report(ctx, parse_point(args.x0, alpha), lengths, args.n)
    out = []
    for row in rows:
        # irrational errors are exported through their certified upper bound
        err = row.error.a if row.error.is_rational else row.upper
        out.append({"N": row.N, "sup_error_num": err.numerator, "sup_error_den": err.denominator})
    if args.format == "csv":
        _emit(args, _csv(out, ["N", "sup_error_num", "sup_error_den"]))
    else:
        _emit(args, json.dumps(out))
    return 0


def cmd_experiment(args, alpha):
    U = parse_openset(args.u, alpha) if args.u else None
    name = args.name
    if name == "sturmian":
        rep = harness.run_sturmian(alpha, args.n_max, args.prefix)
    elif name == "rational":
        rep = harness.run_rational_check(U or parse_openset("0..1/2", alpha), args.p, args.q)
    elif name == "continuity":
        rep = harness.run_continuity(U or parse_openset("0..a", alpha), alpha, args.k_max, args.depth or 8)
    elif name == "ball":
        rep = harness.run_ball(args.dim, args.grid, alpha)
    elif name == "density":
        blocks = args.blocks.split(",") if args.blocks else ["101", "1100"]
        rep = harness.run_density(blocks, alpha, parse_point(args.x0, alpha), U,
                                  args.p, args.q, args.depth or 4)
    elif name == "rotation":
        rep = harness.run_rotation_numbers(U or parse_openset("0..a", alpha), alpha, args.len)
    elif name == "identities":
        rep = harness.run_identities(alpha, args.seed, args.count)
    else:
        raise DenjoyError(f"unknown experiment {name!r}")
    _emit(args, rep.to_csv() if args.format == "csv" else rep.to_json())
    return rep.exit_code


def build_parser() -> argparse.ArgumentParser:
    def globals_parser(suppress: bool) -> argparse.ArgumentParser:
        # subcommands accept the global flags too, without clobbering values given before them
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--alpha", default=d("golden"), help="golden, sqrt2m1 or poly:c2,c1,c0;iso:lo,hi[;cf:...]")
        p.add_argument("--seed", type=int, default=d(0))
        p.add_argument("--out", default=d(None), help="write output to this path instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default=d("json"))
        return p

    common = globals_parser(True)
    ap = argparse.ArgumentParser(prog="denjoy", parents=[globals_parser(False)],
                                 description="Itineraries of circle rotations relative to regular open sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("gen", cmd_gen, "itinerary of a point")
    p.add_argument("--u", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--r", default="a", help="rotation number (default: alpha)")
    p.add_argument("--json", action="store_true")

    p = add("language", cmd_language, "admissible blocks of one length")
    p.add_argument("--u", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", default="a")
    p.add_argument("--json", action="store_true")

    p = add("measure", cmd_measure, "cylinder measure table")
    p.add_argument("--u", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--r", default="a")
    p.add_argument("--json", action="store_true")

    p = add("dist", cmd_dist, "distances between open sets or their measures")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    g = p.add_mutually_exclusive_group()
    for metric in ("weak", "d", "dstar", "rho", "quotient"):
        g.add_argument(f"--{metric}", dest="metric", action="store_const", const=metric)
    p.set_defaults(metric="weak")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--r", default="a")

    p = add("family", cmd_family, "members of the parameterized families")
    p.add_argument("kind", choices=["gamma", "density"])
    p.add_argument("--gamma")
    p.add_argument("--block")
    p.add_argument("--x0", default="1/2")
    p.add_argument("--r", default="a")

    p = add("discrepancy", cmd_discrepancy, "block-frequency errors along an itinerary")
    p.add_argument("--u", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--lengths", required=True, help="comma-separated prefix lengths")
    p.add_argument("--n", type=int, default=1, help="block length")
    p.add_argument("--r", default="a")

    p = add("experiment", cmd_experiment, "run a named experiment and emit its report")
    p.add_argument("name", choices=sorted(harness.EXPERIMENTS))
    p.add_argument("--u")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--prefix", type=int, default=1000)
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--depth", type=int, help="cylinder depth (experiment-specific default)")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--grid", type=int, default=4)
    p.add_argument("--blocks")
    p.add_argument("--x0", default="1/2")
    p.add_argument("--len", type=int, default=4096)
    p.add_argument("--count", type=int, default=20)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        alpha = parse_alpha(args.alpha)
        return args.func(args, alpha)
    except ValueError as exc:
        print(f"denjoy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
