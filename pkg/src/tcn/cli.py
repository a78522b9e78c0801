"""Command-line front end: ``tcn bounds | plan | gap | validate``.

Exit status: 0 on success, 2 on bad input, 3 when space metadata
contradicts the computed bounds.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from typing import List, Optional, Sequence

import numpy as np

from .algebra import AlgebraError, load_space
from .bounds import BoundReport, MetadataError, bounds_report, gap_demo
from .expr import build_space, parse_space
from .scalar import FieldError, FieldSpec
from .sphere_planner import PlannerError, load_config, plan, random_config

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_METADATA = 3
DEFAULT_MAX_DIM = 200000

log = logging.getLogger("tcn")


class InputError(Exception):
    pass


def _n_values(args) -> List[int]:
    if (args.n is None) == (args.n_range is None):
        raise InputError("give exactly one of --n or --n-range")
    if args.n is not None:
        values = [args.n]
    else:
        m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", args.n_range)
        if not m:
            raise InputError("--n-range must look like A..B, got %r" % args.n_range)
        a, b = int(m.group(1)), int(m.group(2))
        if a > b:
            raise InputError("empty range %s" % args.n_range)
        values = list(range(a, b + 1))
    if min(values) < 2:
        raise InputError("n must be at least 2")
    return values


def _max_dim() -> int:
    raw = os.environ.get("TCN_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise InputError("TCN_MAX_DIM must be an integer, got %r" % raw) from None


def _format_row(r: BoundReport) -> str:
    exact = str(r.exact) if r.exact is not None else "-"
    growth = str(r.upper_growth) if r.upper_growth is not None else "-"
    return "%-12s %3d  %-6s %5d  %-21s %4d  %5d  %9d  %12s  %5s" % (
        r.space, r.n, r.field, r.lower, r.lower_source, r.zcl.m, r.upper, r.upper_cat,
        growth, exact)


HEADER = "%-12s %3s  %-6s %5s  %-21s %4s  %5s  %9s  %12s  %5s" % (
    "space", "n", "field", "lower", "source", "zcl", "upper", "upper_cat", "upper_growth",
    "exact")


def cmd_bounds(args, out) -> int:
    field = FieldSpec.parse(args.field) if args.field else None
    desc = build_space(parse_space(args.space), field)
    ns = _n_values(args)
    cap = _max_dim()
    worst = desc.algebra.dim ** max(ns)
    if worst > cap:
        raise InputError("tensor power dimension %d^%d = %d exceeds TCN_MAX_DIM=%d; lower n or "
                         "raise the cap" % (desc.algebra.dim, max(ns), worst, cap))
    if args.validate:
        problems = desc.algebra.validate(True)
        if problems:
            raise AlgebraError("; ".join(map(str, problems)))
    if not args.json:
        print("# field %s" % desc.field, file=out)
        print(HEADER, file=out)
    for n in ns:
        report = bounds_report(desc, n, args.certificate)
        if args.json:
            print(json.dumps(report.to_dict(), sort_keys=False), file=out)
        else:
            print(_format_row(report), file=out)
            if args.certificate and report.zcl.certificate is not None:
                for i, z in enumerate(report.zcl.certificate.factors, 1):
                    print("    z%d = %s" % (i, z), file=out)
                print("    product = %s" % report.zcl.certificate.product, file=out)
        out.flush()
    return EXIT_OK


def cmd_plan(args, out) -> int:
    k = args.k
    if k < 1:
        raise InputError("--k must be positive")
    if k % 2 == 0:
        raise InputError("no planner for even spheres: TC_n(S^k) = n + 1 for even k, so n "
                         "continuous domains cannot suffice")
    if (args.points is None) == (args.random is None):
        raise InputError("give exactly one of --points or --random")
    if args.points is not None:
        config = load_config(args.points)
        if args.n is not None and args.n != len(config):
            raise InputError("--n %d but %s holds %d points" % (args.n, args.points, len(config)))
    else:
        if args.n is None or args.n < 1:
            raise InputError("--random needs --n >= 1")
        config = random_config(np.random.default_rng(args.random), k, args.n)
    for x in config:
        if x.shape != (k + 1,):
            raise InputError("points on S^%d need %d coordinates" % (k, k + 1))
    p = plan(config, k, args.samples, args.tol)
    resid = p.endpoint_residuals(config)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(p.to_json())
        summary = out
    else:
        print(p.to_json(), file=out)
        summary = sys.stderr
    print("domain %d of %d (antipodes of x_1 among x_2..x_%d)" % (p.domain, p.n, p.n),
          file=summary)
    print("endpoint residuals: %s" % " ".join("%.3g" % r for r in resid), file=summary)
    return EXIT_OK


def cmd_gap(args, out) -> int:
    if args.n < 3:
        raise InputError("n must be >= 3: TC_2(S^2) = TC_2(T^2) = 3, so there is no gap at n = 2")
    rec = gap_demo(args.n)
    print(rec, file=out)
    for label, r in (("S^2", rec.sphere), ("T^2", rec.torus)):
        print("  %s: lower %d (zcl %d), upper %d = min(cat %d, growth %s)"
              % (label, r.lower, r.zcl.m, r.upper, r.upper_cat, r.upper_growth), file=out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    path = args.file
    m = re.fullmatch(r"\s*load\((.*)\)\s*", path)
    if m:
        path = m.group(1).strip()
    desc = load_space(path, check=False)
    problems = desc.algebra.validate(not args.no_associativity)
    if not problems:
        print("%s: ok (%d basis elements over %s)" % (desc.name, desc.algebra.dim, desc.field),
              file=out)
        return EXIT_OK
    for v in problems:
        print("%s: %s" % (desc.name, v), file=out)
    return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tcn", description="Bounds for higher topological "
                                 "complexity TC_n and a motion planner on odd spheres.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="lower/upper bounds for TC_n of a space")
    b.add_argument("--space", required=True, help='e.g. "S(2)", "T(2)", "S(1)*S(3)", "load(f.json)"')
    b.add_argument("--n", type=int)
    b.add_argument("--n-range", help="inclusive range A..B")
    b.add_argument("--field", help="Q or Fp:<p> (default Q, or Fp:2 for RP)")
    b.add_argument("--certificate", action="store_true")
    b.add_argument("--json", action="store_true", help="one JSON object per line")
    b.add_argument("--validate", action="store_true", help="re-validate the algebra first")
    b.set_defaults(func=cmd_bounds)

    p = sub.add_parser("plan", help="run the odd-sphere motion planner")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--points")
    p.add_argument("--random", type=int, metavar="SEED")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    g = sub.add_parser("gap", help="S^2 versus T^2 comparison")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gap)

    v = sub.add_parser("validate", help="check the axioms of an algebra file")
    v.add_argument("file")
    v.add_argument("--no-associativity", action="store_true")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except MetadataError as exc:
        print("tcn: metadata inconsistency: %s" % exc, file=sys.stderr)
        return EXIT_METADATA
    except (InputError, AlgebraError, FieldError, PlannerError, ValueError, OSError) as exc:
        print("tcn: error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
