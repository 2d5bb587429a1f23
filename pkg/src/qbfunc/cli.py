"""Command-line front end: derive relation tables, compute b-functions,
and run the verification suite, with deterministic JSON reports."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .scalars import serialize
from .roots import parabolic_datum
from .freealg import BudgetExceeded, NonProportional, DerivationError
from .pbw import PBWAlgebra
from . import bfunc as bf
from .cache import get_table, cache_name, StaleCache
from .suite import run_property_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_BUDGET = 3
EXIT_NOT_PROPORTIONAL = 4
EXIT_INTERPOLATION = 5

SCHEMA = 1


def _emit(payload, as_json):
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    return payload


def _common(sub):
    sub.add_argument("--family", required=True,
                     choices=["A", "B", "C", "D", "E7"])
    sub.add_argument("--rank", required=True, type=int)
    sub.add_argument("--i0", type=int, default=None,
                     help="marked vertex (1-based); needed for type D")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--verify-level", default="rank_complete",
                     choices=["rank_complete", "probabilistic"])
    sub.add_argument("--cache-dir", default=os.environ.get("QB_CACHE_DIR"))
    sub.add_argument("--budget-seconds", type=float, default=None)
    sub.add_argument("--json", action="store_true")


def _setup(args):
    i0 = None if args.i0 is None else args.i0 - 1
    pd = parabolic_datum(args.family, args.rank, i0)
    table = get_table(pd, args.seed, args.verify_level,
                      cache_dir=args.cache_dir,
                      budget_seconds=args.budget_seconds)
    return pd, table


def cmd_derive(args):
    pd, table = _setup(args)
    payload = {
        "schema": SCHEMA,
        "command": "derive",
        "family": args.family, "rank": args.rank, "i0": pd.i0 + 1,
        "seed": args.seed, "verify_level": args.verify_level,
        "generators": pd.num_generators,
        "rules": len(table.straighten),
        "cache": (cache_name(pd, args.seed, args.verify_level)
                  if args.cache_dir else None),
    }
    _emit(payload, args.json)
    if not args.json:
        print(f"{args.family}_{args.rank} (vertex {pd.i0 + 1}): "
              f"{pd.num_generators} generators, {len(table.straighten)} "
              f"pair rules, verification level {args.verify_level}")
    return EXIT_OK


def cmd_compute(args):
    pd, table = _setup(args)
    A = PBWAlgebra(table)
    f = (bf.construct_f_explicit(A) if args.gauge == "explicit"
         else bf.construct_f_intrinsic(A))
    try:
        result = bf.compute_bfunc(A, f, args.gauge, smax=args.smax)
    except NonProportional as exc:
        _emit({"schema": SCHEMA, "command": "compute", "error": str(exc)},
              args.json)
        return EXIT_NOT_PROPORTIONAL
    except bf.InterpolationMismatch as exc:
        _emit({"schema": SCHEMA, "command": "compute", "error": str(exc)},
              args.json)
        return EXIT_INTERPOLATION
    payload = {
        "schema": SCHEMA,
        "command": "compute",
        "family": args.family, "rank": args.rank, "i0": pd.i0 + 1,
        "seed": args.seed, "gauge": args.gauge,
        "samples": {str(s): serialize(b)
                    for s, b in sorted(result.samples.items())},
        "poly_u": [serialize(c) for c in result.poly],
        "exponents": [str(a) for a in result.exponents],
        "constant": (serialize(result.constant)
                     if result.constant is not None else None),
        "constant_expected": (serialize(result.constant_expected)
                              if result.constant_expected is not None else None),
        "constant_sign_match": result.constant_sign_match,
        "theorem_ok": result.theorem_ok,
        "classical_ok": result.classical.get("ok"),
        "classical_factors": result.classical.get("factors"),
    }
    _emit(payload, args.json)
    if not args.json:
        print(bf.factored_form(result, pd))
        print("classical: " + "".join(f"(s+{a})" for a in result.exponents))
        print(f"theorem_ok={result.theorem_ok} "
              f"classical_ok={result.classical.get('ok')}")
    return EXIT_OK if result.theorem_ok and result.classical.get("ok") \
        else EXIT_VERIFY


def cmd_verify(args):
    pd, table = _setup(args)
    A = PBWAlgebra(table)
    checks = set(args.checks.split(",")) if args.checks else None
    try:
        report = run_property_suite(A, gauge=args.gauge, smax=args.smax or 2,
                                    npairs=args.pairs, seed=args.seed,
                                    checks=checks)
    except NonProportional as exc:
        _emit({"schema": SCHEMA, "command": "verify", "error": str(exc)},
              args.json)
        return EXIT_NOT_PROPORTIONAL
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "family": args.family, "rank": args.rank, "i0": pd.i0 + 1,
        "seed": args.seed, "gauge": args.gauge,
        "checks": {name: entry for name, entry in sorted(report.items())
                   if name != "ok"},
        "ok": report["ok"],
    }
    _emit(payload, args.json)
    if not args.json:
        for name, entry in sorted(report.items()):
            if name == "ok":
                continue
            print(f"{name}: {'pass' if entry['ok'] else 'FAIL'}")
        print("overall: " + ("pass" if report["ok"] else "FAIL"))
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def build_parser():
    ap = argparse.ArgumentParser(
        prog="qbfunc",
        description="Exact computation of quantum b-functions for the six "
                    "regular parabolic types")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("derive", help="derive and cache the relation table")
    _common(d)
    d.set_defaults(fn=cmd_derive)

    c = sub.add_parser("compute", help="compute and factor the b-function")
    _common(c)
    c.add_argument("--smax", type=int, default=None)
    c.add_argument("--gauge", default="explicit",
                   choices=["intrinsic", "explicit"])
    c.set_defaults(fn=cmd_compute)

    v = sub.add_parser("verify", help="run the property suite")
    _common(v)
    v.add_argument("--smax", type=int, default=2)
    v.add_argument("--pairs", type=int, default=100)
    v.add_argument("--gauge", default="explicit",
                   choices=["intrinsic", "explicit"])
    v.add_argument("--checks", default=None,
                   help="comma-separated subset of check names")
    v.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StaleCache as exc:
        print(f"stale cache: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except DerivationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
