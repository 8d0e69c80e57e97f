"""Command-line front end.

Subcommands:

  verify      run an identity battery (exit 0 all pass, 1 failure, 2 misuse)
  dim         graded dimension (optionally with a JSON basis) of a variant
  check       membership report for a serialized series
  invariants  Galois-descent invariant dimensions and basis echo
  numeric     floating-point residual checks (bridge, distribution, stuffle)
  eval        apply a named structure map to a series on stdin or file
  dist-check  per-divisor residual term counts for a serialized series

All outputs are deterministic for fixed flags and seed; JSON is emitted with
sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cyclotomic import CyclotomicError
from .descent import descent_dimension, invariant_basis_series
from .distribution import CORRECTION_MODES, distribution_report
from .dmr import VARIANTS, dmr_report, graded_basis
from .morphisms import MAP_IDS, MapDescriptor, apply_descriptor
from .numeric import CmzvIndex, DivergentIndexError, bridge_check, distribution_check, stuffle_check
from .series import ParseError, Series, SeriesError
from .verify import (
    SABOTAGE_MODES,
    SUITE_DOCS,
    SUITE_IDS,
    VerifyParams,
    run_suites,
    sabotage,
)
from .words import SizeLimitError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_USAGE = 2


def _int_list(text: str):
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _read_series(path: str | None) -> Series:
    data = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    return Series.from_json(data)


def _emit(obj, as_json: bool):
    if as_json:
        print(json.dumps(obj, sort_keys=True, indent=2, default=str))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dshuffle",
        description="Exact engine for the two rational forms of the level-N "
        "double shuffle Lie algebra, with numeric cross-checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an identity battery")
    v.add_argument("--suite", default="all", choices=("all",) + SUITE_IDS)
    v.add_argument("--n", type=_int_list, default=[3], help="comma-separated levels")
    v.add_argument("--degree", type=int, default=3)
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.add_argument("--list", action="store_true", help="list suites and exit")
    v.add_argument(
        "--sabotage", default="none", choices=("none",) + SABOTAGE_MODES,
        help="deliberately flip one internal sign (vacuousness guard)",
    )

    d = sub.add_parser("dim", help="graded dimension of a membership variant")
    d.add_argument("--algebra", required=True, choices=VARIANTS)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--degree", type=int, required=True)
    d.add_argument("--field", default="Q", choices=("Q", "QmuN"))
    d.add_argument("--basis", action="store_true", help="emit a JSON basis")
    d.add_argument("--json", action="store_true")

    c = sub.add_parser("check", help="membership report for a serialized series")
    c.add_argument("--algebra", required=True, choices=VARIANTS)
    c.add_argument("--input", default="-", help="path to a series JSON file, - for stdin")
    c.add_argument("--dist-correction", default="letter", choices=CORRECTION_MODES)

    i = sub.add_parser("invariants", help="Galois-descent invariant dimensions")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--degree", type=int, required=True)
    i.add_argument("--variant", default="dmr0-N", choices=("dmr0-N", "dmr0-muN"))
    i.add_argument("--json", action="store_true")

    m = sub.add_parser("numeric", help="floating-point residual checks")
    m.add_argument("--check", required=True, choices=("bridge", "distribution", "stuffle"))
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--d", type=int, default=None, help="divisor (distribution only)")
    m.add_argument("--k", type=_int_list, default=None, help="weights, comma separated")
    m.add_argument("--alpha", type=_int_list, default=None, help="residues, comma separated")
    m.add_argument("--m1", type=int, default=1, help="first root exponent (stuffle)")
    m.add_argument("--m2", type=int, default=1, help="second root exponent (stuffle)")
    m.add_argument("--terms", type=int, default=10**6)
    m.add_argument("--tol", type=float, default=1e-6)

    e = sub.add_parser("eval", help="apply a structure map to a series")
    e.add_argument("--map", required=True, choices=MAP_IDS)
    e.add_argument("--param", type=int, default=None)
    e.add_argument("--input", default="-", help="path to a series JSON file, - for stdin")

    dc = sub.add_parser("dist-check", help="per-divisor residual term counts")
    dc.add_argument("--n", type=int, required=True)
    dc.add_argument("--input", default="-")
    dc.add_argument("--correction", default="letter", choices=CORRECTION_MODES)
    return ap


def cmd_verify(args) -> int:
    if args.list:
        for name in SUITE_IDS:
            print(f"{name:14s} {SUITE_DOCS[name]}")
        return EXIT_OK
    params = VerifyParams(
        levels=tuple(args.n), degree=args.degree, trials=args.trials, seed=args.seed
    )
    with sabotage(None if args.sabotage == "none" else args.sabotage):
        results = run_suites(args.suite, params)
    failures = [r for r in results if not r.passed]
    if args.json:
        print(json.dumps({
            "schema": SCHEMA_VERSION,
            "suite": args.suite,
            "params": {"levels": list(params.levels), "degree": params.degree,
                       "trials": params.trials, "seed": params.seed},
            "checks": [
                {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
            "passed": not failures,
        }, sort_keys=True, indent=2))
    else:
        for r in results:
            mark = "ok" if r.passed else "FAIL"
            tail = f"  [{r.detail}]" if (r.detail and not r.passed) else ""
            print(f"[{r.suite}] {r.name} ... {mark}{tail}")
        print(f"{len(results)} checks, {len(failures)} failures")
    return EXIT_OK if not failures else EXIT_MATH_FAILURE


def cmd_dim(args) -> int:
    basis = graded_basis(args.n, args.degree, args.algebra, field_name=args.field)
    if args.basis or args.json:
        print(json.dumps({
            "schema": SCHEMA_VERSION,
            "algebra": args.algebra,
            "N": args.n,
            "degree": args.degree,
            "field": args.field,
            "dimension": len(basis),
            "basis": [b.to_dict() for b in basis] if args.basis else None,
        }, sort_keys=True, indent=2))
    else:
        print(len(basis))
    return EXIT_OK


def cmd_check(args) -> int:
    f = _read_series(args.input)
    rep = dmr_report(f, args.algebra, dist_correction=args.dist_correction)
    print(json.dumps(
        {"schema": SCHEMA_VERSION, **rep.to_dict(f.alphabet, f.ctx.N)},
        sort_keys=True, indent=2,
    ))
    return EXIT_OK if rep.member else EXIT_MATH_FAILURE


def cmd_invariants(args) -> int:
    other = "dmr0-muN" if args.variant == "dmr0-N" else "dmr0-N"
    from .dmr import graded_dimension

    inv_dim = descent_dimension(args.n, args.degree, args.variant)
    target = graded_dimension(args.n, args.degree, other)
    basis = invariant_basis_series(args.n, args.degree, args.variant)
    payload = {
        "schema": SCHEMA_VERSION,
        "N": args.n,
        "degree": args.degree,
        "variant": args.variant,
        "invariant_dimension": inv_dim,
        "opposite_form_dimension": target,
        "match": inv_dim == target,
        "basis": [b.to_dict() for b in basis],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"invariant dimension {inv_dim} (opposite rational form: {target})")
        for b in basis:
            print(" ", b.to_json())
    return EXIT_OK if inv_dim == target else EXIT_MATH_FAILURE


def cmd_numeric(args) -> int:
    if args.check == "bridge":
        if not args.k or not args.alpha:
            raise UsageError("bridge needs --k and --alpha")
        result = bridge_check(
            CmzvIndex(tuple(args.k), tuple(args.alpha)), args.n, args.terms, args.tol
        )
    elif args.check == "distribution":
        if args.d is None or not args.k or args.alpha is None:
            raise UsageError("distribution needs --d, --k and --alpha")
        result = distribution_check(
            args.n, args.d, CmzvIndex(tuple(args.k), tuple(args.alpha)),
            args.terms, args.tol,
        )
    else:
        result = stuffle_check(args.n, args.m1, args.m2, args.terms, args.tol)
    result = {"schema": SCHEMA_VERSION, **result}
    print(json.dumps(result, sort_keys=True, indent=2, default=lambda z: [z.real, z.imag]))
    return EXIT_OK if result["pass"] else EXIT_MATH_FAILURE


def cmd_eval(args) -> int:
    f = _read_series(args.input)
    out = apply_descriptor(f, MapDescriptor(args.map, args.param))
    print(out.to_json(indent=2))
    return EXIT_OK


def cmd_dist_check(args) -> int:
    f = _read_series(args.input)
    if f.ctx.N != args.n:
        raise UsageError(f"series has level {f.ctx.N}, flag says {args.n}")
    report = distribution_report(f, correction=args.correction)
    print(json.dumps(
        {"schema": SCHEMA_VERSION, "N": args.n,
         "divisors": {str(k): v for k, v in report.items()}},
        sort_keys=True, indent=2,
    ))
    member = all(v["member"] for v in report.values())
    return EXIT_OK if member else EXIT_MATH_FAILURE


class UsageError(Exception):
    pass


_COMMANDS = {
    "verify": cmd_verify,
    "dim": cmd_dim,
    "check": cmd_check,
    "invariants": cmd_invariants,
    "numeric": cmd_numeric,
    "eval": cmd_eval,
    "dist-check": cmd_dist_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, SizeLimitError, ParseError, DivergentIndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SeriesError, CyclotomicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
