"""Command-line front end: series expansion, MO coefficients, claim
verification, residue search, and the identity suite.

Exit codes are a stable contract: 0 success (and Verified), 1 a claim was
Refuted or an identity check failed, 2 usage or parse errors.  JSON output
carries coefficients as decimal strings since exact values overflow 64-bit
integers routinely.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from multiprocessing import Pool

from .qseries import EXACT, TruncatedSeries, modular
from .etaquotients import FAMILY_QUOTIENTS, FamilyName, parse_eta_quotient, expand_quotient
from .mo import SUPPORTED_A, MOParams, u_series
from .congruences import (
    CSV_HEADER,
    CongruenceClaim,
    THEOREM_CATALOG,
    appendix_identity_suite,
    catalog_lookup,
    verify_catalog,
    verify_claim,
)
from .cache import CacheKey, cache_get, cache_put

CACHE_ENV_VAR = "MOSUMS_CACHE_DIR"


class UsageError(Exception):
    pass


def _emit_series(series: TruncatedSeries, fmt: str) -> None:
    if fmt == "json":
        payload = {
            "ring": series.ring.descriptor(),
            "order": series.order,
            "coefficients": [str(c) for c in series.coeffs],
        }
        print(json.dumps(payload))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "coefficient"])
        for i, c in enumerate(series.coeffs):
            w.writerow([i, str(c)])
    else:
        print(" ".join(str(c) for c in series.coeffs))


def _ring(args: argparse.Namespace):
    return modular(args.mod) if args.mod is not None else EXACT


def cmd_series(args: argparse.Namespace) -> int:
    token = args.spec.strip()
    if token in FamilyName.__members__:
        eq = FAMILY_QUOTIENTS[FamilyName[token]]
    else:
        try:
            eq = parse_eta_quotient(token)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ring = _ring(args)
    series = None
    key = CacheKey.for_eta(eq, ring, args.order)
    if args.cache_dir:
        series = cache_get(args.cache_dir, key)
    if series is None:
        series = expand_quotient(eq, ring, args.order)
        if args.cache_dir:
            cache_put(args.cache_dir, key, series)
    _emit_series(series, args.format)
    return 0


def cmd_mo(args: argparse.Namespace) -> int:
    if args.method == "identity" and args.a not in SUPPORTED_A:
        raise UsageError(f"identity path needs a in {SUPPORTED_A}; use --method definition")
    try:
        params = MOParams(args.a, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ring = _ring(args)
    series = None
    key = CacheKey.for_mo(args.a, args.t, args.method, ring, args.order)
    if args.cache_dir:
        series = cache_get(args.cache_dir, key)
    if series is None:
        series = u_series(params, ring, args.order, method=args.method)
        if args.cache_dir:
            cache_put(args.cache_dir, key, series)
    _emit_series(series, args.format)
    return 0


def _emit_reports(reports, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([r.json_dict() for r in reports], indent=2))
    elif fmt == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(CSV_HEADER)
        for r in reports:
            w.writerow(r.csv_row())
    else:
        for r in reports:
            line = f"{r.claim.name}: {r.verdict}"
            if r.counterexample is not None:
                j, n, value = r.counterexample
                line += f"  counterexample J={j} N={n} value={value}"
            ms = round(r.elapsed_seconds * 1000)
            line += f"  [{r.claim.describe()}; n_max={r.n_max}, order={r.series_order_used}, {ms} ms]"
            print(line)


def _verify_one(name: str, j_max: int | None, n_max: int | None):
    return verify_claim(THEOREM_CATALOG[name], j_max, n_max)


def cmd_verify(args: argparse.Namespace) -> int:
    inline_flags = args.a is not None or args.t is not None or args.A is not None
    if args.name is not None and inline_flags:
        raise UsageError("give either a claim name or inline --a/--t/--A/--B/--mod, not both")
    if args.name is None and not inline_flags:
        raise UsageError("nothing to verify: give a claim name, 'all', or an inline claim")

    if args.name is None:
        for flag, value in (("--a", args.a), ("--t", args.t), ("--A", args.A), ("--B", args.B), ("--mod", args.mod)):
            if value is None:
                raise UsageError(f"inline claims need {flag}")
        try:
            claim = CongruenceClaim(
                name=f"inline.a{args.a}.t{args.t}{'+' + str(args.t_step) + 'J' if args.t_step else ''}."
                f"{args.A}N+{args.B}.m{args.mod}",
                a=args.a,
                t_base=args.t,
                t_step=args.t_step,
                step=args.A,
                offset=args.B,
                modulus=args.mod,
                expect_zero_exactly=args.expect_zero,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        reports = [verify_claim(claim, args.jmax, args.nmax)]
    else:
        if args.name == "all":
            names = sorted(THEOREM_CATALOG)
        else:
            try:
                names = [cl.name for cl in catalog_lookup(args.name)]
            except KeyError as exc:
                raise UsageError(exc.args[0]) from None
        if args.jobs > 1:
            with Pool(args.jobs) as pool:
                reports = pool.starmap(_verify_one, [(nm, args.jmax, args.nmax) for nm in names])
            reports = sorted(reports, key=lambda r: r.claim.name)
        else:
            reports = verify_catalog(
                j_max=args.jmax, n_max=args.nmax, names=names, cache_dir=args.cache_dir or None
            )
    _emit_reports(reports, args.format)
    return 0 if all(r.verdict == "Verified" for r in reports) else 1


def cmd_search(args: argparse.Namespace) -> int:
    if args.a not in SUPPORTED_A:
        raise UsageError(f"search uses the identity path; a must be in {SUPPORTED_A}")
    from .congruences import search

    results = search(args.a, args.t, args.mod, args.A, args.nmax)
    if args.format == "json":
        rows = [
            {"B": r.offset, "candidate": r.candidate, "first_fail_n": r.first_fail_n, "status": r.status()}
            for r in results
        ]
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["B", "candidate", "first_fail_n", "status"])
        for r in results:
            w.writerow([r.offset, r.candidate, "" if r.first_fail_n is None else r.first_fail_n, r.status()])
    else:
        for r in results:
            print(f"B={r.offset}: {r.status()}")
    return 0


def cmd_appendix(args: argparse.Namespace) -> int:
    checks = appendix_identity_suite(args.order)
    if args.format == "json":
        rows = [{"name": c.name, "passed": c.passed, "first_diff": c.first_diff} for c in checks]
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["name", "passed", "first_diff"])
        for c in checks:
            w.writerow([c.name, c.passed, "" if c.first_diff is None else c.first_diff])
    else:
        for c in checks:
            print(f"{c.name}: {'pass' if c.passed else f'FAIL (first difference at {c.first_diff})'}")
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mosums", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument(
        "--cache-dir",
        default=os.environ.get(CACHE_ENV_VAR),
        help=f"series cache directory (default: ${CACHE_ENV_VAR})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="expand an eta quotient or family")
    p.add_argument("spec", help="eta-quotient text like 'f2 f1^-2' or a family name (P, POD, OVERP, B3BAR, PMINUS3)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("mo", parents=[common], help="coefficients MO(a, t; 0..N)")
    p.add_argument("a", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=["identity", "definition"], default="identity")
    p.add_argument("--mod", type=int, default=None)
    p.set_defaults(func=cmd_mo)

    p = sub.add_parser("verify", parents=[common], help="verify catalog or inline congruence claims")
    p.add_argument("name", nargs="?", default=None, help="claim name, group prefix, or 'all'")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--t-step", type=int, default=0, dest="t_step")
    p.add_argument("--A", type=int, default=None)
    p.add_argument("--B", type=int, default=None)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--expect-zero", action="store_true", dest="expect_zero")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--jmax", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="scan residues B for MO(a,t;AN+B) == 0 (mod m)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("appendix", parents=[common], help="run the series identity suite")
    p.add_argument("--order", type=int, default=300)
    p.set_defaults(func=cmd_appendix)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
