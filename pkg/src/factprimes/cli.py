"""Command-line front end.

Commands: decompose, verify, constants, perfecter, scan.  All numeric
output is rendered with fixed 12-significant-digit formatting and '.' as
the decimal point, so identical invocations produce byte-identical output
regardless of locale, platform, or the --jobs setting.

Exit codes: 0 success / all checks hold, 1 a verified inequality failed or
a constant missed its tolerance, 2 bad arguments, 3 resource limits or
unwritable output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import bounds, perfecter, primes
from .errors import DomainError, OutOfRangeError, ResourceLimitError
from .upsilon import upsilon as upsilon_stats
from .upsilon import upsilon_value

DEFAULT_MAX_SIEVE = 20_000_000
MAX_SIEVE_ENV = "FACTPRIMES_MAX_SIEVE"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def fmt(x) -> str:
    """Deterministic 12-significant-digit rendering (ints stay ints)."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        x = float(x)
    return f"{float(x):.12g}"


def _sieve_cap(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(MAX_SIEVE_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{MAX_SIEVE_ENV} must be an integer, got {env!r}") from exc
    return DEFAULT_MAX_SIEVE


def _build_table(needed: int, max_sieve: int | None) -> primes.PrimeTable:
    cap = _sieve_cap(max_sieve)
    if needed > cap:
        raise ResourceLimitError(
            f"request needs a sieve up to {needed}, above the cap {cap} "
            f"(raise --max-sieve or {MAX_SIEVE_ENV})")
    return primes.build_table(max(needed, 2), limit_cap=cap)


def _chunks(items: list[int], n_chunks: int) -> list[list[int]]:
    size = max(1, math.ceil(len(items) / n_chunks))
    return [items[i:i + size] for i in range(0, len(items), size)]


# ---------------------------------------------------------------- decompose

def cmd_decompose(args) -> int:
    if args.n < 2:
        print("decompose needs n >= 2", file=sys.stderr)
        return EXIT_USAGE
    table = _build_table(args.n, args.max_sieve)
    from .valuation import full_decomposition
    profile = full_decomposition(table, args.n)
    res = upsilon_stats(table, args.n)

    if args.format == "json":
        obj = {
            "n": args.n,
            "factors": [[p, v] for p, v in profile],
            "upsilon": res.upsilon,
            "mean": float(fmt(res.mean)),
        }
        print(json.dumps(obj, separators=(",", ":")))
    elif args.format == "csv":
        print("p,v")
        for p, v in profile:
            print(f"{p},{v}")
        print(f"# upsilon={res.upsilon}")
        print(f"# mean={fmt(res.mean)}")
    else:
        width = len(str(profile.entries()[-1][0]))
        print(f"{args.n}! = product of:")
        for p, v in profile:
            print(f"  {p:>{width}} ^ {v}")
        print(f"upsilon({args.n}) = {res.upsilon}")
        print(f"mean exponent = {res.mean_exact.numerator}/{res.mean_exact.denominator}"
              f" = {fmt(res.mean)}")
    return EXIT_OK


# ------------------------------------------------------------------- verify

def _verify_chunk(table, tid, lo, hi, log_samples, constants):
    return bounds.verify_range(table, tid, lo, hi, log_samples=log_samples,
                               constants=constants)


def cmd_verify(args) -> int:
    tid = bounds.resolve_theorem_id(args.theorem)
    n_from, n_to = args.n_from, args.n_to
    if n_from > n_to:
        print(f"empty range [{n_from}, {n_to}]", file=sys.stderr)
        return EXIT_USAGE
    if tid == "S32_perfecter" and n_from < 4:
        print("note: perfecter bounds start at n = 4; clipping range",
              file=sys.stderr)
        n_from = 4
    validity = bounds.THEOREM_VALIDITY[tid]
    table = _build_table(n_to, args.max_sieve)
    constants = bounds.default_constants()

    log_samples = args.log_samples  # None means exhaustive (the default mode)
    if args.jobs > 1 and log_samples is None and n_to - n_from > args.jobs:
        edges = np.linspace(n_from, n_to + 1, args.jobs + 1).astype(int)
        spans = [(int(edges[i]), int(edges[i + 1] - 1)) for i in range(args.jobs)
                 if edges[i] <= edges[i + 1] - 1]
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(
                lambda s: _verify_chunk(table, tid, s[0], s[1], None, constants),
                spans))
        reports = [r for part in parts for r in part[0]]
        summary = bounds.summarize_reports(tid, n_from, n_to, "exhaustive", reports)
    else:
        reports, summary = bounds.verify_range(
            table, tid, n_from, n_to, log_samples=log_samples,
            constants=constants)

    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write("theorem_id,n,lhs,rhs,slack,holds,applicable,marginal\n")
                for r in reports:
                    fh.write(f"{r.theorem_id},{fmt(r.n)},{fmt(r.lhs)},{fmt(r.rhs)},"
                             f"{fmt(r.slack)},{fmt(r.holds)},{fmt(r.applicable)},"
                             f"{fmt(r.marginal)}\n")
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return EXIT_RESOURCE

    skipped = summary.n_checked - summary.n_applicable
    note = f" ({skipped} below the validity window n >= {validity})" if skipped else ""
    print(f"{tid} [{n_from}..{n_to}] {summary.sampling}: "
          f"checked {summary.n_checked}{note}")
    if summary.all_hold:
        print(f"all hold; min slack {fmt(summary.min_slack)} at n={summary.argmin_n}")
        return EXIT_OK
    shown = summary.violations[:20]
    print(f"VIOLATIONS at {len(summary.violations)} point(s): "
          + ", ".join(str(v) for v in shown)
          + (", ..." if len(summary.violations) > len(shown) else ""))
    for r in reports:
        if r.applicable and not r.holds and int(r.n) in shown:
            print(f"  n={int(r.n)}: lhs={fmt(r.lhs)} rhs={fmt(r.rhs)} "
                  f"slack={fmt(r.slack)}")
    return EXIT_VIOLATION


# ---------------------------------------------------------------- constants

def cmd_constants(args) -> int:
    table = bounds.compute_constants()
    names = list(table.entries)
    if args.only:
        wanted = [w.strip() for w in args.only.split(",") if w.strip()]
        unknown = [w for w in wanted if w not in table.entries]
        if unknown:
            print(f"unknown constant name(s): {', '.join(unknown)}", file=sys.stderr)
            return EXIT_USAGE
        names = wanted
    header = f"{'name':<8} {'recomputed':>20} {'tabulated':>16} {'abs_diff':>12}  method"
    print(header)
    worst = 0.0
    for name in names:
        e = table.entries[name]
        worst = max(worst, e.abs_diff)
        print(f"{e.name:<8} {fmt(e.value):>20} {fmt(e.tabulated):>16} "
              f"{fmt(e.abs_diff):>12}  {e.method}")
    ok = worst <= args.tol
    print(f"max |recomputed - defining expression| = {fmt(worst)} "
          f"(tolerance {fmt(args.tol)}) -> {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------- perfecter

def cmd_perfecter(args) -> int:
    if args.n < 1:
        print("perfecter needs n >= 1", file=sys.stderr)
        return EXIT_USAGE
    table = _build_table(max(args.n, 2), args.max_sieve)
    res = perfecter.perfecter_factorial(table, args.n,
                                        exact_max_bits=args.exact_max_bits)
    print(f"perfecter({args.n}!):")
    print(f"  odd-exponent primes ({len(res.odd_primes)}): "
          + (" ".join(str(p) for p in res.odd_primes[:30])
             + (" ..." if len(res.odd_primes) > 30 else "") or "none"))
    print(f"  log value = {fmt(res.log_value)}")
    if res.exact_value is not None:
        print(f"  exact value = {res.exact_value}")
    else:
        print(f"  exact value suppressed (over {args.exact_max_bits} bits; "
              "raise --exact-max-bits)")
    if args.n >= 4:
        lo, hi = perfecter.perfecter_bounds(table, args.n)
        print(f"  lower bound exponent {fmt(lo.rhs)} < log value: {fmt(lo.holds)}")
        print(f"  upper bound exponent {fmt(hi.rhs)} > log value: {fmt(hi.holds)}")
    return EXIT_OK


# --------------------------------------------------------------------- scan

SCAN_HEADER = "n,upsilon,pi,mean,t1_rhs,t1_holds,t4_rhs,t4_holds,c3_rhs,c3_holds,perfecter_log"


def _scan_row(table, constants, n: int) -> str:
    ups = upsilon_value(table, n)
    pin = primes.pi(table, n)
    mean = ups / pin
    t1 = bounds.rhs_t1(n, constants)
    cells = [str(n), str(ups), str(pin), fmt(mean), fmt(t1), fmt(ups < t1)]
    if n >= 3:
        t4 = bounds.rhs_t4(n, constants)
        cells += [fmt(t4), fmt(ups > t4)]
    else:
        cells += ["", ""]
    if n >= bounds.THEOREM_VALIDITY["C3_upper_mean"]:
        c3 = bounds.rhs_c3(n, constants)
        cells += [fmt(c3), fmt(mean < c3)]
    else:
        cells += ["", ""]
    cells.append(fmt(perfecter.perfecter_factorial(table, n).log_value))
    return ",".join(cells)


def cmd_scan(args) -> int:
    if args.n_from < 2 or args.n_from > args.n_to or args.step < 1:
        print("scan needs 2 <= from <= to and step >= 1", file=sys.stderr)
        return EXIT_USAGE
    table = _build_table(args.n_to, args.max_sieve)
    constants = bounds.default_constants()
    points = list(range(args.n_from, args.n_to + 1, args.step))

    if args.jobs > 1 and len(points) > args.jobs:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            row_chunks = list(pool.map(
                lambda chunk: [_scan_row(table, constants, n) for n in chunk],
                _chunks(points, args.jobs)))
        rows = [row for chunk in row_chunks for row in chunk]
    else:
        rows = [_scan_row(table, constants, n) for n in points]

    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(SCAN_HEADER + "\n")
            for row in rows:
                fh.write(row + "\n")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factprimes",
        description="Prime decomposition of n!, exponent-sum statistics, "
                    "explicit bound verification, and minimal square perfecters.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_max_sieve(p):
        p.add_argument("--max-sieve", type=int, default=None, metavar="M",
                       help=f"sieve cap (default {DEFAULT_MAX_SIEVE}, "
                            f"env {MAX_SIEVE_ENV})")

    p = sub.add_parser("decompose", help="prime decomposition of n!")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    add_max_sieve(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check one bound over a range of n")
    p.add_argument("theorem",
                   help="T1 T2 C3 T4 T5 TB2 TB4 PI_LB PI_UB S32 or canonical id")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--log-samples", type=int, default=None, metavar="K",
                      help="check K geometrically spaced points instead")
    p.add_argument("--out", default=None, help="write per-n CSV report here")
    p.add_argument("--jobs", type=int, default=1)
    add_max_sieve(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="recompute the bound constants")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--only", default=None, metavar="NAMES",
                   help="comma-separated subset, e.g. c1,c5,c9,c10")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("perfecter", help="minimal square perfecter of n!")
    p.add_argument("n", type=int)
    p.add_argument("--exact-max-bits", type=int,
                   default=perfecter.DEFAULT_EXACT_MAX_BITS)
    add_max_sieve(p)
    p.set_defaults(func=cmd_perfecter)

    p = sub.add_parser("scan", help="CSV table of per-n statistics")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    add_max_sieve(p)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, OutOfRangeError) as exc:
        print(f"bad request: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
