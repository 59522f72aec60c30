"""paley-clique command line.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds, runner
from .config import DEFAULT, Config
from .errors import EmptyCache, PaleyError

log = logging.getLogger("paley_clique")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _range(args, single_ok: bool = False) -> tuple[int, int]:
    if args.range:
        lo, hi = args.range
    elif args.lo is not None:
        lo = args.lo
        hi = args.hi if args.hi is not None else (lo if single_ok else None)
        if hi is None:
            raise UsageError("give LO HI or --range LO HI")
    else:
        raise UsageError("give LO HI or --range LO HI")
    if not 5 <= lo <= hi:
        raise UsageError(f"invalid range [{lo}, {hi}]: need 5 <= LO <= HI")
    if hi > args.cap:
        raise UsageError(f"HI = {hi} exceeds the range cap {args.cap} (raise with --cap)")
    return lo, hi


def _orders(args, single_ok=False) -> list[int]:
    lo, hi = _range(args, single_ok)
    qs = runner.admissible_orders(lo, hi, prime_powers=args.prime_powers, even_k=args.even_k)
    if not qs:
        raise UsageError(f"no admissible order in [{lo}, {hi}]")
    return qs


def cmd_compute(args) -> int:
    qs = _orders(args)
    cached = {r.q: r for r in runner.read_cache(args.cache)}
    todo = [q for q in qs if args.force or q not in cached]
    done: dict[int, runner.ResultRow] = {}
    log.info("%d orders in range, %d to compute", len(qs), len(todo))
    try:
        if args.jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for row in pool.map(runner.analyze_row, todo):
                    done[row.q] = row
        else:
            for q in todo:
                done[q] = runner.analyze_row(q)
                log.info("q=%d s=%d nodes=%d", q, done[q].s_exact, done[q].nodes_explored)
    except KeyboardInterrupt:
        runner.write_cache(args.cache, list({**cached, **done}.values()))
        print(f"interrupted; {len(done)} completed rows flushed to {args.cache}", file=sys.stderr)
        return 130
    merged = {**cached, **done}
    runner.write_cache(args.cache, list(merged.values()))
    runner.format_rows([merged[q] for q in qs], sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    qs = _orders(args, single_ok=True)
    config = Config(naive_cap=args.naive_cap)
    all_checks = []
    for q in qs:
        graph = None
        if args.inject_fault:
            _, _, g = runner.build_all(q, config)
            graph = g.with_flipped_bit(0, 1)
        all_checks.extend(runner.verify_order(q, config, graph))

    width = max(len(c.name) for c in all_checks)
    for c in all_checks:
        status = {True: "PASS", False: "FAIL", None: "skip"}[c.passed]
        print(f"{c.q:>6}  {c.name:<{width}}  {status}  {c.detail}")
    failed = [c for c in all_checks if c.passed is False]
    passed = sum(c.passed is True for c in all_checks)
    skipped = sum(c.passed is None for c in all_checks)
    print(f"{len(qs)} orders, {passed} passed, {len(failed)} failed, {skipped} skipped")
    if failed:
        first = failed[0]
        print(f"first failure: q = {first.q}, {first.name}: {first.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.limit < 13:
        raise UsageError("limit must be at least 13")
    counts = bounds.classification_counts(args.limit)
    total = sum(counts.values())
    frac = bounds.improvement_fraction(args.limit)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["classification", "count", "fraction"])
        for c in bounds.CLASSES:
            w.writerow([c, counts[c], f"{counts[c] / total:.6f}"])
        w.writerow(["improved", sum(counts[c] for c in bounds.IMPROVED), f"{float(frac):.6f}"])
    else:
        print(f"primes p = 1 mod 4, p <= {args.limit}: {total}")
        for c in bounds.CLASSES:
            print(f"  {c:<20} {counts[c]:>8}  {counts[c] / total:.4f}")
        improved = sum(counts[c] for c in bounds.IMPROVED)
        print(f"improved fraction: {improved}/{total} = {float(frac):.4f}")
    return EXIT_OK


def cmd_plotdata(args) -> int:
    rows = runner.plot_rows(runner.read_cache(args.cache))
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if v is None else v for k, v in r.items()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paley-clique", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def range_args(p):
        p.add_argument("lo", type=int, nargs="?")
        p.add_argument("hi", type=int, nargs="?")
        p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
        p.add_argument("--prime-powers", action="store_true", help="include q = p^k with k odd")
        p.add_argument("--even-k", action="store_true", help="include q = p^k with k even (no theorem checks)")
        p.add_argument("--cap", type=int, default=DEFAULT.range_cap)

    p = sub.add_parser("compute", help="exact s(q) plus profile and bounds, cached as CSV")
    range_args(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", default="paley_cache.csv")
    p.add_argument("--force", action="store_true", help="recompute rows already in the cache")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run every invariant check")
    range_args(p)
    p.add_argument("--naive-cap", type=int, default=DEFAULT.naive_cap)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="bucket primes by which bound case applies")
    p.add_argument("limit", type=int)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("plotdata", help="plot-ready CSV from the cache")
    p.add_argument("--cache", default="paley_cache.csv")
    p.set_defaults(func=cmd_plotdata)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, EmptyCache) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PaleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
