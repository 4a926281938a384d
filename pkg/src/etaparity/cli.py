"""Command-line surface: expand forms, run density scans, verify, emit walks.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or
resource errors.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import density, suites, walks
from .density import PrecisionError
from .genforms import p_r_series
from .level1 import genpoly_series
from .level9 import ABELIAN_CLASSES, abelian_form


@dataclass
class RunConfig:
    """Numeric defaults for the full-scale density run, in one place."""

    precision: int = 2_400_000
    prime_bound: int = 100_000
    coeffs: int = 100
    walk_n: int = 1_000_000
    threads: int = 1


DEFAULTS = RunConfig()

ROUTE_AGREE_TOLERANCE = 0.02


def _parse_r_spec(spec: str) -> list[int]:
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise ValueError("r values must be positive")
    return out


def _expand_series(form: str, n: int):
    if form == "delta":
        return p_r_series(24, n)
    if form == "C":
        return p_r_series(1, n)
    if form == "F":
        from .genforms import f_series
        return f_series(n)
    if form == "pnt":
        from .genforms import eta_product_pnt
        return eta_product_pnt(n)
    if form.startswith("P:"):
        return p_r_series(int(form[2:]), n)
    if form.startswith("alpha:"):
        i = int(form[6:])
        if i not in ABELIAN_CLASSES:
            raise ValueError(f"alpha index must be one of {ABELIAN_CLASSES}")
        return genpoly_series(abelian_form(i).genpoly(), n)
    raise ValueError(f"unknown form {form!r}; use delta|C|F|P:r|alpha:i|pnt")


def cmd_expand(args) -> int:
    series = _expand_series(args.form, args.coeffs)
    support = [int(e) for e in series.support()]
    if args.format == "json":
        print(json.dumps({"form": args.form, "coeffs": args.coeffs,
                          "support": support}))
    else:
        print(" ".join(map(str, support)))
    return 0


def _density_rows(r: int, prime_bound: int):
    direct = density.eta_density_direct(r, prime_bound)
    formula = density.eta_density_formula(r, prime_bound)
    exact = density.eta_density_exact(r)
    routes_ok = abs(direct.value - formula.value) <= ROUTE_AGREE_TOLERANCE
    exact_ok = exact is None or abs(direct.value - exact.value) <= direct.tolerance
    rows = [density.density_report_row(r, prime_bound, "direct", direct),
            density.density_report_row(r, prime_bound, "formula", formula)]
    return rows, routes_ok and exact_ok


def cmd_density(args) -> int:
    r_values = _parse_r_spec(args.r)
    all_rows: list[dict] = []
    ok = True

    def work(r):
        return _density_rows(r, args.prime_bound)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(work, r_values))
    else:
        results = [work(r) for r in r_values]
    for rows, good in results:
        all_rows.extend(rows)
        ok = ok and good

    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump(all_rows, sink, indent=1)
            sink.write("\n")
        elif args.format == "csv":
            writer = csv.DictWriter(sink, fieldnames=density.REPORT_COLUMNS)
            writer.writeheader()
            writer.writerows(all_rows)
        else:
            for row in all_rows:
                exact = f" exact={row['exact']}" if row["exact"] else ""
                sink.write(
                    f"r={row['r']:>4} {row['route']:<7} value={row['value']} "
                    f"~ {row['nearest_dyadic']}{exact}\n")
    finally:
        if args.out:
            sink.close()
    return 0 if ok else 1


def cmd_verify(args) -> int:
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    overall = True
    reports = []
    for name in names:
        fn = suites.SUITES.get(name)
        if fn is None:
            print(f"unknown suite {name!r}; choose from "
                  f"{sorted(suites.SUITES) + ['all']}", file=sys.stderr)
            return 2
        kwargs = {}
        if args.prime_bound is not None and \
                "prime_bound" in inspect.signature(fn).parameters:
            kwargs["prime_bound"] = args.prime_bound
        result = fn(**kwargs)
        reports.append(result.as_dict())
        overall = overall and result.passed
    print(json.dumps(reports if len(reports) > 1 else reports[0], indent=1))
    return 0 if overall else 1


def cmd_walk(args) -> int:
    path = walks.emit_walk(args.kind, args.n, args.out)
    print(f"wrote {args.n} rows to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etaparity",
        description="Mod-2 eta-power coefficient parity: expansions, "
                    "Hecke operators, and density scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print the support of a form")
    p_expand.add_argument("form", help="delta|C|F|P:r|alpha:i|pnt")
    p_expand.add_argument("--coeffs", type=int, default=DEFAULTS.coeffs)
    p_expand.add_argument("--format", choices=("text", "json"), default="text")
    p_expand.set_defaults(func=cmd_expand)

    p_density = sub.add_parser("density", help="empirical/exact parity densities")
    p_density.add_argument("--r", required=True,
                           help="single value, range a..b, or comma list")
    p_density.add_argument("--prime-bound", type=int,
                           default=DEFAULTS.prime_bound)
    p_density.add_argument("--format", choices=("csv", "json", "text"),
                           default="text")
    p_density.add_argument("--out", default=None)
    p_density.add_argument("--threads", type=int, default=DEFAULTS.threads)
    p_density.set_defaults(func=cmd_density)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True,
                          help=f"one of {sorted(suites.SUITES)} or 'all'")
    p_verify.add_argument("--prime-bound", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_walk = sub.add_parser("walk", help="emit a parity random walk as CSV")
    p_walk.add_argument("--kind", choices=walks.WALK_KINDS, default="all")
    p_walk.add_argument("--n", type=int, default=DEFAULTS.walk_n)
    p_walk.add_argument("--out", required=True)
    p_walk.set_defaults(func=cmd_walk)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PrecisionError, MemoryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
