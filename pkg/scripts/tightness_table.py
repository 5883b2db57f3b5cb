#!/usr/bin/env python3
"""Tabulate how tight the dominance bounds are across (alpha, m).

For a fixed pair of expressions the slack of each bound varies with the
class parameters; this prints the full table and flags the tightest
cell per bound.  Use --csv to feed the raw table to other tools.

Example:
    python3 scripts/tightness_table.py --f "0.5*x^2" --g "1.5*x^2" \
        --alpha-list 0.25,0.5,0.75,1 --m-list 0.5,1
"""

from __future__ import annotations

import argparse
import math
import sys

from hhcert.expr import Interval, parse
from hhcert.search import scan_csv, tightness_scan


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--f", default="0.5*x^2")
    ap.add_argument("--g", default="1.5*x^2")
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--alpha-list", default="0.25,0.5,0.75,1")
    ap.add_argument("--m-list", default="0.25,0.5,0.75,1")
    ap.add_argument("--csv", action="store_true", help="raw CSV on stdout")
    args = ap.parse_args(argv)

    alphas = tuple(float(v) for v in args.alpha_list.split(","))
    ms = tuple(float(v) for v in args.m_list.split(","))
    rows = tightness_scan(parse(args.f), parse(args.g),
                          Interval(args.a, args.b), alphas, ms)

    if args.csv:
        sys.stdout.write(scan_csv(rows))
        return 0

    print(f"f = {args.f}    g = {args.g}    on [{args.a}, {args.b}]")
    print(f"{'alpha':>8} {'m':>8} {'theorem':>10} {'slack':>14} status")
    tightest: dict[str, tuple[float, float, float]] = {}
    for row in rows:
        status = "skipped" if row.skipped else ("holds" if row.holds else "FAILS")
        slack = "     -" if math.isnan(row.slack) else f"{row.slack:14.6e}"
        print(f"{row.alpha:8.4g} {row.m:8.4g} {row.theorem_id:>10} {slack} {status}")
        if not row.skipped:
            best = tightest.get(row.theorem_id)
            if best is None or row.slack < best[2]:
                tightest[row.theorem_id] = (row.alpha, row.m, row.slack)
    print()
    for tid, (alpha, m, slack) in tightest.items():
        print(f"tightest {tid}: slack {slack:.6e} at alpha={alpha:g}, m={m:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
