#!/usr/bin/env python3
"""Run randomized soundness campaigns over every verifier family.

Draws certified random instances, runs all applicable inequality
verifiers, and reports pass/fail counts with the minimum observed slack.
Any failure is a bug somewhere (generator, certifier, or verifier), so
this doubles as a long-running regression harness.

Example:
    python3 scripts/run_stress.py --trials 500 --seed 1 --out stress.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from hhcert.convexity import GridSpec
from hhcert.expr import Interval
from hhcert.search import StressConfig, stress, summary_to_dict

CAMPAIGNS = (
    ("ordinary convex pairs", {"alpha_pool": (1.0,), "m_pool": (1.0,)}),
    ("scaled classes", {"alpha_pool": (0.5, 0.75, 1.0),
                        "m_pool": (0.5, 0.75, 1.0)}),
    ("mean orders", {"alpha_pool": (), "m_pool": (),
                     "r_pool": (-1.0, 0.0, 1.0, 2.0)}),
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200, help="trials per campaign")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--grid-xy", type=int, default=33)
    ap.add_argument("--grid-lambda", type=int, default=65)
    ap.add_argument("--out", help="write the combined JSON summary here")
    args = ap.parse_args(argv)

    grid = GridSpec(args.grid_xy, args.grid_lambda)
    interval = Interval(args.a, args.b)
    combined = {}
    failures = 0
    for i, (name, pools) in enumerate(CAMPAIGNS):
        cfg = StressConfig(seed=args.seed + i, trials=args.trials,
                           intervals=(interval,), grid=grid, **pools)
        start = time.monotonic()
        summary = stress(cfg)
        elapsed = time.monotonic() - start
        combined[name] = summary_to_dict(summary)
        fails = sum(st.fails for st in summary.verifiers.values())
        failures += fails
        print(f"== {name} ({args.trials} trials, {elapsed:.1f}s, "
              f"{summary.rejected_candidates} rejected candidates)")
        for tid, st in summary.verifiers.items():
            slack = "    -" if st.min_slack is None else f"{st.min_slack:.3e}"
            print(f"  {tid:18s} pass={st.passes:5d} fail={st.fails:5d} "
                  f"skipped={st.skips:5d} min_slack={slack}")
        if summary.worst_failure is not None:
            print(f"  worst failure: {summary.worst_failure}")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(combined, fh, indent=2)
        print(f"wrote {args.out}")
    if failures:
        print(f"{failures} FAILURES", file=sys.stderr)
        return 1
    print("all campaigns sound")
    return 0


if __name__ == "__main__":
    sys.exit(main())
