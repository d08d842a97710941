"""Run every verification suite family by family and write a summary table.

    python3 scripts/sweep.py --cases 100 --seed 1 --out sweep.json

Prints a markdown table (suite x family: cases, violations, seconds) and writes
the raw reports to --out.
"""
from __future__ import annotations

import argparse
import json

from descentcalc.verify import FAMILIES, SUITES, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=50, help="cases per (suite, family)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--suites", nargs="*", default=list(SUITES), choices=list(SUITES))
    ap.add_argument("--out", help="write the raw reports as JSON")
    args = ap.parse_args()

    rows, raw = [], []
    for suite in args.suites:
        for family in FAMILIES:
            rep = run_suite(suite, args.cases, args.seed, args.jobs, families=(family,))
            raw.append({"family": family, **rep.to_json()})
            stats = ", ".join(f"{k}={v}" for k, v in sorted(rep.stats.items()))
            rows.append(f"| {suite} | {family} | {rep.cases} | {len(rep.violations)} | "
                        f"{rep.wall_time:.1f} | {stats} |")
            print(rows[-1], flush=True)

    print("\n| suite | family | cases | violations | seconds | stats |")
    print("|---|---|---|---|---|---|")
    print("\n".join(rows))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"seed": args.seed, "reports": raw}, fh, indent=2, sort_keys=True)
    if any(r["violations"] for r in raw):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
