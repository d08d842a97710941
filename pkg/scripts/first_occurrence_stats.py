"""Distribution of the first occurrence index over random cases, per family.

    python3 scripts/first_occurrence_stats.py --cases 200 --seed 3

For each family prints how often n - l0 takes each value, how many cases hit the
search bounds, and whether the spectral index agreed (with --spectral).
"""
from __future__ import annotations

import argparse
from collections import Counter

from descentcalc.cases import generate_random_case
from descentcalc.descent import DescentConfig, first_occurrence
from descentcalc.spectrum import PacketEntry, spectral_first_occurrence
from descentcalc.verify import FAMILIES, case_seed


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=100, help="cases per family")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-dim", type=int, default=None)
    ap.add_argument("--spectral", action="store_true", help="also run the spectral pipeline")
    args = ap.parse_args()

    for family in FAMILIES:
        codim: Counter = Counter()
        limited = disagree = 0
        for i in range(args.cases):
            c = generate_random_case(family, case_seed(args.seed, i), args.max_dim)
            ep = c.enhanced()
            fo = first_occurrence(c.ctx, ep, DescentConfig())
            if fo.ell0 is None:
                limited += 1
            else:
                codim[c.group.dim - fo.ell0] += 1
            if args.spectral:
                fs = spectral_first_occurrence(c.ctx, PacketEntry(ep.phi, ep.mu, c.field.cls(1))).f_s
                disagree += fs != fo.ell0
        dist = " ".join(f"{k}:{v}" for k, v in sorted(codim.items()))
        extra = f" disagree={disagree}" if args.spectral else ""
        print(f"{family:8s} n-l0 {{{dist}}} bound_limited={limited}{extra}")


if __name__ == "__main__":
    main()
