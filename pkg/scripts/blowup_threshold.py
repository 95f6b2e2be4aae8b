#!/usr/bin/env python3
"""Table of clique vs chromatic number for the apexed five-cycle blow-up.

The gap opens at t = 3: omega = 2t+1 keeps pace while chi = ceil(5t/2)
overtakes it, giving the smallest member (16 vertices) of this family with
omega != chi.
"""

import argparse
import sys

from qpkit.families import c5_blowup_with_apex
from qpkit.invariants import chromatic_number, clique_number


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=int, default=3)
    args = ap.parse_args()

    print(f"{'t':>2} {'n':>4} {'omega':>6} {'chi':>4}  gap")
    for t in range(1, args.t_max + 1):
        g = c5_blowup_with_apex(t)
        omega = clique_number(g)
        chi = chromatic_number(g)
        mark = "  <-- omega != chi" if omega != chi else ""
        print(f"{t:>2} {g.n:>4} {omega:>6} {chi:>4}{mark}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
