#!/usr/bin/env python3
"""Search for diagrams whose extreme-state psi values sum past 2 - g.

The trivial-circle bound says a connected mod-2 trivial diagram that
fills its genus has at most n + 1 - g trivial circles across the two
extreme resolutions.  A natural sharpening would bound the psi values
of the all-positive and all-negative resolutions by psi+ + psi- <= 2 - g.
This script drives the generator's experimental search for violations
of that candidate bound over connected, genus-filling, mod-2 trivial
template diagrams.  Finding violations is the expected outcome at
genus >= 3, not a bug: the candidate bound is not a theorem.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kbdiag.diagram import serialize
from kbdiag.gen import GenSpec, psi_extreme_violations


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--genus-min", type=int, default=1)
    ap.add_argument("--genus-max", type=int, default=3)
    ap.add_argument("--show", type=int, default=3,
                    help="print at most this many violating diagrams per genus")
    args = ap.parse_args()

    grand = 0
    for genus in range(args.genus_min, args.genus_max + 1):
        started = time.time()
        spec = GenSpec(max_crossings=args.n_max, genus=genus)
        violations = list(psi_extreme_violations(spec))
        grand += len(violations)
        print(f"genus {genus}: violations of psi+ + psi- <= {2 - genus}: "
              f"{len(violations)} ({time.time() - started:.1f}s)")
        for plus, minus, d in violations[:args.show]:
            print(f"  psi+ = {plus}, psi- = {minus}, "
                  f"sum {plus + minus} > {2 - genus}, "
                  f"n = {len(d.crossings)}")
            for line in serialize(d).splitlines():
                print(f"    {line}")
    print(f"total violations: {grand}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
