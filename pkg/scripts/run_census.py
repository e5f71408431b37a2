#!/usr/bin/env python3
"""Walk the template censuses and tabulate the theorem verdicts.

For every genus up to --genus-max, enumerates all template diagrams
with at most --n-max crossings, runs the breadth-identity check on
each, and prints one row per genus plus a total row.  A nonzero exit
means a genuine counterexample: hypotheses satisfied, identity failed.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kbdiag.gen import GenSpec, enumerate_diagrams
from kbdiag.tait import FAIL, INAPPLICABLE, PASS, check_jones_tait


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--genus-max", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    total = {PASS: 0, FAIL: 0, INAPPLICABLE: 0}
    print(f"{'genus':>5} {'diagrams':>9} {'pass':>6} {'fail':>6} "
          f"{'inapplicable':>13} {'seconds':>8}")
    for genus in range(args.genus_max + 1):
        started = time.time()
        counts = {PASS: 0, FAIL: 0, INAPPLICABLE: 0}
        spec = GenSpec(max_crossings=args.n_max, genus=genus)
        for d in enumerate_diagrams(spec):
            verdict = check_jones_tait(d, jobs=args.jobs).verdict
            counts[verdict] += 1
            total[verdict] += 1
        n = sum(counts.values())
        print(f"{genus:>5} {n:>9} {counts[PASS]:>6} {counts[FAIL]:>6} "
              f"{counts[INAPPLICABLE]:>13} {time.time() - started:>8.1f}")
    n = sum(total.values())
    print(f"{'all':>5} {n:>9} {total[PASS]:>6} {total[FAIL]:>6} "
          f"{total[INAPPLICABLE]:>13}")
    return 1 if total[FAIL] else 0


if __name__ == "__main__":
    sys.exit(main())
