"""Brute-force check of the Lyndon holders on random circle configurations.

For every configuration all 2n strings of angles are tested; a violation is
anything other than exactly one forward holder, exactly one backward holder,
and two distinct holders.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter

import numpy as np

from ngon.election import circle_configuration, election_report, string_of_angles
from ngon.geometry import TAU, circle_points_from_gaps
from ngon.simulator import random_circle, random_gaps
from ngon.words import Tolerance, is_lyndon


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 7, 11, 13])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--alphabets", type=int, nargs="*", default=[0, 2, 3, 4],
                    help="0 means continuous gaps")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    tol = Tolerance()
    rng = np.random.default_rng(args.seed)
    violations = 0
    start = time.perf_counter()
    for n in args.n:
        sides = Counter()
        for k in range(args.count):
            alphabet = args.alphabets[k % len(args.alphabets)] or None
            gaps = random_gaps(n, rng, alphabet=alphabet, min_sep=10 * tol.eps_angle)
            pts = circle_points_from_gaps(gaps, random_circle(rng), float(rng.uniform(0, TAU)))
            cc = circle_configuration(pts, tol)
            fwd = [i for i in range(n) if is_lyndon(string_of_angles(cc, i + 1, True), tol)]
            bwd = [i for i in range(n) if is_lyndon(string_of_angles(cc, i + 1, False), tol)]
            if len(fwd) != 1 or len(bwd) != 1 or fwd == bwd:
                violations += 1
                continue
            sides[tuple(sorted(election_report(cc, tol).side_counts))] += 1
        common = ", ".join(f"{a}+{b}: {c}" for (a, b), c in sides.most_common(4))
        print(f"n={n:>2}  {args.count} configs  side splits {common}")
    print(f"violations: {violations}  ({time.perf_counter() - start:.2f} s)")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
