"""Random activations from oriented configurations: does the orientation survive?

Each successor must either still be oriented around the same circle and
interior robot, or already be the regular polygon.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from ngon.geometry import dist
from ngon.protocol import Phase, classify, oriented_view
from ngon.simulator import SimParams, draw_frame, random_oriented_config, step
from ngon.words import Tolerance


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 7, 11, 13])
    ap.add_argument("--configs", type=int, default=200)
    ap.add_argument("--subsets", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    tol = Tolerance()
    rng = np.random.default_rng(args.seed)
    bad = polygons = 0
    for k in range(args.configs):
        n = args.n[k % len(args.n)]
        pts = random_oriented_config(n, rng)
        view = oriented_view(pts, n, tol)
        for _ in range(args.subsets):
            act = [i for i in range(n) if rng.integers(0, 2)] or [int(rng.integers(0, n))]
            new = step(pts, act, SimParams(n=n), [draw_frame(rng, pts) for _ in act])
            if classify(new, n, tol) is Phase.NGON:
                polygons += 1
                continue
            nv = oriented_view(new, n, tol)
            if (nv is None or nv.r_o != view.r_o
                    or dist(nv.c_o.center, view.c_o.center) > tol.eps_pos
                    or abs(nv.c_o.radius - view.c_o.radius) > tol.eps_pos):
                bad += 1
    total = args.configs * args.subsets
    print(f"{total} successors: {total - bad - polygons} oriented, {polygons} polygons, {bad} violations")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
