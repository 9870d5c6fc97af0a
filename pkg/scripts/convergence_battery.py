"""Rounds-to-convergence over many seeds, schedulers and robot counts.

    python3 scripts/convergence_battery.py --n 5 7 11 13 --seeds 100 --jobs 4 --out battery.csv
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from ngon.simulator import SimParams, random_config, run


def one(job):
    n, kind, seed, frames, budget = job
    params = SimParams(n=n, seed=seed, scheduler_kind=kind, max_rounds=budget * n,
                       randomize_frames=frames)
    t = run(random_config(n, seed), params)
    return n, kind, seed, t.outcome.label, t.outcome.round


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 7, 11, 13])
    ap.add_argument("--seeds", type=int, default=100, help="seeds 0..SEEDS-1")
    ap.add_argument("--schedulers", nargs="+", default=["roundrobin", "random"])
    ap.add_argument("--budget", type=int, default=50, help="round budget per robot")
    ap.add_argument("--no-frames", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", help="optional CSV of every run")
    args = ap.parse_args(argv)

    jobs = [(n, k, s, not args.no_frames, args.budget)
            for n in args.n for k in args.schedulers for s in range(args.seeds)]
    start = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(one, jobs, chunksize=8))
    else:
        rows = [one(j) for j in jobs]
    elapsed = time.perf_counter() - start

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "scheduler", "seed", "outcome", "rounds"])
            w.writerows(rows)

    print(f"{'n':>3} {'scheduler':>10} {'runs':>5} {'conv':>5} {'min':>4} {'median':>7} {'max':>4}")
    for n in args.n:
        for k in args.schedulers:
            rs = [r for m, kk, _, lab, r in rows if m == n and kk == k and lab == "Converged"]
            total = sum(1 for m, kk, *_ in rows if m == n and kk == k)
            stats = (min(rs), statistics.median(rs), max(rs)) if rs else ("-", "-", "-")
            print(f"{n:>3} {k:>10} {total:>5} {len(rs):>5} {stats[0]:>4} {stats[1]:>7} {stats[2]:>4}")
    print(f"{len(rows)} runs in {elapsed:.1f} s")
    return 0 if all(r[3] == "Converged" for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
