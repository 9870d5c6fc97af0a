"""ngon command line: generate, simulate, batch, lyndon, elect, render.

Exit codes: 0 converged / ok, 1 input error, 2 round budget exceeded,
3 not applicable (e.g. election on a configuration that is already a polygon).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import List, Optional

from . import io
from .election import circle_configuration, election_report, is_prime, three_robot_case
from .errors import NgonError
from .protocol import Phase, check_supported_n, classify
from .render import render_trace
from .simulator import SchedulerKind, SimParams, random_config, run
from .words import Tolerance, is_lyndon, is_minimal, is_primitive, minimality_witness

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_NA = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _env_seed() -> Optional[int]:
    raw = os.environ.get("NGON_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise io.ConfigError("NGON_SEED", f"not an integer: {raw!r}") from None


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int)
    p.add_argument("--scheduler", choices=[k.value for k in SchedulerKind])
    p.add_argument("--fairness-window", type=int)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--eps-angle", type=float)
    p.add_argument("--eps-pos", type=float)
    p.add_argument("--frames", dest="frames", action="store_true", default=None,
                   help="randomize each robot's local frame (default)")
    p.add_argument("--no-frames", dest="frames", action="store_false")


def _override(cfg: io.RunConfig, args) -> io.RunConfig:
    p = cfg.params
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.scheduler is not None:
        changes["scheduler_kind"] = SchedulerKind(args.scheduler)
    if args.fairness_window is not None:
        changes["fairness_window"] = args.fairness_window
    if args.max_rounds is not None:
        changes["max_rounds"] = args.max_rounds
    if args.frames is not None:
        changes["randomize_frames"] = args.frames
    if args.eps_angle is not None or args.eps_pos is not None:
        changes["tol"] = Tolerance(
            p.tol.eps_angle if args.eps_angle is None else args.eps_angle,
            p.tol.eps_pos if args.eps_pos is None else args.eps_pos,
            p.tol.eps_gon)
    if not changes:
        return cfg
    try:
        return replace(cfg, params=replace(p, **changes))
    except ValueError as exc:
        raise io.ConfigError(str(exc).split(" ")[0], str(exc)) from None


def _initial(cfg: io.RunConfig):
    if cfg.positions is not None:
        return cfg.positions
    return random_config(cfg.params.n, cfg.params.seed, cfg.min_sep, cfg.extent)


# --- commands ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else (_env_seed() or 0)
    check_supported_n(args.n)
    params = SimParams(n=args.n, seed=seed, max_rounds=args.max_rounds or 50 * args.n)
    pts = random_config(args.n, seed, args.min_sep, args.extent)
    text = io.dump_run_config(io.RunConfig(params, pts, args.min_sep, args.extent))
    if args.out:
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _override(io.load_run_config(args.config, _env_seed()), args)
    trace = run(_initial(cfg), cfg.params)
    if args.out:
        io.save_trace(trace, args.out)
    timeline = " -> ".join(f"{ph}[{a}-{b}]" for ph, a, b in io.phase_timeline(trace))
    print(f"n={cfg.params.n} seed={cfg.params.seed} scheduler={cfg.params.scheduler_kind.value}")
    print(f"phases: {timeline or '(none)'}")
    if trace.outcome.converged:
        print(f"outcome: Converged at round {trace.outcome.round}")
        return EXIT_OK
    print(f"outcome: MaxRoundsExceeded after {cfg.params.max_rounds} rounds")
    return EXIT_BUDGET


def _parse_word(tokens: List[str]) -> List[float]:
    letters = []
    for tok in tokens:
        for part in tok.split():
            try:
                letters.append(float(part))
            except ValueError:
                raise io.ConfigError("word", f"unparseable letter {part!r}") from None
    return letters


def cmd_lyndon(args) -> int:
    tol = Tolerance(eps_angle=args.eps)
    w = _parse_word(args.word)
    lyn = is_lyndon(w, tol)
    print(f"lyndon: {str(lyn).lower()}")
    if not w:
        print("primitive: n/a\nminimal: n/a")
        return EXIT_OK
    print(f"primitive: {str(is_primitive(w, tol)).lower()}")
    print(f"minimal: {str(is_minimal(w, tol)).lower()}")
    witness = minimality_witness(w, tol)
    if witness is not None:
        print(f"witness rotation: {witness}")
    return EXIT_OK


def cmd_elect(args) -> int:
    cfg = io.load_run_config(args.config, _env_seed())
    pts = _initial(cfg)
    n, tol = cfg.params.n, cfg.params.tol
    phase = classify(pts, n, tol)
    if phase is Phase.NGON:
        print("no election needed: robots already form a regular polygon")
        return EXIT_NA
    if n == 3:
        case, i = three_robot_case(pts, tol)
        print(f"case: {case}")
        print(f"leader: [{pts[i].x!r}, {pts[i].y!r}]")
        return EXIT_OK
    if phase is not Phase.ON_CIRCLE:
        _err(f"election needs robots on a common circle, configuration is {phase.value}")
        return EXIT_INPUT
    rep = election_report(circle_configuration(pts, tol), tol)
    a, b = rep.holders.forward_holder, rep.holders.backward_holder
    print(f"forward holder: [{a.x!r}, {a.y!r}]")
    print(f"backward holder: [{b.x!r}, {b.y!r}]")
    print(f"side counts: {rep.side_counts[0]} {rep.side_counts[1]}")
    print(f"leader: [{rep.leader.x!r}, {rep.leader.y!r}]")
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        trace = io.load_trace(args.trace)
    except (OSError, NgonError) as exc:
        _err(f"cannot read trace: {exc}")
        return EXIT_INPUT
    paths = render_trace(trace, args.out, args.every)
    print(f"wrote {len(paths)} frames to {args.out}")
    return EXIT_OK


def _parse_seeds(tokens: List[str]) -> List[int]:
    seeds = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                if ".." in part:
                    lo, hi = part.split("..")
                    seeds.extend(range(int(lo), int(hi) + 1))
                else:
                    seeds.append(int(part))
            except ValueError:
                raise io.ConfigError("seeds", f"bad seed spec {part!r}") from None
    return seeds


def _batch_one(job):
    n, seed, kind, max_rounds, frames = job
    params = SimParams(n=n, seed=seed, scheduler_kind=kind, max_rounds=max_rounds,
                       randomize_frames=frames)
    trace = run(random_config(n, seed), params)
    return n, seed, trace.outcome.label, trace.outcome.round


def cmd_batch(args) -> int:
    for n in args.n:
        if n < 2 or (n >= 4 and not is_prime(n)):
            _err(f"unsupported n = {n}: must be 2, 3 or a prime >= 5")
            return EXIT_INPUT
    seeds = _parse_seeds(args.seeds)
    frames = True if args.frames is None else args.frames
    jobs = [(n, s, args.scheduler, args.max_rounds or 50 * max(n, 2), frames)
            for n in args.n for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_batch_one, jobs))
    else:
        rows = [_batch_one(j) for j in jobs]
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "seed", "scheduler", "outcome", "rounds"])
    for n, seed, label, rnd in rows:
        w.writerow([n, seed, args.scheduler, label, "" if rnd is None else rnd])
    if args.out:
        io.write_atomic(args.out, buf.getvalue())
    print(f"{'n':>4} {'runs':>5} {'conv':>5} {'min':>5} {'median':>7} {'max':>5}")
    for n in args.n:
        rs = [r for m, _, lab, r in rows if m == n and lab == "Converged"]
        total = sum(1 for m, *_ in rows if m == n)
        if rs:
            print(f"{n:>4} {total:>5} {len(rs):>5} {min(rs):>5} {statistics.median(rs):>7} {max(rs):>5}")
        else:
            print(f"{n:>4} {total:>5} {0:>5} {'-':>5} {'-':>7} {'-':>5}")
    return EXIT_OK if all(lab == "Converged" for _, _, lab, _ in rows) else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ngon", description="Circle formation of weak robots")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a run config with random initial positions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--min-sep", type=float, default=0.05)
    p.add_argument("--extent", type=float, default=10.0)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("simulate", help="run one simulation and write its trace")
    p.add_argument("config")
    p.add_argument("--out")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("lyndon", help="test a word of real letters")
    p.add_argument("word", nargs="*", help="letters, space separated")
    p.add_argument("--eps", type=float, default=1e-9)
    p.set_defaults(func=cmd_lyndon)

    p = sub.add_parser("elect", help="report the leader of a configuration")
    p.add_argument("config")
    p.set_defaults(func=cmd_elect)

    p = sub.add_parser("render", help="write SVG frames of a trace")
    p.add_argument("trace")
    p.add_argument("--out", required=True)
    p.add_argument("--every", type=int, default=1)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("batch", help="run many seeds and summarize rounds to converge")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--seeds", nargs="+", default=["0..9"], help="e.g. 0..9 or 1 2 3")
    p.add_argument("--scheduler", choices=["roundrobin", "random"], default="roundrobin")
    p.add_argument("--max-rounds", type=int, help="default 50*n")
    p.add_argument("--frames", dest="frames", action="store_true", default=None)
    p.add_argument("--no-frames", dest="frames", action="store_false")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.ConfigError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except (NgonError, ValueError, OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
