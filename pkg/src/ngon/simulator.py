"""Semi-synchronous execution of the protocol.

Each round the scheduler activates a nonempty set of robots. Every active
robot looks at the same snapshot through its own randomly drawn similarity
frame, computes a target there, and all moves land at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (FairnessViolationError, GenerationError, ModelViolationError,
                     PreconditionError)
from .geometry import (TAU, Circle, Configuration, Point, SimilarityFrame, as_points,
                       check_distinct, dist, is_regular_ngon, smallest_enclosing_circle)
from .protocol import Phase, check_supported_n, classify, decide
from .words import DEFAULT_TOL, Tolerance


class SchedulerKind(str, Enum):
    ROUND_ROBIN = "roundrobin"
    RANDOM_SUBSET = "random"
    SCRIPTED = "scripted"


@dataclass(frozen=True)
class SimParams:
    n: int
    max_rounds: int = 1000
    seed: int = 0
    scheduler_kind: SchedulerKind = SchedulerKind.ROUND_ROBIN
    fairness_window: int = 0          # 0 means n
    randomize_frames: bool = True
    tol: Tolerance = DEFAULT_TOL
    script: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        check_supported_n(self.n)
        object.__setattr__(self, "scheduler_kind", SchedulerKind(self.scheduler_kind))
        if self.fairness_window == 0:
            object.__setattr__(self, "fairness_window", self.n)
        if self.max_rounds < 1:
            raise ValueError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.fairness_window < 1:
            raise ValueError(f"fairness_window must be >= 1, got {self.fairness_window}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.scheduler_kind is SchedulerKind.ROUND_ROBIN and self.fairness_window < self.n:
            raise ValueError("fairness_window must be >= n for round-robin scheduling")
        if self.scheduler_kind is SchedulerKind.SCRIPTED:
            if not self.script:
                raise ValueError("script is required by the scripted scheduler")
            object.__setattr__(self, "script", tuple(tuple(r) for r in self.script))

    def to_dict(self) -> dict:
        return {
            "n": self.n, "max_rounds": self.max_rounds, "seed": self.seed,
            "scheduler": self.scheduler_kind.value, "fairness_window": self.fairness_window,
            "randomize_frames": self.randomize_frames,
            "tolerances": {"eps_angle": self.tol.eps_angle, "eps_pos": self.tol.eps_pos,
                           "eps_gon": self.tol.eps_gon},
            "script": [list(r) for r in self.script] if self.script else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimParams":
        tol = Tolerance(**d.get("tolerances", {}))
        script = d.get("script")
        return cls(n=int(d["n"]), max_rounds=int(d.get("max_rounds", 1000)),
                   seed=int(d.get("seed", 0)),
                   scheduler_kind=SchedulerKind(d.get("scheduler", "roundrobin")),
                   fairness_window=int(d.get("fairness_window") or 0),
                   randomize_frames=bool(d.get("randomize_frames", True)), tol=tol,
                   script=tuple(tuple(int(i) for i in r) for r in script) if script else None)


@dataclass(frozen=True)
class RoundRecord:
    round: int
    activated: Tuple[int, ...]
    positions_before: Tuple[Point, ...]
    positions_after: Tuple[Point, ...]
    phase: Phase
    frames: Tuple[SimilarityFrame, ...] = ()


@dataclass(frozen=True)
class Outcome:
    converged: bool
    round: Optional[int] = None

    @property
    def label(self) -> str:
        return "Converged" if self.converged else "MaxRoundsExceeded"


@dataclass
class Trace:
    params: SimParams
    initial: Tuple[Point, ...]
    rounds: List[RoundRecord] = field(default_factory=list)
    outcome: Outcome = Outcome(False)

    def states(self) -> List[Tuple[Point, ...]]:
        """Configuration at t_0, t_1, ..., one per executed round plus the initial."""
        return [self.initial] + [r.positions_after for r in self.rounds]

    @property
    def final(self) -> Tuple[Point, ...]:
        return self.rounds[-1].positions_after if self.rounds else self.initial


# --- schedulers ------------------------------------------------------------------------

def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def make_scheduler(kind, seed: int, n: int, K: int,
                   script: Optional[Sequence[Sequence[int]]] = None) -> Iterator[Tuple[int, ...]]:
    """Infinite stream of activation sets (sorted index tuples)."""
    kind = SchedulerKind(kind)
    if kind is SchedulerKind.ROUND_ROBIN:
        return (((t % n),) for t in _count())
    if kind is SchedulerKind.RANDOM_SUBSET:
        return _random_subsets(_rng(seed, 0), n, K)
    if not script:
        raise ValueError("scripted scheduler needs a nonempty script")
    return _scripted(script, n)


def _count():
    t = 0
    while True:
        yield t
        t += 1


def _random_subsets(rng: np.random.Generator, n: int, K: int):
    idle = [0] * n
    while True:
        # uniform over the 2^n - 1 nonempty subsets
        while True:
            bits = rng.integers(0, 2, size=n)
            if bits.any():
                break
        chosen = {i for i in range(n) if bits[i] or idle[i] >= K - 1}
        for i in range(n):
            idle[i] = 0 if i in chosen else idle[i] + 1
        yield tuple(sorted(chosen))


def _scripted(script, n: int):
    t = 0
    while True:
        for row in script:
            t += 1
            row = tuple(sorted(set(int(i) for i in row)))
            if not row:
                raise FairnessViolationError(f"scripted round {t} activates no robot")
            if any(not 0 <= i < n for i in row):
                raise ModelViolationError(f"scripted round {t} names a robot outside 0..{n - 1}")
            yield row


# --- execution ----------------------------------------------------------------------------

def draw_frame(rng: np.random.Generator, config: Sequence[Point]) -> SimilarityFrame:
    xs = [p.x for p in config]
    ys = [p.y for p in config]
    rotation = float(rng.uniform(0.0, TAU))
    scale = float(rng.uniform(0.5, 2.0))
    reflected = bool(rng.integers(0, 2))
    translation = Point(float(rng.uniform(min(xs), max(xs))), float(rng.uniform(min(ys), max(ys))))
    return SimilarityFrame(rotation, scale, translation, reflected)


def step(config: Sequence[Point], activated: Sequence[int], params: SimParams,
         frames: Optional[Sequence[SimilarityFrame]] = None) -> Configuration:
    """One round: every active robot decides on the same snapshot, then all move."""
    pts = as_points(config)
    if not activated:
        raise ModelViolationError("a round must activate at least one robot")
    if any(not 0 <= i < len(pts) for i in activated):
        raise ModelViolationError(f"activation {tuple(activated)} names an unknown robot")
    if frames is None:
        frames = [SimilarityFrame()] * len(activated)
    new = list(pts)
    for i, frame in zip(activated, frames):
        local = [frame.to_local(p) for p in pts]
        target = decide(local, local[i], params.n, params.tol)
        if target != local[i]:
            new[i] = frame.from_local(target)
    return new


def is_converged(config: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> bool:
    return is_regular_ngon(config, tol, gap_tol=tol.eps_gon)


def run(initial: Sequence[Point], params: SimParams) -> Trace:
    pts = as_points(initial)
    if len(pts) != params.n:
        raise PreconditionError(f"initial configuration has {len(pts)} robots, expected {params.n}")
    check_distinct(pts, params.tol)
    trace = Trace(params, tuple(pts))
    if is_converged(pts, params.tol):
        trace.outcome = Outcome(True, 0)
        return trace
    sched = make_scheduler(params.scheduler_kind, params.seed, params.n,
                           params.fairness_window, params.script)
    frame_rng = _rng(params.seed, 1)
    config = pts
    for t in range(params.max_rounds):
        activated = next(sched)
        if params.randomize_frames:
            frames = tuple(draw_frame(frame_rng, config) for _ in activated)
        else:
            frames = tuple(SimilarityFrame() for _ in activated)
        phase = classify(config, params.n, params.tol)
        after = step(config, activated, params, frames)
        try:
            check_distinct(after, params.tol)
        except Exception as exc:
            raise ModelViolationError(f"round {t} produced coincident robots") from exc
        trace.rounds.append(RoundRecord(t, tuple(activated), tuple(config), tuple(after),
                                        phase, frames))
        config = after
        if is_converged(config, params.tol):
            trace.outcome = Outcome(True, t + 1)
            return trace
    trace.outcome = Outcome(False)
    return trace


def replay_round(record: RoundRecord, params: SimParams) -> Tuple[Point, ...]:
    return tuple(step(record.positions_before, record.activated, params, record.frames))


def fairness_violations(trace: Trace) -> List[Tuple[int, int]]:
    """``(window_start, robot)`` for every K-round window missing some robot."""
    K, n = trace.params.fairness_window, trace.params.n
    acts = [set(r.activated) for r in trace.rounds]
    bad = []
    for start in range(0, len(acts) - K + 1):
        seen = set().union(*acts[start:start + K])
        bad.extend((start, i) for i in range(n) if i not in seen)
    return bad


# --- configuration generators ------------------------------------------------------------

def _angular_ok(points: Sequence[Point], min_angle: float, min_letter_sep: float) -> bool:
    sec = smallest_enclosing_circle(points)
    if any(dist(p, sec.center) <= 1e-6 * max(sec.radius, 1.0) for p in points):
        return False
    angles = sorted(sec.polar_angle(p) for p in points)
    n = len(angles)
    gaps = sorted((angles[(k + 1) % n] - angles[k]) % TAU for k in range(n))
    if gaps[0] < min_angle:
        return False
    return all(b - a >= min_letter_sep for a, b in zip(gaps, gaps[1:]))


def random_config(n: int, seed: int, min_sep: float = 0.05, extent: float = 10.0,
                  max_tries: int = 10_000) -> Configuration:
    """n points uniform in ``[0, extent]^2``, pairwise at least ``min_sep`` apart.

    For n >= 3 the draw is also rejected when two points sit at nearly the
    same angle around the enclosing circle's center, or when two of the
    resulting gap angles nearly coincide.
    """
    if n < 2:
        raise PreconditionError(f"need at least 2 robots, got {n}")
    if not min_sep > 0:
        raise PreconditionError("min_sep must be > 0")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        pts: Configuration = []
        for _ in range(max_tries):
            p = Point(*map(float, rng.uniform(0.0, extent, size=2)))
            if all(dist(p, q) >= min_sep for q in pts):
                pts.append(p)
                if len(pts) == n:
                    break
        if len(pts) < n:
            break
        if n < 3 or _angular_ok(pts, 1e-3, 1e-6):
            return pts
    raise GenerationError(f"could not place {n} robots with separation {min_sep} in {extent}")


def random_gaps(n: int, rng: np.random.Generator, alphabet: Optional[int] = None,
                min_sep: float = 1e-6) -> Tuple[float, ...]:
    """Gap angles summing to 2π that are not all equal.

    With ``alphabet=k`` the gaps use at most k distinct letters (each an
    integer multiple of a common unit), which exercises repeated letters;
    otherwise the gaps are continuous and pairwise at least ``min_sep`` apart.
    """
    while True:
        if alphabet:
            weights = rng.integers(1, alphabet + 1, size=n)
            if (weights == weights[0]).all():
                continue
            gaps = weights * (TAU / weights.sum())
            return tuple(float(g) for g in gaps)
        raw = rng.uniform(0.2, 1.0, size=n)
        gaps = raw * (TAU / raw.sum())
        s = np.sort(gaps)
        if np.diff(s).min() >= min_sep:
            return tuple(float(g) for g in gaps)


def random_circle(rng: np.random.Generator, extent: float = 10.0) -> Circle:
    return Circle(Point(*map(float, rng.uniform(-extent, extent, size=2))),
                  float(rng.uniform(0.5, extent)))


def random_oriented_config(n: int, rng: np.random.Generator,
                           placed_fraction: Optional[float] = None) -> Configuration:
    """An oriented configuration with some circle robots already on final positions.

    The interior robot is last in the returned list.
    """
    c = random_circle(rng)
    theta0 = float(rng.uniform(0, TAU))
    frac = float(rng.uniform(0.1, 0.9))
    r_o = Point(c.center.x + math.cos(theta0) * c.radius * frac,
                c.center.y + math.sin(theta0) * c.radius * frac)
    finals = [theta0 + TAU * k / n for k in range(1, n)]
    if placed_fraction is None:
        placed_fraction = float(rng.uniform(0, 1))
    placed = int(round(placed_fraction * (n - 1)))
    chosen = list(rng.choice(n - 1, size=placed, replace=False)) if placed else []
    angles = [finals[k] for k in chosen]
    forbidden = [theta0] + finals
    while len(angles) < n - 1:
        a = float(rng.uniform(0, TAU))
        if all(abs(math.remainder(a - b, TAU)) > 1e-2 for b in forbidden + angles):
            angles.append(a)
    pts = [c.point_at(a) for a in angles]
    return pts + [r_o]
