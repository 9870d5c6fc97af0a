"""Run-config and trace file formats.

A run config is one JSON document. A trace is JSON Lines: a header record,
one record per round, and a closing outcome record. Floats are written with
Python's shortest round-trip repr, so parsing gives back identical values.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Tuple

from .errors import NgonError, UnsupportedNError
from .geometry import Point, SimilarityFrame, as_points, check_distinct
from .protocol import Phase
from .simulator import Outcome, RoundRecord, SchedulerKind, SimParams, Trace
from .words import Tolerance

TRACE_VERSION = 1


class ConfigError(NgonError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class TraceFormatError(NgonError, ValueError):
    pass


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- run config ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    params: SimParams
    positions: Optional[List[Point]] = None
    min_sep: float = 0.05
    extent: float = 10.0

    def to_dict(self) -> dict:
        d = self.params.to_dict()
        d["positions"] = [[p.x, p.y] for p in self.positions] if self.positions else None
        d["min_sep"] = self.min_sep
        d["extent"] = self.extent
        return d


def _get(d: dict, key: str, kind, default=None, check=None):
    if key not in d or d[key] is None:
        return default
    value = d[key]
    try:
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError
            out = value
        elif kind is int:
            if isinstance(value, bool) or not float(value).is_integer():
                raise TypeError
            out = int(value)
        else:
            out = kind(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"expected {kind.__name__}, got {value!r}") from None
    if check is not None and not check(out):
        raise ConfigError(key, f"invalid value {value!r}")
    return out


def parse_run_config(d: Any, seed_fallback: Optional[int] = None) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("<document>", "expected a JSON object")
    n = _get(d, "n", int)
    positions = None
    if d.get("positions") is not None:
        raw = d["positions"]
        try:
            positions = as_points(raw)
            if any(len(p) != 2 for p in raw) or not all(
                    math.isfinite(c) for p in positions for c in p):
                raise ValueError
        except (TypeError, ValueError, IndexError):
            raise ConfigError("positions", "expected a list of [x, y] pairs") from None
        if n is None:
            n = len(positions)
        if len(positions) != n:
            raise ConfigError("positions", f"{len(positions)} positions but n = {n}")
    if n is None:
        raise ConfigError("n", "missing")
    seed = _get(d, "seed", int)
    if seed is None:
        seed = seed_fallback if seed_fallback is not None else 0
    tol_d = d.get("tolerances") or {}
    if not isinstance(tol_d, dict):
        raise ConfigError("tolerances", "expected an object")
    try:
        tol = Tolerance(**{k: float(v) for k, v in tol_d.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError("tolerances", str(exc)) from None
    scheduler = d.get("scheduler", "roundrobin")
    try:
        kind = SchedulerKind(scheduler)
    except ValueError:
        raise ConfigError("scheduler", f"unknown scheduler {scheduler!r}") from None
    script = d.get("script")
    if script is not None:
        try:
            script = tuple(tuple(int(i) for i in row) for row in script)
        except (TypeError, ValueError):
            raise ConfigError("script", "expected a list of index lists") from None
    max_rounds = _get(d, "max_rounds", int, 1000)
    fairness_window = _get(d, "fairness_window", int, 0)
    randomize_frames = _get(d, "randomize_frames", bool, True)
    try:
        params = SimParams(n=n, max_rounds=max_rounds, seed=seed, scheduler_kind=kind,
                           fairness_window=fairness_window, randomize_frames=randomize_frames,
                           tol=tol, script=script)
    except UnsupportedNError as exc:
        raise ConfigError("n", str(exc)) from None
    except ValueError as exc:
        field = str(exc).split(" ")[0]
        raise ConfigError(field, str(exc)) from None
    if positions is not None:
        try:
            check_distinct(positions, tol)
        except NgonError as exc:
            raise ConfigError("positions", str(exc)) from None
    return RunConfig(params, positions,
                     _get(d, "min_sep", float, 0.05, lambda v: v > 0),
                     _get(d, "extent", float, 10.0, lambda v: v > 0))


def load_run_config(path, seed_fallback: Optional[int] = None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("<file>", str(exc)) from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"not valid JSON: {exc}") from None
    return parse_run_config(d, seed_fallback)


def dump_run_config(cfg: RunConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2) + "\n"


# --- trace -------------------------------------------------------------------------------------

def _pts(points) -> list:
    return [[p.x, p.y] for p in points]


def emit_trace(trace: Trace) -> str:
    lines = [json.dumps({"type": "header", "version": TRACE_VERSION,
                         "params": trace.params.to_dict(),
                         "initial": _pts(trace.initial)})]
    for r in trace.rounds:
        lines.append(json.dumps({
            "type": "round", "round": r.round, "activated": list(r.activated),
            "positions": _pts(r.positions_after), "phase": r.phase.value,
            "frames": [f.to_dict() for f in r.frames],
        }))
    lines.append(json.dumps({"type": "outcome", "status": trace.outcome.label,
                             "round": trace.outcome.round}))
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> Trace:
    records = []
    for k, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"line {k}: {exc}") from None
    if len(records) < 2 or records[0].get("type") != "header" or records[-1].get("type") != "outcome":
        raise TraceFormatError("trace must start with a header and end with an outcome record")
    head = records[0]
    try:
        params = SimParams.from_dict(head["params"])
        initial = tuple(as_points(head["initial"]))
        trace = Trace(params, initial)
        before = initial
        for k, rec in enumerate(records[1:-1]):
            if rec.get("type") != "round" or rec["round"] != k:
                raise TraceFormatError(f"round record {k} out of sequence")
            after = tuple(as_points(rec["positions"]))
            trace.rounds.append(RoundRecord(
                k, tuple(int(i) for i in rec["activated"]), before, after, Phase(rec["phase"]),
                tuple(SimilarityFrame.from_dict(f) for f in rec.get("frames", []))))
            before = after
        tail = records[-1]
        if tail["status"] not in ("Converged", "MaxRoundsExceeded"):
            raise TraceFormatError(f"unknown outcome {tail['status']!r}")
        trace.outcome = Outcome(tail["status"] == "Converged", tail.get("round"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TraceFormatError):
            raise
        raise TraceFormatError(f"malformed trace: {exc}") from None
    return trace


def load_trace(path) -> Trace:
    return parse_trace(Path(path).read_text(encoding="utf-8"))


def save_trace(trace: Trace, path) -> None:
    write_atomic(path, emit_trace(trace))


def phase_timeline(trace: Trace) -> List[Tuple[str, int, int]]:
    """Runs of equal phase labels as ``(phase, first_round, last_round)``."""
    out: List[Tuple[str, int, int]] = []
    for r in trace.rounds:
        if out and out[-1][0] == r.phase.value:
            out[-1] = (out[-1][0], out[-1][1], r.round)
        else:
            out.append((r.phase.value, r.round, r.round))
    return out
