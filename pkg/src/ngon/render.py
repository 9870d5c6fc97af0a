"""Static SVG frames of a trace.

Robots are filled dots, the detected circle is drawn as an outline, target
polygon vertices are hollow markers, and the elected robot is highlighted.
Element classes (``robot``, ``leader``, ``interior``, ``final-position``,
``detected-circle``) make the frames easy to inspect programmatically.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Sequence

from .election import circle_configuration, elect_on_circle, is_prime, three_robot_case
from .errors import NgonError
from .geometry import Circle, Point, fit_common_circle, smallest_enclosing_circle
from .io import write_atomic
from .protocol import Phase, classify, oriented_view
from .simulator import Trace
from .words import DEFAULT_TOL, Tolerance

SIZE = 480
MARGIN = 24


class _Viewport:
    def __init__(self, states: Sequence[Sequence[Point]]):
        xs = [p.x for s in states for p in s]
        ys = [p.y for s in states for p in s]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-12)
        self.k = (SIZE - 2 * MARGIN) / span

    def xy(self, p: Point):
        return MARGIN + (p.x - self.x0) * self.k, MARGIN + (self.y1 - p.y) * self.k

    def length(self, r: float) -> float:
        return r * self.k


def _leader_index(points, phase, n, tol) -> Optional[int]:
    try:
        if n == 3 and phase is not Phase.NGON:
            return three_robot_case(points, tol)[1]
        if phase is Phase.ON_CIRCLE and n >= 5 and is_prime(n):
            cc = circle_configuration(points, tol)
            leader = elect_on_circle(cc, tol)
            return min(range(n), key=lambda i: (points[i].x - leader.x) ** 2 + (points[i].y - leader.y) ** 2)
    except NgonError:
        return None
    return None


def render_state(points: Sequence[Point], phase: Phase, vp: _Viewport, label: str = "",
                 tol: Tolerance = DEFAULT_TOL) -> str:
    n = len(points)
    circle: Optional[Circle] = None
    circle_class = "detected-circle"
    markers: List[Point] = []
    leader: Optional[int] = None
    interior: Optional[int] = None
    if phase is Phase.ORIENTED:
        view = oriented_view(points, n, tol)
        if view is not None:
            circle, markers, interior = view.c_o, list(view.ps), view.r_o
    elif phase in (Phase.NGON, Phase.ON_CIRCLE) and n >= 3:
        circle = fit_common_circle(points, tol)
        if phase is Phase.NGON:
            markers = list(points)
    if circle is None and n >= 2:
        circle, circle_class = smallest_enclosing_circle(points), "enclosing-circle"
    if interior is None:
        leader = _leader_index(points, phase, n, tol)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}" data-phase="{phase.value}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if circle is not None:
        cx, cy = vp.xy(circle.center)
        dash = ' stroke-dasharray="4 3"' if circle_class == "enclosing-circle" else ""
        out.append(f'<circle class="{circle_class}" cx="{cx:.3f}" cy="{cy:.3f}" '
                   f'r="{vp.length(circle.radius):.3f}" fill="none" stroke="#888"{dash}/>')
        out.append(f'<circle class="center" cx="{cx:.3f}" cy="{cy:.3f}" r="1.5" fill="#888"/>')
    for p in markers:
        x, y = vp.xy(p)
        out.append(f'<circle class="final-position" cx="{x:.3f}" cy="{y:.3f}" r="8" '
                   f'fill="none" stroke="#1f77b4" stroke-width="1.5"/>')
    for i, p in enumerate(points):
        x, y = vp.xy(p)
        cls, color = "robot", "black"
        if i == interior:
            cls, color = "robot leader interior", "#d62728"
        elif i == leader:
            cls, color = "robot leader", "#d62728"
        out.append(f'<circle class="{cls}" cx="{x:.3f}" cy="{y:.3f}" r="4.5" fill="{color}"/>')
    if label:
        out.append(f'<text x="8" y="{SIZE - 8}" font-family="monospace" font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_trace(trace: Trace, out_dir, every: int = 1) -> List[Path]:
    """One SVG per ``every`` states (t_0, t_every, ...); returns the written paths."""
    if every < 1:
        raise ValueError("every must be >= 1")
    states = trace.states()
    vp = _Viewport(states)
    tol = trace.params.tol
    width = max(5, len(str(len(states))))
    out_dir = Path(out_dir)
    paths = []
    for s in range(0, len(states), every):
        if s < len(trace.rounds):
            phase = trace.rounds[s].phase
        else:
            phase = classify(states[s], trace.params.n, tol)
        path = out_dir / f"frame_{s:0{width}d}.svg"
        write_atomic(path, render_state(states[s], phase, vp, f"t={s} {phase.value}", tol))
        paths.append(path)
    return paths
