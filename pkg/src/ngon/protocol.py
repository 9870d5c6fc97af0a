"""The robot program.

Every decision function receives the observed positions (in the observer's
own frame) and the observer's position among them, and returns a target
point. Staying put is expressed by returning ``me`` unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from .election import (circle_configuration, elect_on_circle, is_prime, nearest_index,
                       three_robot_case)
from .errors import (GeometryError, PhaseError, PreconditionError,
                     ProtocolError, UnsupportedNError)
from .geometry import (TAU, Circle, Point, as_points, check_distinct, dist,
                       fit_common_circle, is_regular_ngon, leave_one_out_residuals,
                       smallest_enclosing_circle)
from .words import DEFAULT_TOL, Tolerance


class Phase(str, Enum):
    NGON = "NGon"
    ORIENTED = "Oriented"
    ON_CIRCLE = "OnCircle"
    ARBITRARY = "Arbitrary"


def check_supported_n(n: int) -> None:
    if n < 2 or (n >= 4 and not is_prime(n)):
        raise UnsupportedNError(f"n must be 2, 3 or a prime >= 5, got {n}")


# --- oriented configurations -----------------------------------------------------------

@dataclass(frozen=True)
class OrientedView:
    """Everything a robot derives from an oriented configuration.

    Robots are referred to by their index in ``positions``.
    """

    positions: Tuple[Point, ...]
    c_o: Circle
    r_o: int
    p1: Point
    ps: Tuple[Point, ...]
    frs: Tuple[int, ...]
    free_positions: Tuple[Point, ...]
    efr: Tuple[int, ...] = ()
    assoc: Dict[int, Point] = field(default_factory=dict)

    @property
    def r_o_position(self) -> Point:
        return self.positions[self.r_o]

    def ccw_arc(self, p: Point) -> float:
        return (self.c_o.polar_angle(p) - self.c_o.polar_angle(self.p1)) % TAU

    def cw_arc(self, p: Point) -> float:
        return (-self.ccw_arc(p)) % TAU


def find_final_pos(c_o: Circle, p1: Point, n: int, tol: Tolerance = DEFAULT_TOL) -> Tuple[Point, ...]:
    """The n vertices of the target polygon on ``c_o``, first one ``p1``.

    Vertex k sits at angle 2(k-1)π/n from ``p1`` so that all n are distinct.
    """
    if not c_o.on_boundary(p1, tol):
        raise GeometryError(f"{p1} is not on the boundary of {c_o}")
    theta = c_o.polar_angle(p1)
    return (p1,) + tuple(c_o.point_at(theta + TAU * k / n) for k in range(1, n))


def _ray_point(c: Circle, p: Point) -> Point:
    d = dist(p, c.center)
    return Point(c.center.x + c.radius * (p.x - c.center.x) / d,
                 c.center.y + c.radius * (p.y - c.center.y) / d)


def _occupied(p: Point, positions: Sequence[Point], tol: Tolerance) -> bool:
    return any(dist(p, q) <= tol.eps_pos for q in positions)


def oriented_view(observed: Sequence[Point], n: int, tol: Tolerance = DEFAULT_TOL) -> Optional[OrientedView]:
    """The oriented reading of ``observed``, or None if it is not oriented."""
    pts = tuple(as_points(observed))
    if n < 5 or len(pts) != n:
        return None
    found = []
    screen = leave_one_out_residuals(pts)
    for i in range(n):
        if screen[i] > 100 * tol.eps_pos:
            continue
        others = pts[:i] + pts[i + 1:]
        c = fit_common_circle(others, tol)
        if c is None or c.is_degenerate(tol):
            continue
        r = pts[i]
        if not c.strictly_inside(r, tol) or dist(r, c.center) <= tol.eps_pos:
            continue
        p1 = _ray_point(c, r)
        if _occupied(p1, others, tol):
            continue
        found.append((i, c, p1))
    if not found:
        return None
    if len(found) > 1:
        raise ProtocolError(f"{len(found)} robots qualify as the interior robot")
    r_o, c_o, p1 = found[0]
    ps = find_final_pos(c_o, p1, n, tol)
    targets = ps[1:]
    frs = tuple(i for i in range(n)
                if i != r_o and not _occupied(pts[i], targets, tol))
    circle_robots = [pts[i] for i in range(n) if i != r_o]
    free_positions = tuple(p for p in targets if not _occupied(p, circle_robots, tol))
    if len(frs) != len(free_positions):
        raise ProtocolError(f"{len(frs)} free robots but {len(free_positions)} free positions")
    view = OrientedView(pts, c_o, r_o, p1, ps, frs, free_positions)
    if frs:
        view = replace(view, efr=elect_free_robots(view))
        view = replace(view, assoc=associate(view))
    return view


def _closest_each_way(view: OrientedView, items, key_point):
    cw = min(items, key=lambda it: view.cw_arc(key_point(it)))
    ccw = min(items, key=lambda it: view.ccw_arc(key_point(it)))
    return cw, ccw


def elect_free_robots(view: OrientedView) -> Tuple[int, ...]:
    """The free robot closest to ``p1`` in each direction (one if they coincide).

    Returned as ``(clockwise_closest, counterclockwise_closest)``.
    """
    if not view.frs:
        raise PreconditionError("no free robots to elect")
    cw, ccw = _closest_each_way(view, view.frs, lambda i: view.positions[i])
    return (cw,) if cw == ccw else (cw, ccw)


def associate(view: OrientedView) -> Dict[int, Point]:
    if not view.efr:
        raise PreconditionError("no elected robots to associate")
    if len(view.efr) == 1:
        if len(view.free_positions) != 1:
            raise ProtocolError("one elected robot but several free positions")
        return {view.efr[0]: view.free_positions[0]}
    cw_pos, ccw_pos = _closest_each_way(view, view.free_positions, lambda p: p)
    cw_robot, ccw_robot = view.efr
    return {cw_robot: cw_pos, ccw_robot: ccw_pos}


# --- classification ------------------------------------------------------------------

def _classify(pts, n, tol):
    if len(pts) != n:
        raise PreconditionError(f"expected {n} positions, got {len(pts)}")
    check_supported_n(n)
    check_distinct(pts, tol)
    if n == 2 or is_regular_ngon(pts, tol, gap_tol=tol.eps_gon):
        return Phase.NGON, None
    view = oriented_view(pts, n, tol)
    if view is not None:
        return Phase.ORIENTED, view
    c = fit_common_circle(pts, tol)
    if c is not None and not c.is_degenerate(tol):
        return Phase.ON_CIRCLE, c
    return Phase.ARBITRARY, None


def classify(config: Sequence[Point], n: int, tol: Tolerance = DEFAULT_TOL) -> Phase:
    return _classify(as_points(config), n, tol)[0]


# --- moves -------------------------------------------------------------------------------

def phi_oriented(observed: Sequence[Point], me: Point, n: int,
                 tol: Tolerance = DEFAULT_TOL, view: Optional[OrientedView] = None) -> Point:
    pts = as_points(observed)
    if view is None:
        view = oriented_view(pts, n, tol)
        if view is None:
            raise PhaseError("configuration is not oriented")
    i = nearest_index(pts, me, tol)
    if not view.frs:
        return view.p1 if i == view.r_o else me
    if i in view.assoc:
        return view.assoc[i]
    return me


def phi_circle_step(observed: Sequence[Point], me: Point, tol: Tolerance = DEFAULT_TOL) -> Point:
    """Stand-in circle-gathering rule: project radially onto the enclosing circle.

    The enclosing circle is unchanged by such moves, so repeated activation
    puts everyone on its boundary.
    """
    pts = as_points(observed)
    i = nearest_index(pts, me, tol)
    sec = smallest_enclosing_circle(pts)
    o, radius = sec.center, sec.radius
    if sec.on_boundary(me, tol):
        return me
    others = pts[:i] + pts[i + 1:]
    d = dist(me, o)
    if d <= tol.eps_pos:
        target = Point(o.x + radius / 2, o.y)
        return me if _occupied(target, others, tol) else target
    target = _ray_point(sec, me)
    ux, uy = (target.x - me.x), (target.y - me.y)
    seg2 = ux * ux + uy * uy
    for q in others:
        # a robot further out on my own ray goes first
        if dist(q, o) <= d or sec.on_boundary(q, tol):
            continue
        t = ((q.x - me.x) * ux + (q.y - me.y) * uy) / seg2
        if 0 < t < 1 and dist(q, Point(me.x + t * ux, me.y + t * uy)) <= tol.eps_pos:
            return me
    delta = TAU / (1000 * len(pts))
    theta = sec.polar_angle(target)
    for k in range(1000 * len(pts)):
        if not _occupied(target, others, tol):
            return target
        target = sec.point_at(theta + (k + 1) * delta)
    raise ProtocolError("no free boundary point found for the circle stand-in")


def phi_ngon(observed: Sequence[Point], me: Point, n: int, tol: Tolerance = DEFAULT_TOL) -> Point:
    if n < 5 or not is_prime(n):
        raise UnsupportedNError(f"the polygon protocol needs a prime n >= 5, got {n}")
    pts = as_points(observed)
    phase, extra = _classify(pts, n, tol)
    if phase is Phase.NGON:
        return me
    if phase is Phase.ORIENTED:
        return phi_oriented(pts, me, n, tol, view=extra)
    if phase is Phase.ON_CIRCLE:
        cc = circle_configuration(pts, tol, circle=extra)
        leader = elect_on_circle(cc, tol)
        if dist(leader, me) > tol.eps_pos:
            return me
        o = extra.center
        return Point((o.x + me.x) / 2, (o.y + me.y) / 2)
    return phi_circle_step(pts, me, tol)


def equilateral_apex(a: Point, b: Point, left: bool) -> Point:
    """Third vertex of the equilateral triangle on base a->b, left or right of it."""
    mx, my = (a.x + b.x) / 2, (a.y + b.y) / 2
    h = math.sqrt(3) / 2
    px, py = -(b.y - a.y) * h, (b.x - a.x) * h
    return Point(mx + px, my + py) if left else Point(mx - px, my - py)


def phi_3gon(observed: Sequence[Point], me: Point, tol: Tolerance = DEFAULT_TOL) -> Point:
    pts = as_points(observed)
    if len(pts) != 3:
        raise PreconditionError(f"three-robot protocol got {len(pts)} robots")
    check_distinct(pts, tol)
    if is_regular_ngon(pts, tol, gap_tol=tol.eps_gon):
        return me
    case, leader = three_robot_case(pts, tol)
    i = nearest_index(pts, me, tol)
    if i != leader:
        return me
    a, b = [pts[k] for k in range(3) if k != i]
    if case == "collinear":
        # the line is a mirror of the whole configuration, so any side works:
        # take the left of the base scanned from its lexicographically smaller end
        if (b.x, b.y) < (a.x, a.y):
            a, b = b, a
        return equilateral_apex(a, b, left=True)
    cross = (b.x - a.x) * (me.y - a.y) - (b.y - a.y) * (me.x - a.x)
    return equilateral_apex(a, b, left=cross > 0)


def decide(observed: Sequence[Point], me: Point, n: int, tol: Tolerance = DEFAULT_TOL) -> Point:
    """Dispatch to the rule for ``n`` robots."""
    check_supported_n(n)
    if n == 2:
        return me
    if n == 3:
        return phi_3gon(observed, me, tol)
    return phi_ngon(observed, me, n, tol)

