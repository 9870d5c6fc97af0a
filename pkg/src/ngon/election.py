"""Leader election from strings of angles.

On a circle that is not a regular polygon and carries a prime number of
robots, exactly one robot reads a Lyndon word going forward and exactly one
reads a Lyndon word going backward; they are distinct. The two rays from the
center through them split the others into an odd side and an even side, and
the median of the odd side is the leader.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import (DegeneracyError, ElectionError, GeometryError, NotApplicableError,
                     PreconditionError)
from .geometry import (Circle, Configuration, Point, as_points, check_distinct,
                       circular_order, dist, fit_common_circle, successor_gaps)
from .words import DEFAULT_TOL, Order, Tolerance, Word, compare_letters, is_lyndon, rotation


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


@dataclass(frozen=True)
class CircleConfiguration:
    """Robots on a circle, listed in cyclic order.

    ``gaps[i]`` is the angle at the center between ``points[i]`` and its
    successor ``points[i + 1]`` (the last wraps to the first).
    ``order[i]`` is the index of ``points[i]`` in the caller's sequence.
    """

    circle: Circle
    points: Tuple[Point, ...]
    order: Tuple[int, ...]
    gaps: Word
    clockwise: bool = True

    @property
    def n(self) -> int:
        return len(self.points)


def circle_configuration(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL,
                         clockwise: bool = True,
                         circle: Optional[Circle] = None) -> CircleConfiguration:
    pts = as_points(points)
    check_distinct(pts, tol)
    if circle is None:
        circle = fit_common_circle(pts, tol)
        if circle is None:
            raise GeometryError("points are not on a common circle")
    if circle.is_degenerate(tol):
        raise DegeneracyError(f"degenerate circle {circle}")
    order = circular_order(circle, pts, clockwise, tol)
    gaps = successor_gaps(circle, pts, order, clockwise)
    if min(gaps) <= 0:
        raise DegeneracyError("two robots share an angular position")
    return CircleConfiguration(circle, tuple(pts[i] for i in order), tuple(order),
                               tuple(gaps), clockwise)


def string_of_angles(cc: CircleConfiguration, start: int, forward: bool = True) -> Word:
    """SA(r_start) read forward, or its mirror read backward (1-based ``start``)."""
    if not 1 <= start <= cc.n:
        raise IndexError(f"start index {start} out of range 1..{cc.n}")
    w = rotation(cc.gaps, start)
    return w if forward else w[::-1]


class LwsPair(NamedTuple):
    forward_index: int
    backward_index: int
    forward_holder: Point
    backward_holder: Point


def _check_election_preconditions(cc: CircleConfiguration, tol: Tolerance) -> None:
    n = cc.n
    if n < 5 or not is_prime(n):
        raise PreconditionError(f"election on a circle needs a prime n >= 5, got {n}")
    g0 = cc.gaps[0]
    if all(compare_letters(g, g0, tol) is Order.EQ for g in cc.gaps):
        raise NotApplicableError("robots already form a regular n-gon")


def lws(cc: CircleConfiguration, tol: Tolerance = DEFAULT_TOL) -> LwsPair:
    """The forward and backward Lyndon-word holders (0-based ranks in ``cc``)."""
    _check_election_preconditions(cc, tol)
    fwd = [i for i in range(cc.n) if is_lyndon(string_of_angles(cc, i + 1, True), tol)]
    bwd = [i for i in range(cc.n) if is_lyndon(string_of_angles(cc, i + 1, False), tol)]
    if len(fwd) != 1 or len(bwd) != 1:
        raise ElectionError(f"expected one forward and one backward Lyndon holder, "
                            f"got {fwd} and {bwd}")
    a, b = fwd[0], bwd[0]
    if a == b:
        raise ElectionError(f"forward and backward holders coincide at rank {a}")
    return LwsPair(a, b, cc.points[a], cc.points[b])


@dataclass(frozen=True)
class ElectionResult:
    holders: LwsPair
    side_counts: Tuple[int, int]   # (robots strictly between a->b, strictly between b->a)
    leader_index: int              # rank in cc.points
    leader: Point


def election_report(cc: CircleConfiguration, tol: Tolerance = DEFAULT_TOL) -> ElectionResult:
    pair = lws(cc, tol)
    n = cc.n
    a, b = pair.forward_index, pair.backward_index
    side1 = [(a + k) % n for k in range(1, (b - a) % n)]
    side2 = [(b + k) % n for k in range(1, (a - b) % n)]
    if len(side1) % 2 == len(side2) % 2:
        raise ElectionError(f"side counts {len(side1)}, {len(side2)} have equal parity")
    odd = side1 if len(side1) % 2 else side2
    # median of an odd run is the same whichever end we count from
    leader = odd[len(odd) // 2]
    return ElectionResult(pair, (len(side1), len(side2)), leader, cc.points[leader])


def elect_on_circle(cc: CircleConfiguration, tol: Tolerance = DEFAULT_TOL) -> Point:
    return election_report(cc, tol).leader


# --- three robots -------------------------------------------------------------------

def interior_angles(pts: Sequence[Point]) -> List[float]:
    out = []
    for i in range(3):
        p, q, r = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        ux, uy = q.x - p.x, q.y - p.y
        vx, vy = r.x - p.x, r.y - p.y
        out.append(math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy))
    return out


def three_robot_case(positions: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Tuple[str, int]:
    """Classify a non-equilateral triple and pick the leader.

    Returns ``(case, index)`` with case one of "collinear", "isosceles",
    "scalene" and index into ``positions``.
    """
    pts = as_points(positions)
    if len(pts) != 3:
        raise PreconditionError(f"expected 3 positions, got {len(pts)}")
    check_distinct(pts, tol)
    ang = interior_angles(pts)
    widest = max(range(3), key=lambda i: ang[i])
    if ang[widest] >= math.pi - tol.eps_angle:
        return "collinear", widest

    def eq(i, j):
        return compare_letters(ang[i], ang[j], tol) is Order.EQ

    pairs = [(0, 1), (1, 2), (0, 2)]
    equal = [p for p in pairs if eq(*p)]
    if len(equal) == 3 or (len(equal) == 2):
        raise NotApplicableError("triangle is equilateral")
    if len(equal) == 1:
        i, j = equal[0]
        return "isosceles", 3 - i - j
    return "scalene", min(range(3), key=lambda i: ang[i])


def elect_three(positions: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Point:
    _, i = three_robot_case(positions, tol)
    return as_points(positions)[i]


def nearest_index(points: Sequence[Point], p: Point, tol: Tolerance = DEFAULT_TOL) -> int:
    """Index of the observed point matching ``p`` within ``eps_pos``."""
    best = min(range(len(points)), key=lambda i: dist(points[i], p))
    if dist(points[best], p) > tol.eps_pos:
        raise PreconditionError(f"{p} is not among the observed positions")
    return best
