"""Planar primitives: points, circles, enclosing and fitted circles, angular order,
and the similarity frames robots use as private coordinate systems.

Every predicate takes its tolerance explicitly. Points are compared by
distance, never by coordinate equality.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from .errors import DegeneracyError, GeometryError, PreconditionError
from .words import DEFAULT_TOL, Tolerance

TAU = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)


Configuration = List[Point]


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def is_degenerate(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.radius <= tol.eps_pos

    def on_boundary(self, p: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
        return abs(dist(p, self.center) - self.radius) <= tol.eps_pos

    def strictly_inside(self, p: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
        return dist(p, self.center) < self.radius - tol.eps_pos

    def point_at(self, angle: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(angle),
                     self.center.y + self.radius * math.sin(angle))

    def polar_angle(self, p: Point) -> float:
        """Counterclockwise angle of ``p`` around the center, in [0, 2π)."""
        a = math.atan2(p.y - self.center.y, p.x - self.center.x)
        return a + TAU if a < 0 else a


def dist(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def as_points(seq) -> Configuration:
    return [Point(float(p[0]), float(p[1])) for p in seq]


def check_distinct(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if dist(points[i], points[j]) <= tol.eps_pos:
                raise DegeneracyError(f"points {i} and {j} coincide: {points[i]}, {points[j]}")


# --- smallest enclosing circle (Welzl, iterative form) ---------------------------

_SEC_SLACK = 1.0 + 1e-12


def _contains(c: Circle, p: Point) -> bool:
    return dist(c.center, p) <= c.radius * _SEC_SLACK + 1e-15


def _diameter_circle(a: Point, b: Point) -> Circle:
    center = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    return Circle(center, max(dist(center, a), dist(center, b)))


def circumcircle(a: Point, b: Point, c: Point) -> Optional[Circle]:
    """Circle through three points, or None when they are collinear."""
    ox = (min(a.x, b.x, c.x) + max(a.x, b.x, c.x)) / 2
    oy = (min(a.y, b.y, c.y) + max(a.y, b.y, c.y)) / 2
    ax, ay = a.x - ox, a.y - oy
    bx, by = b.x - ox, b.y - oy
    cx, cy = c.x - ox, c.y - oy
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    center = Point(x, y)
    return Circle(center, max(dist(center, a), dist(center, b), dist(center, c)))


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _sec_two(points: Sequence[Point], p: Point, q: Point) -> Circle:
    circ = _diameter_circle(p, q)
    left: Optional[Circle] = None
    right: Optional[Circle] = None
    for r in points:
        if _contains(circ, r):
            continue
        cross = _cross(p, q, r)
        c = circumcircle(p, q, r)
        if c is None:
            continue
        side = _cross(p, q, c.center)
        if cross > 0 and (left is None or side > _cross(p, q, left.center)):
            left = c
        elif cross < 0 and (right is None or side < _cross(p, q, right.center)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _sec_one(points: Sequence[Point], p: Point) -> Circle:
    c = Circle(p, 0.0)
    for i, q in enumerate(points):
        if not _contains(c, q):
            if c.radius == 0.0:
                c = _diameter_circle(p, q)
            else:
                c = _sec_two(points[:i + 1], p, q)
    return c


def smallest_enclosing_circle(points: Sequence[Point]) -> Circle:
    """Minimal-radius circle containing every point (expected linear time)."""
    if len(points) == 0:
        raise PreconditionError("smallest enclosing circle of an empty set")
    shuffled = [Point(float(p[0]), float(p[1])) for p in points]
    # fixed seed keeps the result a deterministic function of the input
    random.Random(0x5EC).shuffle(shuffled)
    c: Optional[Circle] = None
    for i, p in enumerate(shuffled):
        if c is None or not _contains(c, p):
            c = _sec_one(shuffled[:i + 1], p)
    assert c is not None
    return c


# --- common circle detection ----------------------------------------------------

def fit_circle(points: Sequence[Point]) -> Optional[Circle]:
    """Algebraic least-squares circle fit; None when the points are collinear."""
    pts = np.asarray(points, dtype=float)
    centroid = pts.mean(axis=0)
    q = pts - centroid
    scale = math.sqrt(float((q * q).sum()) / len(pts))
    if scale == 0.0:
        return None
    q = q / scale
    a = np.column_stack([q, np.ones(len(q))])
    b = -(q * q).sum(axis=1)
    sol, _, rank, sv = np.linalg.lstsq(a, b, rcond=None)
    if rank < 3 or sv[-1] < 1e-12 * sv[0]:
        return None
    cx, cy = -sol[0] / 2, -sol[1] / 2
    r2 = cx * cx + cy * cy - sol[2]
    if r2 <= 0:
        return None
    center = Point(float(centroid[0] + cx * scale), float(centroid[1] + cy * scale))
    return Circle(center, float(math.sqrt(r2) * scale))


def leave_one_out_residuals(points: Sequence[Point]) -> np.ndarray:
    """Max fit residual of each subset that omits one point (batched normal equations).

    Only a screening tool: its residuals agree with :func:`fit_circle` to
    rounding error, not bit for bit.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    keep = ~np.eye(n, dtype=bool)
    sub = np.stack([pts[keep[i]] for i in range(n)])             # (n, n-1, 2)
    centroid = sub.mean(axis=1, keepdims=True)
    q = sub - centroid
    scale = np.sqrt((q * q).sum(axis=(1, 2)) / (n - 1))[:, None, None]
    q = q / np.where(scale == 0, 1.0, scale)
    a = np.concatenate([q, np.ones((n, n - 1, 1))], axis=2)
    b = -(q * q).sum(axis=2)
    ata = np.einsum("kij,kil->kjl", a, a)
    atb = np.einsum("kij,ki->kj", a, b)
    out = np.full(n, np.inf)
    ok = np.abs(np.linalg.det(ata)) > 1e-12
    if not ok.any():
        return out
    sol = np.linalg.solve(ata[ok], atb[ok][..., None])[..., 0]
    c = -sol[:, :2] / 2
    r2 = (c * c).sum(axis=1) - sol[:, 2]
    good = r2 > 0
    s = scale[ok, 0, 0]
    center = centroid[ok, 0, :] + c * s[:, None]
    radius = np.sqrt(np.where(good, r2, 0.0)) * s
    d = np.linalg.norm(sub[ok] - center[:, None, :], axis=2)
    res = np.abs(d - radius[:, None]).max(axis=1)
    out[np.flatnonzero(ok)] = np.where(good, res, np.inf)
    return out


def max_residual(circle: Circle, points: Sequence[Point]) -> float:
    return max(abs(dist(p, circle.center) - circle.radius) for p in points)


def fit_common_circle(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> Optional[Circle]:
    """Circle whose boundary passes within ``eps_pos`` of every point, else None."""
    if len(points) < 3:
        raise PreconditionError("need at least 3 points to detect a common circle")
    pts = as_points(points)
    if len(pts) == 3:
        c = circumcircle(*pts)
    else:
        c = fit_circle(pts)
    if c is None or max_residual(c, pts) > tol.eps_pos:
        return None
    return c


# --- angles and cyclic order ----------------------------------------------------

def central_angle(c: Circle, a: Point, b: Point, clockwise: bool,
                  tol: Tolerance = DEFAULT_TOL) -> float:
    """Directed angle at the center from ``a`` to ``b``, in [0, 2π)."""
    if c.is_degenerate(tol):
        raise DegeneracyError(f"degenerate circle {c}")
    for p in (a, b):
        if not c.on_boundary(p, tol):
            raise GeometryError(f"{p} is not on the boundary of {c}")
    d = (c.polar_angle(b) - c.polar_angle(a)) % TAU
    if clockwise:
        d = (-d) % TAU
    return 0.0 if d >= TAU else d


def circular_order(c: Circle, points: Sequence[Point], clockwise: bool,
                   tol: Tolerance = DEFAULT_TOL) -> List[int]:
    """Indices of ``points`` in cyclic order around ``c``.

    The counterclockwise order starts at the smallest polar angle; the
    clockwise order is its reversal keeping the same first element.
    """
    for p in points:
        if not c.on_boundary(p, tol):
            raise GeometryError(f"{p} is not on the boundary of {c}")
    check_distinct(points, tol)
    idx = sorted(range(len(points)), key=lambda i: c.polar_angle(points[i]))
    if clockwise and idx:
        idx = [idx[0]] + idx[:0:-1]
    return idx


def successor_gaps(c: Circle, points: Sequence[Point], order: Sequence[int],
                   clockwise: bool) -> List[float]:
    """Gap angles between consecutive points of ``order`` (last wraps to first)."""
    angles = [c.polar_angle(points[i]) for i in order]
    n = len(angles)
    gaps = []
    for k in range(n):
        d = (angles[(k + 1) % n] - angles[k]) % TAU
        if clockwise:
            d = (-d) % TAU
        gaps.append(d)
    return gaps


def is_regular_ngon(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL,
                    gap_tol: Optional[float] = None) -> bool:
    """Regular polygon test; every gap must be 2π/n within ``gap_tol``.

    ``gap_tol`` defaults to ``n * eps_angle``.
    """
    pts = as_points(points)
    n = len(pts)
    if n < 2:
        raise PreconditionError("a polygon needs at least 2 points")
    if n == 2:
        return dist(pts[0], pts[1]) > tol.eps_pos
    if gap_tol is None:
        gap_tol = n * tol.eps_angle
    c = fit_common_circle(pts, tol)
    if c is None or c.is_degenerate(tol):
        return False
    try:
        order = circular_order(c, pts, clockwise=False, tol=tol)
    except DegeneracyError:
        return False
    alpha = TAU / n
    return all(abs(g - alpha) <= gap_tol for g in successor_gaps(c, pts, order, False))


def circle_points_from_gaps(gaps: Sequence[float], circle: Circle, start_angle: float = 0.0,
                            clockwise: bool = True) -> Configuration:
    """Place robots on ``circle`` so that successive gaps are ``gaps``."""
    sign = -1.0 if clockwise else 1.0
    out = []
    a = start_angle
    for g in gaps:
        out.append(circle.point_at(a))
        a += sign * g
    return out


# --- local coordinate systems -----------------------------------------------------

@dataclass(frozen=True)
class SimilarityFrame:
    """Map from global to a robot's local coordinates.

    ``to_local(p) = scale * Rot(rotation) * Refl(p - translation)`` where
    ``Refl`` negates y when ``reflected``.
    """

    rotation: float = 0.0
    scale: float = 1.0
    translation: Point = Point(0.0, 0.0)
    reflected: bool = False

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError(f"frame scale must be > 0, got {self.scale}")

    def to_local(self, p: Point) -> Point:
        x, y = p.x - self.translation.x, p.y - self.translation.y
        if self.reflected:
            y = -y
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return Point(self.scale * (c * x - s * y), self.scale * (s * x + c * y))

    def from_local(self, p: Point) -> Point:
        x, y = p.x / self.scale, p.y / self.scale
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        x, y = c * x + s * y, -s * x + c * y
        if self.reflected:
            y = -y
        return Point(x + self.translation.x, y + self.translation.y)

    def to_dict(self) -> dict:
        return {"rotation": self.rotation, "scale": self.scale,
                "translation": [self.translation.x, self.translation.y],
                "reflected": self.reflected}

    @classmethod
    def from_dict(cls, d: dict) -> "SimilarityFrame":
        return cls(float(d["rotation"]), float(d["scale"]),
                   Point(*map(float, d["translation"])), bool(d["reflected"]))


IDENTITY = SimilarityFrame()


def to_local(frame: SimilarityFrame, p: Point) -> Point:
    return frame.to_local(p)


def from_local(frame: SimilarityFrame, p: Point) -> Point:
    return frame.from_local(p)
