import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ngon.errors import DegeneracyError, GeometryError, PreconditionError
from ngon.geometry import (TAU, Circle, Point, SimilarityFrame, central_angle, circumcircle,
                           circle_points_from_gaps, circular_order, dist, fit_common_circle,
                           is_regular_ngon, leave_one_out_residuals, smallest_enclosing_circle,
                           successor_gaps)
from ngon.words import Tolerance

TOL = Tolerance()
UNIT = Circle(Point(0.0, 0.0), 1.0)


def regular(n, circle=UNIT, phase=0.0):
    return [circle.point_at(phase + TAU * k / n) for k in range(n)]


def brute_force_sec(points):
    """Smallest circle among all pair-diameter and triple circumcircles covering every point."""
    cands = [Circle(points[0], 0.0)]
    for a, b in itertools.combinations(points, 2):
        c = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        cands.append(Circle(c, dist(a, b) / 2))
    for a, b, c in itertools.combinations(points, 3):
        cc = circumcircle(a, b, c)
        if cc is not None:
            cands.append(cc)
    ok = [c for c in cands if all(dist(p, c.center) <= c.radius * (1 + 1e-9) + 1e-12 for p in points)]
    return min(ok, key=lambda c: c.radius)


point_lists = st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=9)


# --- smallest enclosing circle ----------------------------------------------------------

def test_sec_examples():
    c = smallest_enclosing_circle([Point(0, 0)])
    assert c.center == (0, 0) and c.radius == 0
    c = smallest_enclosing_circle([Point(-1, 0), Point(1, 0)])
    assert dist(c.center, Point(0, 0)) < 1e-12 and abs(c.radius - 1) < 1e-12
    pts = [Point(0, 1), Point(1, 0), Point(-1, 0), Point(0, -1)]
    c = smallest_enclosing_circle(pts)
    assert dist(c.center, Point(0, 0)) < 1e-12 and abs(c.radius - 1) < 1e-12
    assert all(abs(dist(p, c.center) - 1) < 1e-12 for p in pts)
    # any smaller circle misses a point: the brute-force minimum agrees
    assert abs(brute_force_sec(pts).radius - 1) < 1e-12


def test_sec_empty():
    with pytest.raises(PreconditionError):
        smallest_enclosing_circle([])


@given(point_lists)
def test_sec_matches_brute_force(raw):
    pts = [Point(*p) for p in raw]
    c = smallest_enclosing_circle(pts)
    ref = brute_force_sec(pts)
    assert abs(c.radius - ref.radius) <= 1e-9 * max(1.0, ref.radius)
    assert all(dist(p, c.center) <= c.radius + 1e-9 for p in pts)
    assert min(abs(dist(p, c.center) - c.radius) for p in pts) <= 1e-9


@given(point_lists, st.floats(0, TAU), st.floats(0.5, 2.0), st.booleans(),
       st.floats(-5, 5), st.floats(-5, 5))
def test_sec_similarity_equivariant(raw, rot, scale, refl, tx, ty):
    pts = [Point(*p) for p in raw]
    f = SimilarityFrame(rot, scale, Point(tx, ty), refl)
    c = smallest_enclosing_circle(pts)
    ct = smallest_enclosing_circle([f.to_local(p) for p in pts])
    assert dist(ct.center, f.to_local(c.center)) <= 1e-8
    assert abs(ct.radius - scale * c.radius) <= 1e-8


def test_sec_large_input():
    rng = np.random.default_rng(1)
    pts = [Point(*map(float, p)) for p in rng.normal(size=(1000, 2))]
    c = smallest_enclosing_circle(pts)
    assert all(dist(p, c.center) <= c.radius + 1e-9 for p in pts)


# --- common circle -----------------------------------------------------------------------------

def test_fit_regular_pentagon():
    c = fit_common_circle(regular(5), TOL)
    assert c is not None
    assert dist(c.center, Point(0, 0)) < 1e-12 and abs(c.radius - 1) < 1e-12


def test_fit_three_points_is_circumcircle():
    pts = [Point(0, 0), Point(4, 0), Point(1, 3)]
    c = fit_common_circle(pts, TOL)
    assert c is not None
    assert all(abs(dist(p, c.center) - c.radius) < 1e-12 for p in pts)


def test_fit_rejects_perturbed_point():
    pts = regular(4)
    pts[2] = Point(pts[2].x * (1 + 1e3 * TOL.eps_pos), pts[2].y)
    assert fit_common_circle(pts, TOL) is None


def test_fit_half_plane_points_is_not_the_sec():
    c = Circle(Point(2, -1), 3.0)
    pts = [c.point_at(a) for a in (0.1, 0.5, 0.9, 1.3)]
    fitted = fit_common_circle(pts, TOL)
    assert fitted is not None and abs(fitted.radius - 3) < 1e-9
    assert smallest_enclosing_circle(pts).radius < 2.9


def test_fit_collinear_is_none():
    assert fit_common_circle([Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0)], TOL) is None
    assert fit_common_circle([Point(0, 0), Point(1, 0), Point(2, 0)], TOL) is None


def test_fit_needs_three_points():
    with pytest.raises(PreconditionError):
        fit_common_circle([Point(0, 0), Point(1, 0)], TOL)


def test_leave_one_out_screen_flags_the_interior_point():
    pts = regular(7, Circle(Point(3, 4), 2.0)) + [Point(3.5, 4.2)]
    res = leave_one_out_residuals(pts)
    assert res[-1] < 1e-12
    assert (res[:-1] > 1e-3).all()


# --- angles and order ---------------------------------------------------------------------------

def test_central_angle_examples():
    e, n = Point(1, 0), Point(0, 1)
    assert central_angle(UNIT, e, n, clockwise=False) == pytest.approx(math.pi / 2, abs=1e-15)
    assert central_angle(UNIT, e, n, clockwise=True) == pytest.approx(3 * math.pi / 2, abs=1e-15)
    assert central_angle(UNIT, e, e, clockwise=True) == 0
    assert central_angle(UNIT, e, e, clockwise=False) == 0


def test_central_angle_off_boundary():
    with pytest.raises(GeometryError):
        central_angle(UNIT, Point(1, 0), Point(0, 0.5), clockwise=False)


def test_circular_order_compass():
    E, N, W, S = Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)
    pts = [S, W, E, N]
    assert [pts[i] for i in circular_order(UNIT, pts, clockwise=False)] == [E, N, W, S]
    assert [pts[i] for i in circular_order(UNIT, pts, clockwise=True)] == [E, S, W, N]


def test_circular_order_single_cycle():
    pts = regular(5, phase=0.3)
    order = circular_order(UNIT, pts, clockwise=True)
    succ = {order[k]: order[(k + 1) % 5] for k in range(5)}
    i, seen = 0, set()
    while i not in seen:
        seen.add(i)
        i = succ[i]
    assert len(seen) == 5


def test_circular_order_rejects_coincident():
    with pytest.raises(DegeneracyError):
        circular_order(UNIT, [Point(1, 0), Point(1, 0), Point(0, 1)], clockwise=False)


@given(st.lists(st.floats(0, TAU), min_size=3, max_size=12, unique=True))
def test_gaps_sum_to_full_turn(angles):
    angles = sorted(angles)
    if min(b - a for a, b in zip(angles, angles[1:] + [angles[0] + TAU])) < 1e-6:
        return
    pts = [UNIT.point_at(a) for a in angles]
    for cw in (False, True):
        order = circular_order(UNIT, pts, cw)
        gaps = successor_gaps(UNIT, pts, order, cw)
        assert abs(sum(gaps) - TAU) <= len(pts) * 1e-9
        direct = [central_angle(UNIT, pts[order[k]], pts[order[(k + 1) % len(pts)]], cw)
                  for k in range(len(pts))]
        assert gaps == pytest.approx(direct, abs=1e-12)
    ccw, cw = circular_order(UNIT, pts, False), circular_order(UNIT, pts, True)
    assert cw == [ccw[0]] + ccw[:0:-1]


# --- frames ---------------------------------------------------------------------------------------

def test_identity_frame():
    p = Point(3.5, -2.0)
    assert SimilarityFrame().to_local(p) == p
    assert SimilarityFrame().from_local(p) == p


def test_frame_direct_evaluation():
    f = SimilarityFrame(rotation=math.pi, scale=2.0)
    q = f.to_local(Point(1, 0))
    assert q.x == pytest.approx(-2.0) and q.y == pytest.approx(0.0, abs=1e-15)


def test_frame_round_trip_random():
    rng = np.random.default_rng(7)
    for refl in (False, True):
        f = SimilarityFrame(float(rng.uniform(0, TAU)), float(rng.uniform(0.5, 2)),
                            Point(*map(float, rng.uniform(-5, 5, 2))), refl)
        pts = [Point(*map(float, p)) for p in rng.uniform(-10, 10, (100, 2))]
        err = max(dist(f.from_local(f.to_local(p)), p) for p in pts)
        assert err < 1e-9


def test_frame_preserves_distance_ratios():
    f = SimilarityFrame(1.0, 1.7, Point(2, 3), True)
    a, b, c = Point(0, 0), Point(1, 2), Point(-3, 1)
    r = dist(f.to_local(a), f.to_local(b)) / dist(f.to_local(a), f.to_local(c))
    assert r == pytest.approx(dist(a, b) / dist(a, c))


def test_frame_rejects_bad_scale():
    with pytest.raises(ValueError):
        SimilarityFrame(scale=0.0)


# --- regular polygon ---------------------------------------------------------------------------

def test_is_regular_ngon_examples():
    assert is_regular_ngon([Point(0, 0), Point(5, 1)], TOL)
    assert is_regular_ngon(regular(7), TOL)
    bad = regular(7)
    bad[3] = UNIT.point_at(TAU * 3 / 7 + 0.1)
    assert not is_regular_ngon(bad, TOL)


def test_is_regular_ngon_rejects_non_concyclic_and_coincident():
    assert not is_regular_ngon([Point(0, 0), Point(1, 0), Point(2, 0)], TOL)
    assert not is_regular_ngon([Point(0, 0), Point(0, 0)], TOL)


@settings(max_examples=50)
@given(st.sampled_from([3, 5, 7, 11]), st.floats(0, TAU), st.floats(0.5, 2.0), st.booleans(),
       st.floats(-5, 5), st.floats(-5, 5))
def test_is_regular_ngon_similarity_invariant(n, rot, scale, refl, tx, ty):
    f = SimilarityFrame(rot, scale, Point(tx, ty), refl)
    good = regular(n, Circle(Point(1, 2), 3.0), 0.4)
    bad = list(good)
    bad[0] = Circle(Point(1, 2), 3.0).point_at(0.45)
    assert is_regular_ngon([f.to_local(p) for p in good], TOL)
    assert not is_regular_ngon([f.to_local(p) for p in bad], TOL)


def test_circle_points_from_gaps_round_trip():
    gaps = (1.0, 1.1, 1.2, 1.3, TAU - 4.6)
    pts = circle_points_from_gaps(gaps, UNIT, 0.2, clockwise=True)
    order = circular_order(UNIT, pts, clockwise=True)
    k = order.index(0)
    order = order[k:] + order[:k]
    assert successor_gaps(UNIT, pts, order, True) == pytest.approx(gaps, abs=1e-12)
