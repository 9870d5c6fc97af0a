import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ngon.election import (circle_configuration, elect_on_circle, elect_three, election_report,
                           interior_angles, is_prime, lws, string_of_angles, three_robot_case)
from ngon.errors import DegeneracyError, NotApplicableError, PreconditionError
from ngon.geometry import (TAU, Circle, Point, SimilarityFrame, circle_points_from_gaps, dist)
from ngon.simulator import random_circle, random_gaps
from ngon.words import Tolerance, is_lyndon

TOL = Tolerance()
UNIT = Circle(Point(0.0, 0.0), 1.0)
N5_GAPS = (1.0, 1.1, 1.2, 1.3, TAU - 4.6)


def exact_lyndon(w):
    return all(w < w[j:] + w[:j] for j in range(1, len(w)))


def oracle_leader(points, center):
    """Leader by polar angles: Lyndon holders found by exact tuple comparison,
    sides counted as robots strictly between the two holders' rays."""
    n = len(points)
    ang = [math.atan2(p.y - center.y, p.x - center.x) % TAU for p in points]
    ccw = sorted(range(n), key=lambda i: ang[i])
    gaps = [(ang[ccw[(k + 1) % n]] - ang[ccw[k]]) % TAU for k in range(n)]
    fwd = [ccw[k] for k in range(n) if exact_lyndon(tuple(gaps[k:] + gaps[:k]))]
    rev = [ccw[k] for k in range(n)
           if exact_lyndon(tuple(reversed(gaps[k:] + gaps[:k])))]
    assert len(fwd) == 1 and len(rev) == 1
    a, b = fwd[0], rev[0]
    rel = lambda i: (ang[i] - ang[a]) % TAU
    between = sorted((i for i in range(n) if i not in (a, b)), key=rel)
    side1 = [i for i in between if rel(i) < rel(b)]
    side2 = [i for i in between if rel(i) > rel(b)]
    odd = side1 if len(side1) % 2 else side2
    return points[odd[len(odd) // 2]]


def random_frame(rng):
    return SimilarityFrame(float(rng.uniform(0, TAU)), float(rng.uniform(0.5, 2)),
                           Point(*map(float, rng.uniform(-5, 5, 2))), bool(rng.integers(0, 2)))


def regular(n, circle=UNIT):
    return [circle.point_at(TAU * k / n) for k in range(n)]


# --- strings of angles --------------------------------------------------------------------

def test_string_of_angles_regular():
    cc = circle_configuration(regular(7), TOL)
    for i in range(1, 8):
        for fwd in (True, False):
            w = string_of_angles(cc, i, fwd)
            assert len(w) == 7
            assert w == pytest.approx([TAU / 7] * 7, abs=1e-12)


def test_string_of_angles_eight_letter_word():
    unit = TAU / 40   # x_k = k * unit, letters x1 < ... < x8, total 2π
    x = {k: k * unit for k in range(1, 9)}
    word = (x[1], x[2], x[2], x[3], x[1], x[4], x[5], x[6], x[7], x[1], x[8])
    assert sum(word) == pytest.approx(TAU)
    pts = circle_points_from_gaps(word, Circle(Point(1, -2), 4.0), 0.7, clockwise=True)
    cc = circle_configuration(pts, TOL, clockwise=True)
    start = cc.order.index(0) + 1
    assert string_of_angles(cc, start, True) == pytest.approx(word, abs=1e-12)


def test_string_of_angles_shift_and_sum():
    pts = circle_points_from_gaps(N5_GAPS, UNIT, 0.0)
    cc = circle_configuration(pts, TOL)
    first = string_of_angles(cc, 1, True)
    for i in range(1, 6):
        w = string_of_angles(cc, i, True)
        assert w == first[i - 1:] + first[:i - 1]
        assert sum(w) == pytest.approx(TAU, abs=5e-9)
        assert string_of_angles(cc, i, False) == w[::-1]
    with pytest.raises(IndexError):
        string_of_angles(cc, 6, True)


# --- LWS and the leader -----------------------------------------------------------------------

def test_lws_five_robot_example():
    pts = circle_points_from_gaps(N5_GAPS, UNIT, 0.0, clockwise=True)
    cc = circle_configuration(pts, TOL, clockwise=True)
    pair = lws(cc, TOL)
    # brute force: scan all n starts in both directions
    fwd = [i for i in range(5) if is_lyndon(string_of_angles(cc, i + 1, True), TOL)]
    bwd = [i for i in range(5) if is_lyndon(string_of_angles(cc, i + 1, False), TOL)]
    assert [pair.forward_index] == fwd and [pair.backward_index] == bwd
    assert pair.forward_holder == pts[0]   # reads 1.0 1.1 1.2 1.3 ...
    assert pair.backward_holder == pts[1]  # reads 1.0 (2π-4.6) 1.3 1.2 1.1


def test_elect_five_robot_example():
    pts = circle_points_from_gaps(N5_GAPS, UNIT, 0.0, clockwise=True)
    cc = circle_configuration(pts, TOL)
    rep = election_report(cc, TOL)
    assert sorted(rep.side_counts) == [0, 3]
    assert rep.leader == pts[3]
    assert oracle_leader(pts, UNIT.center) == pts[3]


def test_lws_rejects_regular_and_non_prime():
    with pytest.raises(NotApplicableError):
        lws(circle_configuration(regular(5), TOL), TOL)
    pts = circle_points_from_gaps((1.0, 1.2, 1.4, 1.5, 1.6, TAU - 6.7), UNIT)
    with pytest.raises(PreconditionError):
        lws(circle_configuration(pts, TOL), TOL)


@pytest.mark.parametrize("n", [5, 7, 11, 13])
@pytest.mark.parametrize("alphabet", [None, 2, 3])
def test_unique_holders_on_random_circles(n, alphabet):
    rng = np.random.default_rng(n * 10 + (alphabet or 0))
    for _ in range(25):
        gaps = random_gaps(n, rng, alphabet=alphabet)
        pts = circle_points_from_gaps(gaps, random_circle(rng), float(rng.uniform(0, TAU)))
        cc = circle_configuration(pts, TOL)
        fwd = [i for i in range(n) if is_lyndon(string_of_angles(cc, i + 1, True), TOL)]
        bwd = [i for i in range(n) if is_lyndon(string_of_angles(cc, i + 1, False), TOL)]
        assert len(fwd) == 1 and len(bwd) == 1 and fwd != bwd
        rep = election_report(cc, TOL)
        assert sum(rep.side_counts) == n - 2


@pytest.mark.parametrize("n", [5, 7, 11, 13])
def test_leader_matches_polar_oracle(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(20):
        c = random_circle(rng)
        pts = circle_points_from_gaps(random_gaps(n, rng), c, float(rng.uniform(0, TAU)))
        leader = elect_on_circle(circle_configuration(pts, TOL), TOL)
        assert dist(leader, oracle_leader(pts, c.center)) < 1e-12


def test_leader_same_from_either_holder():
    # the median of an odd run counted from either end is the same robot
    rng = np.random.default_rng(3)
    for n in (5, 7, 11):
        pts = circle_points_from_gaps(random_gaps(n, rng), UNIT)
        cc = circle_configuration(pts, TOL)
        rep = election_report(cc, TOL)
        a, b = rep.holders.forward_index, rep.holders.backward_index
        side = [(a + k) % n for k in range(1, (b - a) % n)]
        if len(side) % 2 == 0:
            side = [(b + k) % n for k in range(1, (a - b) % n)]
        assert side[len(side) // 2] == side[::-1][len(side) // 2] == rep.leader_index


@pytest.mark.parametrize("n", [5, 7, 11, 13])
def test_election_orientation_independent(n):
    rng = np.random.default_rng(200 + n)
    for _ in range(20):
        pts = circle_points_from_gaps(random_gaps(n, rng, alphabet=3), random_circle(rng))
        cw = election_report(circle_configuration(pts, TOL, clockwise=True), TOL)
        ccw = election_report(circle_configuration(pts, TOL, clockwise=False), TOL)
        assert cw.leader == ccw.leader
        assert cw.holders.forward_holder == ccw.holders.backward_holder
        assert cw.holders.backward_holder == ccw.holders.forward_holder


def test_election_equivariant_under_similarities():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.choice([5, 7, 11, 13]))
        pts = circle_points_from_gaps(random_gaps(n, rng), random_circle(rng),
                                      float(rng.uniform(0, TAU)))
        leader = elect_on_circle(circle_configuration(pts, TOL), TOL)
        f = random_frame(rng)
        moved = elect_on_circle(circle_configuration([f.to_local(p) for p in pts], TOL), TOL)
        assert dist(moved, f.to_local(leader)) <= TOL.eps_pos


# --- three robots ----------------------------------------------------------------------------------

def test_elect_three_examples():
    assert elect_three([Point(0, 0), Point(1, 0), Point(3, 0)], TOL) == Point(1, 0)
    assert elect_three([Point(0, 0), Point(2, 0), Point(1, 3)], TOL) == Point(1, 3)
    # law-of-cosines oracle for the scalene case
    pts = [Point(0, 0), Point(4, 0), Point(1, 1)]
    def angle_at(i):
        a, b, c = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        ab, ac, bc = dist(a, b), dist(a, c), dist(b, c)
        return math.acos((ab * ab + ac * ac - bc * bc) / (2 * ab * ac))
    expected = pts[min(range(3), key=angle_at)]
    assert expected == Point(4, 0)
    assert elect_three(pts, TOL) == expected
    assert three_robot_case(pts, TOL)[0] == "scalene"


def test_elect_three_cases():
    assert three_robot_case([Point(0, 0), Point(1, 0), Point(3, 0)], TOL) == ("collinear", 1)
    assert three_robot_case([Point(0, 0), Point(2, 0), Point(1, 3)], TOL) == ("isosceles", 2)
    # a flat isosceles: the apex angle is the largest, still elected
    assert three_robot_case([Point(0, 0), Point(2, 0), Point(1, 0.2)], TOL) == ("isosceles", 2)


def test_elect_three_errors():
    eq = [Point(0, 0), Point(1, 0), Point(0.5, math.sqrt(3) / 2)]
    with pytest.raises(NotApplicableError):
        elect_three(eq, TOL)
    with pytest.raises(DegeneracyError):
        elect_three([Point(0, 0), Point(0, 0), Point(1, 1)], TOL)
    with pytest.raises(PreconditionError):
        elect_three([Point(0, 0), Point(1, 1)], TOL)


def test_interior_angles_sum_to_pi():
    assert sum(interior_angles([Point(0, 0), Point(4, 0), Point(1, 1)])) == pytest.approx(math.pi)


triples = st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=3, max_size=3)


@settings(max_examples=200)
@given(triples, st.permutations([0, 1, 2]), st.floats(0, TAU), st.floats(0.5, 2.0),
       st.booleans(), st.floats(-5, 5), st.floats(-5, 5))
def test_elect_three_equivariant_and_permutation_invariant(raw, perm, rot, scale, refl, tx, ty):
    pts = [Point(*p) for p in raw]
    if min(dist(a, b) for a, b in itertools.combinations(pts, 2)) < 1e-3:
        return
    ang = interior_angles(pts)
    # stay away from the tolerance boundaries
    diffs = [abs(a - b) for a, b in itertools.combinations(ang, 2)] + [math.pi - max(ang)]
    if min(diffs) < 1e-6:
        return
    leader = elect_three(pts, TOL)
    assert elect_three([pts[i] for i in perm], TOL) == leader
    f = SimilarityFrame(rot, scale, Point(tx, ty), refl)
    assert dist(elect_three([f.to_local(p) for p in pts], TOL), f.to_local(leader)) <= 1e-9


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
