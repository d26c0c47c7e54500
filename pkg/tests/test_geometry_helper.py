import math

import pytest
from hypothesis import given
from pydantic import ValidationError

from app.routers.helpers.errors import DegenerateSegment
from app.routers.helpers.geometry_helper import (
    Circle,
    Line,
    Point,
    Segment,
    ToleranceProfile,
    approx_eq,
    clip_line,
    dist,
    distance_to_line,
    foot_of_perpendicular,
    lerp,
    line_intersection,
    midpoint,
    to_frame,
)
from tests.strategies import points, rigid_motion


def test_dist_examples():
    assert dist(Point(0, 0), Point(3, 4)) == 5.0
    assert dist(Point(-1, -1), Point(-1, -1)) == 0.0


def test_midpoint_examples():
    assert midpoint(Point(0, 0), Point(4, 0)) == Point(2, 0)
    assert midpoint(Point(-2, 6), Point(4, -2)) == Point(1, 2)


def test_lerp_extrapolates_outside_segment():
    assert lerp(Point(0, 0), Point(5, 0), 3.0) == Point(15, 0)
    assert lerp(Point(0, 0), Point(5, 0), -0.5) == Point(-2.5, 0)


@given(points, points)
def test_dist_is_symmetric_and_non_negative(p, q):
    assert dist(p, q) == dist(q, p)
    assert dist(p, q) >= 0.0


@given(points, points)
def test_midpoint_is_equidistant(p, q):
    m = midpoint(p, q)
    assert math.isclose(dist(m, p), dist(m, q), rel_tol=1e-12, abs_tol=1e-12)


@given(points, points, points)
def test_rigid_motion_preserves_distance(p, q, shift):
    move = rigid_motion(0.7, shift.x, shift.y, mirror=True)
    assert math.isclose(dist(move(p), move(q)), dist(p, q), rel_tol=1e-9, abs_tol=1e-9)


def test_point_rejects_non_finite():
    with pytest.raises(ValidationError):
        Point(math.nan, 0.0)
    with pytest.raises(ValidationError):
        Point(0.0, math.inf)


def test_segment_between_rejects_coincident_endpoints():
    with pytest.raises(DegenerateSegment):
        Segment.between(Point(1, 1), Point(1, 1))


def test_segment_unit_and_length():
    s = Segment.between(Point(1, 1), Point(4, 5))
    assert s.length == 5.0
    assert s.unit == pytest.approx((0.6, 0.8))
    assert s.midpoint == Point(2.5, 3.0)


def test_line_requires_unit_direction():
    with pytest.raises(ValidationError):
        Line(anchor=Point(0, 0), direction=(1.0, 1.0))
    line = Line.from_direction(Point(0, 0), 3.0, 4.0)
    assert line.direction == pytest.approx((0.6, 0.8))


def test_perpendicular_turns_counter_clockwise():
    line = Line.perpendicular_at(Point(2, 0), (1.0, 0.0))
    assert line.direction[0] == 0.0
    assert line.direction[1] == 1.0
    assert line.point_at(2.0) == Point(2, 2)


def test_foot_and_distance_to_line():
    line = Line.through(Point(0, 0), Point(4, 0))
    assert foot_of_perpendicular(line, Point(1.5, 3.0)) == Point(1.5, 0.0)
    assert distance_to_line(line, Point(1.5, -3.0)) == 3.0
    assert line.signed_offset(Point(-2.0, 7.0)) == -2.0


def test_line_intersection():
    horizontal = Line.through(Point(0, 1), Point(1, 1))
    vertical = Line.through(Point(3, -5), Point(3, 5))
    assert line_intersection(horizontal, vertical) == Point(3, 1)
    assert line_intersection(horizontal, Line.through(Point(0, 2), Point(5, 2))) is None


def test_to_frame_puts_toward_on_positive_x_axis():
    origin, toward = Point(1, 1), Point(4, 5)
    assert to_frame(origin, toward, toward) == pytest.approx((5.0, 0.0))
    x, y = to_frame(origin, toward, Point(1 - 4, 1 + 3))
    assert x == pytest.approx(0.0, abs=1e-12)
    assert y == pytest.approx(5.0)


def test_circle_rejects_non_positive_radius():
    with pytest.raises(ValidationError):
        Circle(center=Point(0, 0), radius=0.0)


def test_approx_eq_combines_absolute_and_relative_terms():
    tol = ToleranceProfile(abs_eps=1e-6, rel_eps=1e-3)
    assert approx_eq(1000.0, 1000.5, 1.0, tol)
    assert not approx_eq(1.0, 1.01, 1.0, tol)
    assert approx_eq(0.0, 5e-7, 1.0, tol)
    with pytest.raises(ValueError):
        approx_eq(1.0, 1.0, 0.0, tol)


def test_tolerance_profile_ordering():
    with pytest.raises(ValidationError):
        ToleranceProfile(abs_eps=1e-12, degeneracy_eps=1e-9)
    with pytest.raises(ValidationError):
        ToleranceProfile(rel_eps=0.0)


def test_clip_line_against_box():
    diagonal = Line.through(Point(0, 0), Point(1, 1))
    t_low, t_high = clip_line(diagonal, -1, -1, 2, 2)
    assert diagonal.point_at(t_low).x == pytest.approx(-1.0)
    assert diagonal.point_at(t_high).y == pytest.approx(2.0)
    outside = Line.through(Point(5, 0), Point(5, 1))
    assert clip_line(outside, -1, -1, 2, 2) is None
