"""Carrot-chasing geometry: projection, carrot, cross-track, mission walk."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from skydock.guidance import (
    GuidanceParams,
    PathSegment,
    advance_mission,
    carrot_chase,
    follow_path,
    project_onto_segment,
    signed_cross_track,
)

SEG_X = PathSegment((0.0, 0.0), (10.0, 0.0))

coords = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)


def segments():
    return (
        st.tuples(coords, coords, coords, coords)
        .filter(lambda w: math.hypot(w[2] - w[0], w[3] - w[1]) > 1e-3)
        .map(lambda w: PathSegment((w[0], w[1]), (w[2], w[3])))
    )


class TestProjection:
    def test_axis_aligned_drop(self):
        q, s = project_onto_segment((5.0, 2.0), SEG_X)
        assert q == (5.0, 0.0)
        assert s == 0.5

    def test_clamped_before_start(self):
        q, s = project_onto_segment((-3.0, 1.0), SEG_X)
        assert q == (0.0, 0.0)
        assert s == 0.0

    def test_oblique_projection(self):
        # t = (p . d)/|d|^2 = (7*6 + (-4)*8)/100 = 0.1 -> q = (0.6, 0.8)
        seg = PathSegment((0.0, 0.0), (6.0, 8.0))
        q, s = project_onto_segment((7.0, -4.0), seg)
        assert s == pytest.approx(0.1)
        assert q == pytest.approx((0.6, 0.8))

    @given(px=coords, py=coords, seg=segments())
    def test_projection_is_closest_point(self, px, py, seg):
        q, s = project_onto_segment((px, py), seg)
        assert 0.0 <= s <= 1.0
        d_proj = math.hypot(px - q[0], py - q[1])
        for probe in (0.0, 0.25, 0.5, 0.75, 1.0):
            c = seg.point_at(probe)
            assert d_proj <= math.hypot(px - c[0], py - c[1]) + 1e-9

    def test_degenerate_segment_rejected(self):
        with pytest.raises(ValueError):
            PathSegment((1.0, 1.0), (1.0, 1.0))


class TestCarrotChase:
    def test_offset_point(self):
        out = carrot_chase((5.0, 2.0), SEG_X, GuidanceParams(carrot_delta=2.0))
        # carrot at (7, 0): heading atan2(-2, 2) = -pi/4; p is left of path
        assert out.heading_des == pytest.approx(-math.pi / 4)
        assert out.cross_track == pytest.approx(2.0)
        assert out.speed_des == 1.0
        assert not out.mission_complete

    def test_on_path(self):
        out = carrot_chase((3.0, 0.0), SEG_X, GuidanceParams(carrot_delta=2.0))
        assert out.cross_track == 0.0
        assert out.heading_des == pytest.approx(0.0)

    def test_carrot_clamps_to_segment_end(self):
        out = carrot_chase((9.5, 0.0), SEG_X, GuidanceParams(carrot_delta=2.0))
        assert out.heading_des == pytest.approx(0.0)

    def test_right_of_path_is_negative(self):
        out = carrot_chase((5.0, -1.5), SEG_X, GuidanceParams())
        assert out.cross_track == pytest.approx(-1.5)

    @given(px=coords, py=coords, seg=segments(), delta=st.floats(0.1, 20.0))
    def test_carrot_lies_on_segment(self, px, py, seg, delta):
        params = GuidanceParams(carrot_delta=delta)
        out = carrot_chase((px, py), seg, params)
        # Recover the carrot from the heading ray and check it projects inside
        _, s = project_onto_segment((px, py), seg)
        s_carrot = min(s + delta / seg.length(), 1.0)
        carrot = seg.point_at(s_carrot)
        cq, cs = project_onto_segment(carrot, seg)
        assert math.hypot(carrot[0] - cq[0], carrot[1] - cq[1]) < 1e-6
        if math.hypot(carrot[0] - px, carrot[1] - py) > 1e-9:
            heading_to_carrot = math.atan2(carrot[1] - py, carrot[0] - px)
            assert out.heading_des == pytest.approx(heading_to_carrot)

    @given(px=coords, py=coords, seg=segments())
    def test_cross_track_magnitude_is_line_distance(self, px, py, seg):
        ct = signed_cross_track((px, py), seg)
        # distance from p to the infinite line through w1, w2
        dx = seg.w2[0] - seg.w1[0]
        dy = seg.w2[1] - seg.w1[1]
        t = ((px - seg.w1[0]) * dx + (py - seg.w1[1]) * dy) / (dx * dx + dy * dy)
        qx, qy = seg.w1[0] + t * dx, seg.w1[1] + t * dy
        assert abs(ct) == pytest.approx(math.hypot(px - qx, py - qy), abs=1e-6)

    @given(px=coords, py=coords, seg=segments(), delta=st.floats(0.1, 20.0))
    def test_heading_points_toward_carrot(self, px, py, seg, delta):
        params = GuidanceParams(carrot_delta=delta)
        out = carrot_chase((px, py), seg, params)
        _, s = project_onto_segment((px, py), seg)
        carrot = seg.point_at(min(s + delta / seg.length(), 1.0))
        cx, cy = carrot[0] - px, carrot[1] - py
        if math.hypot(cx, cy) > 1e-9:
            dot = cx * math.cos(out.heading_des) + cy * math.sin(out.heading_des)
            assert dot > 0.0


class TestMission:
    WAYPOINTS = [(0.0, 0.0), (10.0, 0.0), (10.0, 10.0)]

    def test_far_from_target_keeps_index(self):
        index, complete = advance_mission((2.0, 0.0), self.WAYPOINTS, 0, GuidanceParams())
        assert index == 0 and not complete

    def test_exactly_at_radius_advances(self):
        params = GuidanceParams(accept_radius=2.0)
        index, complete = advance_mission((8.0, 0.0), self.WAYPOINTS, 0, params)
        assert index == 1 and not complete

    def test_final_waypoint_completes(self):
        params = GuidanceParams(accept_radius=2.0)
        index, complete = advance_mission((10.0, 9.0), self.WAYPOINTS, 1, params)
        assert index == 2 and complete

    def test_single_segment_completion(self):
        index, complete = advance_mission((9.0, 0.5), [(0.0, 0.0), (10.0, 0.0)], 0, GuidanceParams())
        assert complete

    def test_follow_path_speed_zero_after_completion(self):
        out, index = follow_path((10.0, 9.5), self.WAYPOINTS, 1, GuidanceParams())
        assert out.mission_complete
        assert out.speed_des == 0.0

    def test_follow_path_requires_two_waypoints(self):
        with pytest.raises(ValueError):
            follow_path((0.0, 0.0), [(1.0, 1.0)], 0, GuidanceParams())
