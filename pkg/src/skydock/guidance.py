"""Carrot-chasing path following over an ordered waypoint list.

The vessel is projected onto the current path segment; the carrot is
placed a fixed arc distance ahead of the projection (clamped to the
segment end) and the desired heading points at it.  Cross-track error
is signed positive when the vehicle is left of the w1->w2 direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

Point = tuple[float, float]


class GuidanceParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    carrot_delta: float = Field(3.0, gt=0.0, description="carrot lead distance along path, m")
    accept_radius: float = Field(2.0, gt=0.0, description="waypoint acceptance radius, m")
    cruise_speed: float = Field(1.0, gt=0.0, description="commanded speed on path, m/s")


@dataclass(frozen=True, slots=True)
class PathSegment:
    w1: Point
    w2: Point

    def __post_init__(self) -> None:
        if self.length() <= 0.0:
            raise ValueError(f"degenerate path segment at {self.w1}")

    def length(self) -> float:
        return math.hypot(self.w2[0] - self.w1[0], self.w2[1] - self.w1[1])

    def point_at(self, s: float) -> Point:
        """Point at normalized arc parameter s in [0, 1]."""
        return (
            self.w1[0] + s * (self.w2[0] - self.w1[0]),
            self.w1[1] + s * (self.w2[1] - self.w1[1]),
        )


@dataclass(slots=True)
class GuidanceOutput:
    heading_des: float  # rad, (-pi, pi]
    speed_des: float  # m/s, >= 0
    cross_track: float  # m, signed (+ left of path)
    segment_index: int
    mission_complete: bool


def project_onto_segment(p: Point, seg: PathSegment) -> tuple[Point, float]:
    """Closest point on the finite segment and its clamped arc parameter."""
    dx = seg.w2[0] - seg.w1[0]
    dy = seg.w2[1] - seg.w1[1]
    s = ((p[0] - seg.w1[0]) * dx + (p[1] - seg.w1[1]) * dy) / (dx * dx + dy * dy)
    s = min(1.0, max(0.0, s))
    return seg.point_at(s), s


def signed_cross_track(p: Point, seg: PathSegment) -> float:
    """Perpendicular distance from p to the infinite line w1->w2, + on the left."""
    dx = seg.w2[0] - seg.w1[0]
    dy = seg.w2[1] - seg.w1[1]
    return ((p[0] - seg.w1[0]) * (-dy) + (p[1] - seg.w1[1]) * dx) / seg.length()


def carrot_chase(
    p: Point, seg: PathSegment, params: GuidanceParams, segment_index: int = 0
) -> GuidanceOutput:
    """Heading/speed command steering toward a carrot ahead of the projection.

    The carrot sits at arc parameter min(s + delta/|seg|, 1), so it stays
    on the finite segment even near its end.
    """
    _, s = project_onto_segment(p, seg)
    carrot = seg.point_at(min(s + params.carrot_delta / seg.length(), 1.0))
    return GuidanceOutput(
        heading_des=math.atan2(carrot[1] - p[1], carrot[0] - p[0]),
        speed_des=params.cruise_speed,
        cross_track=signed_cross_track(p, seg),
        segment_index=segment_index,
        mission_complete=False,
    )


def advance_mission(
    p: Point, waypoints: list[Point], current_index: int, params: GuidanceParams
) -> tuple[int, bool]:
    """Advance to the next segment once within the acceptance radius of its end.

    The boundary is inclusive: exactly at the radius advances.  One
    advance per call keeps the walk deterministic.
    """
    n_segments = len(waypoints) - 1
    if current_index < n_segments:
        target = waypoints[current_index + 1]
        if math.hypot(p[0] - target[0], p[1] - target[1]) <= params.accept_radius:
            current_index += 1
    return current_index, current_index >= n_segments


def follow_path(
    p: Point, waypoints: list[Point], current_index: int, params: GuidanceParams
) -> tuple[GuidanceOutput, int]:
    """One guidance update: mission bookkeeping plus the carrot command.

    After the final waypoint is accepted the speed command drops to zero
    and the heading command aligns with the last segment direction.
    """
    if len(waypoints) < 2:
        raise ValueError("path following needs at least 2 waypoints")
    index, complete = advance_mission(p, waypoints, current_index, params)
    if complete:
        last = PathSegment(waypoints[-2], waypoints[-1])
        heading = math.atan2(last.w2[1] - last.w1[1], last.w2[0] - last.w1[0])
        out = GuidanceOutput(
            heading_des=heading,
            speed_des=0.0,
            cross_track=signed_cross_track(p, last),
            segment_index=len(waypoints) - 2,
            mission_complete=True,
        )
        return out, index
    seg = PathSegment(waypoints[index], waypoints[index + 1])
    return carrot_chase(p, seg, params, segment_index=index), index
