"""Two-phase landing sequencer and touchdown classification.

The aerial vehicle first navigates to the vessel on the vessel's GPS
fix (coarse phase), holds above it until the IR beacon is locked, then
descends on beacon guidance (precision phase).  Beacon loss during the
descent triggers a climb back to the hold altitude over the last known
beacon position.  Lock/loss are debounced with consecutive-frame
counters so every transition is deterministic and replayable.

Touchdown accuracy is judged in the vessel's body (platform) frame:
delta = detector position minus beacon position, rotated by -yaw.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from pydantic import BaseModel, ConfigDict, Field

from .dynamics import UavState, UsvState
from .sensors import GpsFix, IrBeaconMeasurement

# Target accuracy envelope for a touchdown, per axis (platform frame).
ACCURACY_BOUND_M = 0.20

# Altitude slack below the hold altitude at which a climb-back counts as done.
REACQUIRE_ALT_TOL = 0.25


class LandingPhase(enum.Enum):
    CRUISE_GPS = "CRUISE_GPS"
    ACQUIRE = "ACQUIRE"
    PRECISION_DESCENT = "PRECISION_DESCENT"
    REACQUIRE = "REACQUIRE"
    TOUCHDOWN = "TOUCHDOWN"


# Legal phase-graph edges (self-loops are implicit; TOUCHDOWN is absorbing).
ALLOWED_TRANSITIONS: dict[LandingPhase, frozenset[LandingPhase]] = {
    LandingPhase.CRUISE_GPS: frozenset({LandingPhase.ACQUIRE}),
    LandingPhase.ACQUIRE: frozenset({LandingPhase.PRECISION_DESCENT}),
    LandingPhase.PRECISION_DESCENT: frozenset(
        {LandingPhase.REACQUIRE, LandingPhase.TOUCHDOWN}
    ),
    LandingPhase.REACQUIRE: frozenset(
        {LandingPhase.ACQUIRE, LandingPhase.PRECISION_DESCENT}
    ),
    LandingPhase.TOUCHDOWN: frozenset(),
}


class LandingParams(BaseModel):
    """Sequencer thresholds and platform geometry.

    The platform is 1.2 m x 1.0 m, so the half-dimensions below; the
    beacon sits at the platform centre at deck height.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    enabled: bool = True
    switch_radius: float = Field(3.0, gt=0.0, description="fix distance entering the hold, m")
    acquire_altitude: float = Field(6.0, gt=0.0, description="hold altitude, m")
    lock_frames: int = Field(5, ge=1, description="consecutive detections to start descent")
    loss_frames: int = Field(10, ge=1, description="consecutive misses to abort descent")
    touchdown_alt: float = Field(0.05, gt=0.0, description="height above deck counting as down, m")
    platform_half_x: float = Field(0.6, gt=0.0)
    platform_half_y: float = Field(0.5, gt=0.0)
    platform_deck_z: float = Field(0.2, ge=0.0, description="deck height above water, m")
    hold_station: bool = Field(
        True, description="zero the vessel speed command while the aircraft is landing"
    )


@dataclass(frozen=True, slots=True)
class LandingCounters:
    """Debounce counters plus the last world-frame beacon estimate."""

    consec_detect: int = 0
    consec_miss: int = 0
    beacon_world: tuple[float, float] | None = None


@dataclass(slots=True)
class FsmStep:
    """Result of one sequencer tick."""

    phase: LandingPhase
    counters: LandingCounters
    descend: bool
    target: tuple[float, float] | None  # horizontal offset to fly toward, None at touchdown


@dataclass(slots=True)
class TrialOutcome:
    """Terminal result of one trial.

    ``delta_x``/``delta_y`` are platform-frame touchdown offsets and are
    None unless the trial ended in a touchdown.  ``status`` is one of
    "touchdown", "mission_complete", "timeout".
    """

    status: str
    delta_x: float | None = None
    delta_y: float | None = None
    touchdown_time: float | None = None
    on_platform: bool = False
    meets_accuracy_bound: bool = False
    phase_timeline: list[tuple[float, str]] | None = None


def check_touchdown(
    uav: UavState, platform_deck_z: float, params: LandingParams, phase: LandingPhase
) -> bool:
    """Touchdown iff within ``touchdown_alt`` of the deck during the descent phase."""
    return (
        phase is LandingPhase.PRECISION_DESCENT
        and uav.pz - platform_deck_z <= params.touchdown_alt
    )


def fsm_step(
    phase: LandingPhase,
    counters: LandingCounters,
    uav: UavState,
    usv_gps: GpsFix,
    beacon: IrBeaconMeasurement | None,
    params: LandingParams,
) -> FsmStep:
    """Advance the landing sequencer one control tick.

    ``beacon`` is the fresh detector sample for this tick or None when
    the detector was not due; counters only change on fresh samples.
    At most one phase transition happens per tick.
    """
    if phase is LandingPhase.TOUCHDOWN:
        return FsmStep(phase, counters, False, None)

    if check_touchdown(uav, params.platform_deck_z, params, phase):
        return FsmStep(LandingPhase.TOUCHDOWN, counters, False, None)

    if beacon is not None:
        if beacon.detected:
            counters = LandingCounters(
                consec_detect=counters.consec_detect + 1,
                consec_miss=0,
                beacon_world=(uav.px + beacon.dx, uav.py + beacon.dy),
            )
        else:
            counters = replace(
                counters, consec_detect=0, consec_miss=counters.consec_miss + 1
            )

    if phase is LandingPhase.CRUISE_GPS:
        if math.hypot(usv_gps.x - uav.px, usv_gps.y - uav.py) <= params.switch_radius:
            phase = LandingPhase.ACQUIRE
    elif phase is LandingPhase.ACQUIRE:
        if counters.consec_detect >= params.lock_frames:
            phase = LandingPhase.PRECISION_DESCENT
    elif phase is LandingPhase.PRECISION_DESCENT:
        if counters.consec_miss >= params.loss_frames:
            phase = LandingPhase.REACQUIRE
    elif phase is LandingPhase.REACQUIRE:
        if counters.consec_detect >= params.lock_frames:
            phase = LandingPhase.PRECISION_DESCENT
        elif uav.pz >= params.acquire_altitude - REACQUIRE_ALT_TOL:
            phase = LandingPhase.ACQUIRE

    if phase in (LandingPhase.PRECISION_DESCENT, LandingPhase.REACQUIRE):
        assert counters.beacon_world is not None, "beacon phases require a prior lock"
        target = (counters.beacon_world[0] - uav.px, counters.beacon_world[1] - uav.py)
    else:
        target = (usv_gps.x - uav.px, usv_gps.y - uav.py)

    return FsmStep(phase, counters, phase is LandingPhase.PRECISION_DESCENT, target)


def classify_landing(
    uav_at_touchdown: UavState,
    usv_at_touchdown: UsvState,
    params: LandingParams,
    touchdown_time: float | None = None,
    phase_timeline: list[tuple[float, str]] | None = None,
) -> TrialOutcome:
    """Score a touchdown against the platform geometry.

    The world-frame detector-to-beacon offset is rotated into the vessel
    body frame; the accuracy flag uses a strict per-axis bound while the
    on-platform flag uses the (larger, inclusive) platform halves.
    """
    dwx = uav_at_touchdown.px - usv_at_touchdown.x
    dwy = uav_at_touchdown.py - usv_at_touchdown.y
    c = math.cos(usv_at_touchdown.yaw)
    s = math.sin(usv_at_touchdown.yaw)
    delta_x = c * dwx + s * dwy
    delta_y = -s * dwx + c * dwy
    on_platform = abs(delta_x) <= params.platform_half_x and abs(delta_y) <= params.platform_half_y
    return TrialOutcome(
        status="touchdown",
        delta_x=delta_x,
        delta_y=delta_y,
        touchdown_time=touchdown_time,
        on_platform=on_platform,
        meets_accuracy_bound=abs(delta_x) < ACCURACY_BOUND_M and abs(delta_y) < ACCURACY_BOUND_M,
        phase_timeline=phase_timeline,
    )
