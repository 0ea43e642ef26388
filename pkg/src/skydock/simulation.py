"""Closed-loop trial execution and the Monte Carlo batch driver.

One trial steps the physics at ``sim_dt``, the controllers at
``control_dt``, and each sensor at its own rate, until touchdown,
mission completion, or the duration limit.  Everything stochastic draws
from streams derived from (seed, source, trial index), so a trial is a
pure function of (scenario, trial_index); batches may run trials on a
thread pool without changing any output.

Per-step records capture the state at the start of the step together
with the commands held over it, which makes the logs directly checkable
against the global invariants (thrust limits, wrapped angles, legal
phase walks, descent only during the precision phase).
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .control import SpeedCtrlState, allocate_thrust, pd_heading, pi_speed, uav_landing_velocity
from .dynamics import (
    NumericsError,
    UavState,
    UsvState,
    WindState,
    integrate_step,
    wind_step,
    wrap_angle,
)
from .guidance import PathSegment, follow_path, signed_cross_track
from .landing import (
    ALLOWED_TRANSITIONS,
    LandingCounters,
    LandingPhase,
    TrialOutcome,
    classify_landing,
    fsm_step,
)
from .scenario import Scenario, TrialStreams, WorldClock, advance_clock
from .sensors import sample_compass, sample_gps, sample_ir_beacon

# Surge speed below which a finished mission counts as stopped.
MISSION_STOP_SPEED = 0.05

# Phase column value when the landing sequencer is disabled.
NO_PHASE = "NONE"


class SimulationFault(RuntimeError):
    """The integrator produced a non-finite state (with step context)."""


@dataclass(slots=True)
class StepRecord:
    """State at the start of a step plus the commands applied over it."""

    t: float
    usv_x: float
    usv_y: float
    usv_yaw: float
    usv_u: float
    usv_r: float
    uav_px: float
    uav_py: float
    uav_pz: float
    phase: str
    thrust_left: float
    thrust_right: float
    cross_track: float
    heading_err: float
    speed_des: float
    vz_cmd: float
    beacon_detected: bool


@dataclass(slots=True)
class TrialLog:
    trial_index: int
    records: list[StepRecord]
    outcome: TrialOutcome


@dataclass(slots=True)
class BatchSummary:
    """Per-trial outcomes plus batch statistics over touchdown deltas."""

    n_trials: int
    outcomes: list[TrialOutcome]
    n_touchdown: int
    n_on_platform: int
    n_meets_accuracy_bound: int
    mean_delta_x: float | None
    mean_delta_y: float | None
    std_delta_x: float | None
    std_delta_y: float | None


def _sensor_interval(rate_hz: float, sim_dt: float) -> int:
    """Sampling interval in physics steps (rates quantize to the step grid)."""
    return max(1, round(1.0 / (rate_hz * sim_dt)))


def run_trial(scenario: Scenario, trial_index: int = 0) -> TrialLog:
    """Execute one seeded trial to its terminal outcome.

    Deterministic given (scenario, trial_index).  A reached duration
    limit is recorded as a "timeout" outcome, not raised.
    """
    sc = scenario
    streams = TrialStreams.for_trial(sc.seed, trial_index)
    usv = UsvState(sc.usv.start[0], sc.usv.start[1], wrap_angle(sc.usv.start[2]))
    uav = UavState(sc.uav.start[0], sc.uav.start[1], sc.uav.start[2])
    wind = WindState()
    clock = WorldClock(0, sc.sim_dt)

    ctrl_every = sc.control_every
    gps_every = _sensor_interval(sc.sensors.gps_rate, sc.sim_dt)
    beacon_every = _sensor_interval(sc.sensors.beacon_rate, sc.sim_dt)

    waypoints = [tuple(w) for w in sc.waypoints]
    if len(waypoints) == 1:
        # A single target point becomes the segment from the start pose to it.
        waypoints.insert(0, (usv.x, usv.y))
    n_segments = len(waypoints) - 1
    seg_index = 0
    mission_complete = not waypoints
    hold_heading = usv.yaw

    landing_on = sc.landing.enabled
    phase = LandingPhase.CRUISE_GPS
    counters = LandingCounters()
    timeline: list[tuple[float, str]] = [(0.0, phase.value)] if landing_on else []
    hold_phases = (LandingPhase.ACQUIRE, LandingPhase.PRECISION_DESCENT, LandingPhase.REACQUIRE)

    speed_ctrl = SpeedCtrlState()
    gps_fix = None
    thrust_left = thrust_right = 0.0
    v_cmd = (0.0, 0.0, 0.0)
    heading_err = 0.0
    speed_des = 0.0
    cross_track = 0.0
    beacon_seen = False
    records: list[StepRecord] = []
    outcome: TrialOutcome | None = None

    while True:
        t = clock.t
        step = clock.step_index

        if step % ctrl_every == 0:
            # Sensors due on this tick.
            if step % gps_every == 0:
                vel_world = (usv.u * math.cos(usv.yaw), usv.u * math.sin(usv.yaw))
                gps_fix = sample_gps((usv.x, usv.y), sc.sensors, streams.gps, vel_world)
            compass = sample_compass(usv.yaw, sc.sensors, streams.compass)
            beacon = None
            if landing_on and step % beacon_every == 0:
                beacon_world = (usv.x, usv.y, sc.landing.platform_deck_z)
                beacon = sample_ir_beacon(uav, beacon_world, sc.sensors, streams.beacon)
            beacon_seen = beacon is not None and beacon.detected

            # Aerial vehicle: landing sequencer drives the velocity command.
            if landing_on:
                fsm = fsm_step(phase, counters, uav, gps_fix, beacon, sc.landing)
                if fsm.phase is not phase:
                    timeline.append((t, fsm.phase.value))
                phase, counters = fsm.phase, fsm.counters
                if phase is LandingPhase.TOUCHDOWN:
                    v_cmd = (0.0, 0.0, 0.0)
                else:
                    v_cmd = uav_landing_velocity(fsm.target, fsm.descend, sc.gains, sc.uav)
                    if phase is LandingPhase.REACQUIRE:
                        climb = min(
                            sc.uav.v_up_max,
                            max(0.0, sc.landing.acquire_altitude - uav.pz),
                        )
                        v_cmd = (v_cmd[0], v_cmd[1], climb)

            # Surface vessel pilot: path guidance or station hold.
            if waypoints and not mission_complete:
                guide, seg_index = follow_path((usv.x, usv.y), waypoints, seg_index, sc.guidance)
                mission_complete = guide.mission_complete
                heading_des = guide.heading_des
                speed_des = guide.speed_des
                hold_heading = heading_des
            else:
                heading_des = hold_heading
                speed_des = 0.0
            if waypoints:
                i = min(seg_index, n_segments - 1)
                cross_track = signed_cross_track(
                    (usv.x, usv.y), PathSegment(waypoints[i], waypoints[i + 1])
                )
            if landing_on and sc.landing.hold_station and phase in hold_phases:
                speed_des = 0.0

            yaw_meas = compass.yaw_meas
            u_meas = gps_fix.vx * math.cos(yaw_meas) + gps_fix.vy * math.sin(yaw_meas)
            total_thrust, speed_ctrl = pi_speed(speed_des, u_meas, speed_ctrl, sc.gains, sc.control_dt)
            heading_err = wrap_angle(heading_des - yaw_meas)
            moment = pd_heading(heading_des, yaw_meas, usv.r, sc.gains)
            motor = allocate_thrust(total_thrust, moment, sc.usv)
            thrust_left, thrust_right = motor.thrust_left, motor.thrust_right

        records.append(
            StepRecord(
                t=t,
                usv_x=usv.x,
                usv_y=usv.y,
                usv_yaw=usv.yaw,
                usv_u=usv.u,
                usv_r=usv.r,
                uav_px=uav.px,
                uav_py=uav.py,
                uav_pz=uav.pz,
                phase=phase.value if landing_on else NO_PHASE,
                thrust_left=thrust_left,
                thrust_right=thrust_right,
                cross_track=cross_track,
                heading_err=heading_err,
                speed_des=speed_des,
                vz_cmd=v_cmd[2],
                beacon_detected=beacon_seen,
            )
        )

        if landing_on and phase is LandingPhase.TOUCHDOWN:
            outcome = classify_landing(
                uav, usv, sc.landing, touchdown_time=t, phase_timeline=timeline
            )
            break
        if not landing_on and mission_complete and abs(usv.u) <= MISSION_STOP_SPEED:
            outcome = TrialOutcome(status="mission_complete", phase_timeline=[])
            break
        if t >= sc.duration_max:
            outcome = TrialOutcome(status="timeout", phase_timeline=timeline)
            break

        wind = wind_step(wind, sc.wind, sc.sim_dt, streams.wind_gust)
        wind_vel = (sc.wind.mean[0] + wind.gust_x, sc.wind.mean[1] + wind.gust_y)
        try:
            usv, uav = integrate_step(
                usv, uav, thrust_left, thrust_right, v_cmd, wind_vel, sc.usv, sc.uav, sc.sim_dt
            )
        except NumericsError as exc:
            raise SimulationFault(
                f"trial {trial_index}: {exc} at step {step} (t={t:.3f} s)"
            ) from exc
        clock = advance_clock(clock, sc)

    return TrialLog(trial_index=trial_index, records=records, outcome=outcome)


def summarize(outcomes: list[TrialOutcome]) -> BatchSummary:
    """Batch statistics over the touchdown deltas (population std)."""
    dx = [o.delta_x for o in outcomes if o.status == "touchdown"]
    dy = [o.delta_y for o in outcomes if o.status == "touchdown"]
    touched = len(dx)
    return BatchSummary(
        n_trials=len(outcomes),
        outcomes=list(outcomes),
        n_touchdown=touched,
        n_on_platform=sum(o.on_platform for o in outcomes),
        n_meets_accuracy_bound=sum(o.meets_accuracy_bound for o in outcomes),
        mean_delta_x=statistics.fmean(dx) if touched else None,
        mean_delta_y=statistics.fmean(dy) if touched else None,
        std_delta_x=statistics.pstdev(dx) if touched else None,
        std_delta_y=statistics.pstdev(dy) if touched else None,
    )


def run_monte_carlo(
    scenario: Scenario, n: int, jobs: int = 1
) -> tuple[BatchSummary, list[TrialLog]]:
    """Run trials 0..n-1 and summarize.

    Trials share no mutable state, so ``jobs > 1`` fans them out on a
    thread pool; results are collected in trial order and are identical
    to a serial run.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            logs = list(pool.map(lambda i: run_trial(scenario, i), range(n)))
    else:
        logs = [run_trial(scenario, i) for i in range(n)]
    return summarize([log.outcome for log in logs]), logs


def path_following_run(scenario: Scenario) -> TrialLog:
    """Vessel-only path-following run (landing sequencer forced off)."""
    if len(scenario.waypoints) < 2:
        raise ValueError("path following needs at least 2 waypoints")
    if scenario.landing.enabled:
        scenario = scenario.model_copy(
            update={"landing": scenario.landing.model_copy(update={"enabled": False})}
        )
    return run_trial(scenario, trial_index=0)


def validate_log(log: TrialLog, scenario: Scenario) -> list[str]:
    """Check a log against the global invariants; returns violations.

    Checked: strictly increasing time, finite states, per-motor thrust
    within the limit, yaw and heading error wrapped to (-pi, pi], legal
    phase-graph walks with an absorbing touchdown state, and descent
    commands only during the precision phase.
    """
    problems: list[str] = []
    tmax = scenario.usv.thrust_max + 1e-9
    prev_t = -math.inf
    prev_phase: LandingPhase | None = None
    for i, r in enumerate(log.records):
        if not r.t > prev_t:
            problems.append(f"record {i}: time not strictly increasing ({r.t} after {prev_t})")
        prev_t = r.t
        for name in ("usv_x", "usv_y", "usv_yaw", "usv_u", "usv_r", "uav_px", "uav_py", "uav_pz"):
            if not math.isfinite(getattr(r, name)):
                problems.append(f"record {i}: non-finite {name}")
        if abs(r.thrust_left) > tmax or abs(r.thrust_right) > tmax:
            problems.append(
                f"record {i}: thrust ({r.thrust_left:.2f}, {r.thrust_right:.2f}) exceeds limit"
            )
        if not (-math.pi < r.usv_yaw <= math.pi):
            problems.append(f"record {i}: yaw {r.usv_yaw} outside (-pi, pi]")
        if not (-math.pi < r.heading_err <= math.pi):
            problems.append(f"record {i}: heading error {r.heading_err} outside (-pi, pi]")
        if r.phase != NO_PHASE:
            phase = LandingPhase(r.phase)
            if prev_phase is not None and phase is not prev_phase:
                if phase not in ALLOWED_TRANSITIONS[prev_phase]:
                    problems.append(
                        f"record {i}: illegal transition {prev_phase.value} -> {phase.value}"
                    )
            if r.vz_cmd < 0.0 and phase is not LandingPhase.PRECISION_DESCENT:
                problems.append(f"record {i}: descent command in phase {phase.value}")
            prev_phase = phase
    return problems
