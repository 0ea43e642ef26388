"""Feedback laws: PI speed and PD heading control for the surface vessel,
differential thrust allocation with per-motor saturation, and the
proportional horizontal-velocity law used by the aerial vehicle while
homing on a target.

Controller state is a value passed in and returned; nothing here mutates
shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from .dynamics import UavParams, UsvParams, wrap_angle


class GainSet(BaseModel):
    """Controller gains and limits.

    Defaults are tuned against the default vessel so that a rest-to-1 m/s
    speed step settles within 5% without limit cycling and the heading
    loop is near critically damped.  All are scenario-overridable.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    speed_kp: float = Field(60.0, ge=0.0, description="N per (m/s)")
    speed_ki: float = Field(10.0, ge=0.0, description="N per (m/s * s)")
    speed_integral_limit: float = Field(50.0, gt=0.0, description="integral-term clamp, N")
    heading_kp: float = Field(80.0, ge=0.0, description="N m per rad")
    heading_kd: float = Field(40.0, ge=0.0, description="N m per (rad/s)")
    uav_kp_xy: float = Field(0.8, ge=0.0, description="horizontal position-to-velocity gain, 1/s")
    uav_v_descend: float = Field(0.4, gt=0.0, description="descent rate during final approach, m/s")


@dataclass(slots=True)
class SpeedCtrlState:
    """PI integrator memory (accumulated error * seconds)."""

    integral: float = 0.0


@dataclass(slots=True)
class MotorCommand:
    thrust_left: float
    thrust_right: float


def pi_speed(
    speed_des: float,
    speed_meas: float,
    state: SpeedCtrlState,
    gains: GainSet,
    dt: float,
) -> tuple[float, SpeedCtrlState]:
    """PI speed law returning (total thrust command in N, new state).

    Anti-windup clamps the integral so the integral *term* never exceeds
    ``speed_integral_limit`` in magnitude.
    """
    error = speed_des - speed_meas
    integral = state.integral + error * dt
    if gains.speed_ki > 0.0:
        bound = gains.speed_integral_limit / gains.speed_ki
        integral = min(bound, max(-bound, integral))
    return gains.speed_kp * error + gains.speed_ki * integral, SpeedCtrlState(integral)


def pd_heading(
    heading_des: float, yaw_meas: float, yaw_rate_meas: float, gains: GainSet
) -> float:
    """PD heading law returning a yaw moment command in N m.

    The error is wrapped to (-pi, pi] (shortest turn); the derivative
    term uses the measured yaw rate rather than a differentiated error,
    which avoids setpoint kick.
    """
    error = wrap_angle(heading_des - yaw_meas)
    return gains.heading_kp * error - gains.heading_kd * yaw_rate_meas


def allocate_thrust(total_thrust: float, yaw_moment: float, params: UsvParams) -> MotorCommand:
    """Map (total thrust, yaw moment) to saturated left/right motor thrusts.

    Unsaturated: T_l = total/2 - moment/(2b), T_r = total/2 + moment/(2b).
    When a motor would exceed its limit the yaw moment takes priority:
    the differential is preserved by shifting the common mode while it
    fits, and only scaled down when the differential alone exceeds what
    both motors can produce.  Heading authority matters more than speed
    for path convergence.
    """
    tmax = params.thrust_max
    half_diff = yaw_moment / (2.0 * params.motor_lever)
    left = 0.5 * total_thrust - half_diff
    right = 0.5 * total_thrust + half_diff
    if abs(left) <= tmax and abs(right) <= tmax:
        return MotorCommand(left, right)

    diff = 2.0 * half_diff  # desired T_r - T_l
    if abs(diff) <= 2.0 * tmax:
        span = tmax - 0.5 * abs(diff)
        common = min(span, max(-span, 0.5 * total_thrust))
        return MotorCommand(common - 0.5 * diff, common + 0.5 * diff)

    sign = math.copysign(1.0, diff)
    return MotorCommand(-sign * tmax, sign * tmax)


def uav_landing_velocity(
    rel_offset: tuple[float, float],
    descend: bool,
    gains: GainSet,
    uav_params: UavParams,
) -> tuple[float, float, float]:
    """Velocity command homing on a horizontal offset.

    Horizontal: proportional on the offset with a magnitude clamp at
    ``v_xy_max``.  Vertical: a fixed descent rate when ``descend`` is
    set (the landing sequencer gates this), otherwise altitude hold.
    """
    vx = gains.uav_kp_xy * rel_offset[0]
    vy = gains.uav_kp_xy * rel_offset[1]
    speed = math.hypot(vx, vy)
    if speed > uav_params.v_xy_max:
        scale = uav_params.v_xy_max / speed
        vx *= scale
        vy *= scale
    vz = -min(gains.uav_v_descend, uav_params.v_down_max) if descend else 0.0
    return (vx, vy, vz)
