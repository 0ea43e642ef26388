"""Vehicle and wind dynamics with a fixed-step RK4 integrator.

World frame: x/y in the horizontal plane, z up, water surface at z = 0.
Angles are radians, wrapped to (-pi, pi].

The surface vessel is a planar surge-yaw craft driven by two fixed
thrusters (differential drive): no sway state, linear-plus-quadratic
surge drag, linear yaw drag.  The aerial vehicle is a point mass whose
velocity tracks a commanded velocity as a first-order lag; wind enters
as an additive ground-velocity component scaled by a coupling factor.
Gusts evolve as a discrete mean-reverting (AR(1)) process on top of a
constant mean wind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = math.fmod(angle + math.pi, TWO_PI)
    if w <= 0.0:
        w += TWO_PI
    return w - math.pi


class UsvParams(BaseModel):
    """Physical parameters of the catamaran surface vessel.

    Defaults model a ~40 kg craft (two 17.4 kg assembled hulls plus deck
    structure) that reaches roughly 1.5 m/s at 40 N total thrust.  The
    thrust limit is the rated maximum of the fitted trolling motors.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    mass: float = Field(40.0, gt=0.0, description="total mass, kg")
    yaw_inertia: float = Field(15.0, gt=0.0, description="yaw moment of inertia, kg m^2")
    linear_drag: float = Field(10.0, ge=0.0, description="surge drag, N per (m/s)")
    quad_drag: float = Field(11.1, ge=0.0, description="surge drag, N per (m/s)^2")
    yaw_drag: float = Field(20.0, ge=0.0, description="yaw damping, N m per (rad/s)")
    motor_lever: float = Field(0.5, gt=0.0, description="half distance between thruster lines, m")
    thrust_max: float = Field(133.8, gt=0.0, description="per-motor thrust limit, N")
    wind_force_coeff: float = Field(
        0.0, ge=0.0, description="surge force per m/s of along-heading wind, N s/m (0 disables)"
    )
    start: tuple[float, float, float] = Field(
        (0.0, 0.0, 0.0), description="initial pose (x m, y m, yaw rad)"
    )


class UavParams(BaseModel):
    """Response model of the velocity-commanded aerial vehicle.

    The autopilot is treated as a black box that tracks a velocity
    setpoint with time constant ``tau``; ``wind_coupling`` is the
    residual fraction of the wind the autopilot fails to reject.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    tau: float = Field(0.5, gt=0.0, description="velocity response time constant, s")
    v_xy_max: float = Field(3.0, gt=0.0, description="horizontal speed limit, m/s")
    v_up_max: float = Field(2.0, gt=0.0, description="climb rate limit, m/s")
    v_down_max: float = Field(1.0, gt=0.0, description="descent rate limit, m/s")
    wind_coupling: float = Field(0.05, ge=0.0, le=1.0)
    start: tuple[float, float, float] = Field(
        (-30.0, 15.0, 6.0), description="initial position (x, y, z), m"
    )


class WindParams(BaseModel):
    """Constant mean wind plus a mean-reverting gust process."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    mean: tuple[float, float] = Field((0.0, 0.0), description="mean wind velocity, m/s")
    gust_sigma: float = Field(0.0, ge=0.0, description="gust diffusion amplitude, m/s")
    gust_theta: float = Field(0.5, ge=0.0, description="gust mean-reversion rate, 1/s")


@dataclass(slots=True)
class UsvState:
    """Surface vessel state: planar pose plus body velocities."""

    x: float = 0.0
    y: float = 0.0
    yaw: float = 0.0  # wrapped to (-pi, pi]
    u: float = 0.0  # surge (body forward), m/s
    r: float = 0.0  # yaw rate, rad/s


@dataclass(slots=True)
class UavState:
    """Aerial vehicle state: world position and velocity."""

    px: float = 0.0
    py: float = 0.0
    pz: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0


@dataclass(slots=True)
class WindState:
    """Current gust velocity; the mean component lives in WindParams."""

    gust_x: float = 0.0
    gust_y: float = 0.0


class NumericsError(RuntimeError):
    """A state became non-finite during integration."""


def _check_thrust(thrust_left: float, thrust_right: float, params: UsvParams) -> None:
    limit = params.thrust_max + 1e-9
    if abs(thrust_left) > limit or abs(thrust_right) > limit:
        raise ValueError(
            f"thrust command ({thrust_left:.3f}, {thrust_right:.3f}) N exceeds "
            f"+/-{params.thrust_max} N; clamp via allocate_thrust first"
        )


def _usv_rates(
    s: tuple[float, ...],
    thrust_left: float,
    thrust_right: float,
    params: UsvParams,
    wind_vel: tuple[float, float],
) -> tuple[float, ...]:
    _, _, yaw, u, r = s
    surge_force = thrust_left + thrust_right - params.linear_drag * u - params.quad_drag * u * abs(u)
    if params.wind_force_coeff > 0.0:
        surge_force += params.wind_force_coeff * (
            wind_vel[0] * math.cos(yaw) + wind_vel[1] * math.sin(yaw)
        )
    moment = (thrust_right - thrust_left) * params.motor_lever - params.yaw_drag * r
    return (
        u * math.cos(yaw),
        u * math.sin(yaw),
        r,
        surge_force / params.mass,
        moment / params.yaw_inertia,
    )


def usv_derivatives(
    state: UsvState,
    thrust_left: float,
    thrust_right: float,
    params: UsvParams,
    wind_vel: tuple[float, float] = (0.0, 0.0),
) -> tuple[float, float, float, float, float]:
    """Time derivative of the USV state: (dx, dy, dyaw, du, dr).

    Thrusts must already be within the per-motor limit.
    """
    _check_thrust(thrust_left, thrust_right, params)
    return _usv_rates(
        (state.x, state.y, state.yaw, state.u, state.r),
        thrust_left,
        thrust_right,
        params,
        wind_vel,
    )


def _uav_rates(
    s: tuple[float, ...],
    v_cmd: tuple[float, float, float],
    wind_vel: tuple[float, float],
    params: UavParams,
) -> tuple[float, ...]:
    _, _, _, vx, vy, vz = s
    c = params.wind_coupling
    return (
        vx + c * wind_vel[0],
        vy + c * wind_vel[1],
        vz,
        (v_cmd[0] - vx) / params.tau,
        (v_cmd[1] - vy) / params.tau,
        (v_cmd[2] - vz) / params.tau,
    )


def uav_derivatives(
    state: UavState,
    v_cmd: tuple[float, float, float],
    wind_vel: tuple[float, float],
    params: UavParams,
) -> tuple[float, float, float, float, float, float]:
    """Time derivative of the UAV state: (dpx, dpy, dpz, dvx, dvy, dvz)."""
    return _uav_rates(
        (state.px, state.py, state.pz, state.vx, state.vy, state.vz),
        v_cmd,
        wind_vel,
        params,
    )


def wind_step(
    wind: WindState, params: WindParams, dt: float, rng: np.random.Generator
) -> WindState:
    """Advance the gust one step of the discrete mean-reverting process.

    gust <- gust * (1 - theta*dt) + sigma*sqrt(dt)*xi, xi ~ N(0, I).
    Stationary per-axis variance is sigma^2 / (2*theta - theta^2*dt).
    The normal draw happens even for sigma = 0 so stream consumption does
    not depend on parameter values.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    xi = rng.standard_normal(2)
    decay = 1.0 - params.gust_theta * dt
    amp = params.gust_sigma * math.sqrt(dt)
    return WindState(
        gust_x=wind.gust_x * decay + amp * float(xi[0]),
        gust_y=wind.gust_y * decay + amp * float(xi[1]),
    )


def _rk4(y: tuple[float, ...], h: float, rates) -> tuple[float, ...]:
    k1 = rates(y)
    k2 = rates(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k1)))
    k3 = rates(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k2)))
    k4 = rates(tuple(yi + h * ki for yi, ki in zip(y, k3)))
    sixth = h / 6.0
    return tuple(
        yi + sixth * (a + 2.0 * (b + c) + d) for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
    )


def integrate_step(
    usv: UsvState,
    uav: UavState,
    thrust_left: float,
    thrust_right: float,
    v_cmd: tuple[float, float, float],
    wind_vel: tuple[float, float],
    usv_params: UsvParams,
    uav_params: UavParams,
    dt: float,
) -> tuple[UsvState, UavState]:
    """One classical RK4 step of both vehicles under zero-order-hold inputs.

    The gust is advanced separately by wind_step; within the step the
    total wind velocity is held constant.  Yaw is re-wrapped afterwards.
    """
    _check_thrust(thrust_left, thrust_right, usv_params)

    usv_next = _rk4(
        (usv.x, usv.y, usv.yaw, usv.u, usv.r),
        dt,
        lambda s: _usv_rates(s, thrust_left, thrust_right, usv_params, wind_vel),
    )
    uav_next = _rk4(
        (uav.px, uav.py, uav.pz, uav.vx, uav.vy, uav.vz),
        dt,
        lambda s: _uav_rates(s, v_cmd, wind_vel, uav_params),
    )

    for v in usv_next + uav_next:
        if not math.isfinite(v):
            raise NumericsError("non-finite state after integration step")

    return (
        UsvState(usv_next[0], usv_next[1], wrap_angle(usv_next[2]), usv_next[3], usv_next[4]),
        UavState(*uav_next),
    )
