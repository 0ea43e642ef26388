"""Measurement models: GPS, compass, and the narrowband IR beacon detector.

All samplers are pure functions of (truth, params, rng); reproducibility
comes from the caller passing a deterministically derived generator.
Noiseless parameter sets reproduce ground truth exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .dynamics import UavState, wrap_angle


class SensorParams(BaseModel):
    """Noise, rate, and geometry parameters of all onboard sensors.

    GPS position noise is standard-receiver scale (meters); the velocity
    channel models a Doppler-derived ground velocity, far more accurate
    than differencing position fixes.  The beacon detector sees the
    emitter only inside a downward cone of ``beacon_half_angle`` and
    within ``beacon_max_range`` slant range; ``beacon_dropout_p`` is the
    per-sample probability that the narrowband filter misses a valid
    return.  False positives are not modeled.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    gps_sigma: float = Field(1.5, ge=0.0, description="per-axis position noise, m")
    gps_vel_sigma: float = Field(0.05, ge=0.0, description="per-axis velocity noise, m/s")
    gps_rate: float = Field(5.0, gt=0.0, description="Hz")
    compass_sigma: float = Field(0.02, ge=0.0, description="heading noise, rad")
    beacon_half_angle: float = Field(0.5236, gt=0.0, lt=math.pi / 2, description="rad")
    beacon_max_range: float = Field(15.0, gt=0.0, description="slant range limit, m")
    beacon_sigma: float = Field(0.03, ge=0.0, description="per-axis offset noise, m")
    beacon_rate: float = Field(10.0, gt=0.0, description="Hz")
    beacon_dropout_p: float = Field(0.02, ge=0.0, lt=1.0)


@dataclass(slots=True)
class GpsFix:
    """Noisy world-frame position and ground velocity."""

    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    valid: bool = True


@dataclass(slots=True)
class CompassReading:
    yaw_meas: float  # rad, in (-pi, pi]


@dataclass(slots=True)
class IrBeaconMeasurement:
    """Beacon position relative to the detector in the vehicle's level frame.

    (dx, dy) point from the detector toward the beacon and are NaN when
    ``detected`` is false.  Non-detection is a value, not an error.
    """

    dx: float
    dy: float
    detected: bool


def sample_gps(
    true_pos: tuple[float, float],
    params: SensorParams,
    rng: np.random.Generator,
    true_vel: tuple[float, float] = (0.0, 0.0),
) -> GpsFix:
    """Position and velocity fix with independent Gaussian noise per axis."""
    noise = rng.standard_normal(4)
    return GpsFix(
        x=true_pos[0] + params.gps_sigma * float(noise[0]),
        y=true_pos[1] + params.gps_sigma * float(noise[1]),
        vx=true_vel[0] + params.gps_vel_sigma * float(noise[2]),
        vy=true_vel[1] + params.gps_vel_sigma * float(noise[3]),
    )


def sample_compass(
    true_yaw: float, params: SensorParams, rng: np.random.Generator
) -> CompassReading:
    """Heading measurement, wrapped back to (-pi, pi]."""
    noise = float(rng.standard_normal())
    return CompassReading(yaw_meas=wrap_angle(true_yaw + params.compass_sigma * noise))


def sample_ir_beacon(
    uav: UavState,
    beacon_world: tuple[float, float, float],
    params: SensorParams,
    rng: np.random.Generator,
) -> IrBeaconMeasurement:
    """Relative beacon measurement gated by cone, range, and dropout.

    Detection requires the true horizontal offset to lie inside the cone
    (rho <= h * tan(half_angle)), slant range within the limit, and the
    dropout draw to pass.  The vehicle's level frame is world-aligned
    (the point-mass vehicle holds zero yaw), so offsets are world-frame.
    """
    u = float(rng.random())  # dropout gate; drawn every sample for stream regularity
    h = uav.pz - beacon_world[2]
    offset_x = beacon_world[0] - uav.px
    offset_y = beacon_world[1] - uav.py
    if h <= 0.0:
        return IrBeaconMeasurement(math.nan, math.nan, False)
    rho = math.hypot(offset_x, offset_y)
    slant = math.hypot(rho, h)
    in_cone = rho <= h * math.tan(params.beacon_half_angle)
    in_range = slant <= params.beacon_max_range
    if not (in_cone and in_range and u >= params.beacon_dropout_p):
        return IrBeaconMeasurement(math.nan, math.nan, False)
    noise = rng.standard_normal(2)
    return IrBeaconMeasurement(
        dx=offset_x + params.beacon_sigma * float(noise[0]),
        dy=offset_y + params.beacon_sigma * float(noise[1]),
        detected=True,
    )
