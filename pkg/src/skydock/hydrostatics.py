"""Buoyancy and payload arithmetic for the floatable vehicles.

Archimedes at full submersion: supportable mass = water density times
displaced volume.  Seawater density (1025 kg/m^3) is the default.
"""

from __future__ import annotations

from dataclasses import dataclass

SEAWATER_DENSITY = 1025.0  # kg/m^3


@dataclass(frozen=True, slots=True)
class FloatBody:
    """A floating body: displaced volume, dry mass, and water density."""

    displaced_volume: float  # m^3
    dry_mass: float = 0.0  # kg
    water_density: float = SEAWATER_DENSITY  # kg/m^3

    def __post_init__(self) -> None:
        if self.displaced_volume < 0.0:
            raise ValueError("displaced_volume must be >= 0")
        if self.dry_mass < 0.0:
            raise ValueError("dry_mass must be >= 0")
        if self.water_density <= 0.0:
            raise ValueError("water_density must be > 0")


def buoyant_mass_capacity(volume: float, density: float = SEAWATER_DENSITY) -> float:
    """Total mass supportable at full submersion (kg): density * volume."""
    if volume < 0.0:
        raise ValueError("volume must be >= 0")
    if density <= 0.0:
        raise ValueError("density must be > 0")
    return density * volume


def payload_capacity(body: FloatBody) -> float:
    """Payload the body can carry beyond its own mass, floored at zero."""
    return max(0.0, buoyant_mass_capacity(body.displaced_volume, body.water_density) - body.dry_mass)


def float_check(body: FloatBody, payload: float) -> tuple[bool, float]:
    """Whether the body floats with the given payload, and the margin in kg.

    The margin is negative when the loaded body sinks; a zero margin
    still floats (inclusive boundary).
    """
    if payload < 0.0:
        raise ValueError("payload must be >= 0")
    margin = payload_capacity(body) - payload
    return margin >= 0.0, margin
