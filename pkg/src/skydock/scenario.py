"""Scenario model, world clock, and seeded random-stream derivation.

A scenario is the full description of one experiment: step sizes,
vehicles, wind, sensors, gains, waypoints, landing setup, and the master
seed.  Scenario files are JSON with the same key names as the models
here; unknown keys are rejected to catch typos.  All quantities are SI.

Time is derived from an integer step count (t = step_index * sim_dt),
never accumulated as a floating sum, so it cannot drift.  Every noise
source draws from its own generator derived from (seed, source name,
trial index); results are therefore invariant to sampling order within
a step and trials can run in parallel without sharing state.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .control import GainSet
from .dynamics import UavParams, UsvParams, WindParams
from .guidance import GuidanceParams
from .landing import LandingParams
from .sensors import SensorParams


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


class Scenario(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    sim_dt: float = Field(0.02, gt=0.0, description="physics step, s")
    control_dt: float = Field(0.1, gt=0.0, description="controller step, s")
    duration_max: float = Field(120.0, gt=0.0, description="simulated time limit, s")
    seed: int = Field(0, ge=0, lt=2**64)
    usv: UsvParams = Field(default_factory=UsvParams)
    uav: UavParams = Field(default_factory=UavParams)
    wind: WindParams = Field(default_factory=WindParams)
    sensors: SensorParams = Field(default_factory=SensorParams)
    gains: GainSet = Field(default_factory=GainSet)
    guidance: GuidanceParams = Field(default_factory=GuidanceParams)
    waypoints: tuple[tuple[float, float], ...] = ()
    landing: LandingParams = Field(default_factory=LandingParams)

    @model_validator(mode="after")
    def _check_consistency(self) -> "Scenario":
        ratio = self.control_dt / self.sim_dt
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise ValueError(
                f"control_dt ({self.control_dt}) must be an integer multiple "
                f"of sim_dt ({self.sim_dt})"
            )
        if not self.landing.enabled and len(self.waypoints) < 2:
            raise ValueError(
                "waypoints: a scenario without landing needs at least 2 waypoints to follow"
            )
        return self

    @property
    def control_every(self) -> int:
        """Physics steps per controller tick."""
        return round(self.control_dt / self.sim_dt)


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario JSON file.

    Raises ScenarioError with the offending field named for malformed or
    invalid files.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario(raw, source=str(path))


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """Validate scenario JSON text; see load_scenario."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source} is not valid JSON: {exc}") from exc
    try:
        return Scenario.model_validate(obj)
    except ValidationError as exc:
        raise ScenarioError(f"{source} failed validation: {exc}") from exc


class PastEndError(RuntimeError):
    """The clock was advanced at or past the scenario duration limit."""


@dataclass(frozen=True, slots=True)
class WorldClock:
    """Simulation time derived exactly from an integer step count."""

    step_index: int = 0
    sim_dt: float = 0.02

    @property
    def t(self) -> float:
        return self.step_index * self.sim_dt


def advance_clock(clock: WorldClock, scenario: Scenario) -> WorldClock:
    """Advance one physics step; refuses to step at or past duration_max."""
    if clock.t >= scenario.duration_max:
        raise PastEndError(
            f"cannot advance past t={clock.t} (duration_max={scenario.duration_max})"
        )
    return WorldClock(step_index=clock.step_index + 1, sim_dt=clock.sim_dt)


NOISE_SOURCES = ("gps", "compass", "beacon", "wind_gust")


def _source_tag(source: str) -> int:
    """Stable 64-bit tag for a noise-source name (process-hash independent)."""
    return int.from_bytes(
        hashlib.blake2s(source.encode("utf-8"), digest_size=8).digest(), "big"
    )


def derive_stream(seed: int, source: str, trial: int) -> np.random.Generator:
    """Deterministic, collision-resistant generator for (seed, source, trial).

    The triple is fed as entropy to a seed sequence, so sub-streams are
    statistically independent by construction and two runs with equal
    triples produce identical draws.
    """
    ss = np.random.SeedSequence(entropy=(int(seed), _source_tag(source), int(trial)))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, slots=True)
class TrialStreams:
    """The named per-trial noise streams shared across the simulator."""

    gps: np.random.Generator
    compass: np.random.Generator
    beacon: np.random.Generator
    wind_gust: np.random.Generator

    @classmethod
    def for_trial(cls, seed: int, trial: int) -> "TrialStreams":
        return cls(*(derive_stream(seed, name, trial) for name in NOISE_SOURCES))
