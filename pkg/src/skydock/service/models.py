"""Request/response schemas for the simulation service.

Trajectories travel column-wise (one list per field) to keep large
batches cheap to validate and serialize.  The converters here are the
single source of truth for moving between wire models and the core
dataclasses; the CLI reuses them to reconstruct logs for file output.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..landing import TrialOutcome
from ..scenario import Scenario
from ..simulation import BatchSummary, StepRecord, TrialLog


class TrialRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: Scenario = Field(default_factory=Scenario)
    trial_index: int = Field(0, ge=0)


class MonteCarloRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: Scenario = Field(default_factory=Scenario)
    trials: int = Field(20, ge=1)
    jobs: int = Field(1, ge=1, le=64)


class PathRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: Scenario


class HydroRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    volume: float = Field(ge=0.0, description="displaced volume, m^3")
    density: float = Field(1025.0, gt=0.0, description="water density, kg/m^3")
    dry_mass: float = Field(0.0, ge=0.0, description="kg")
    payload: Optional[float] = Field(None, ge=0.0, description="kg")


class HydroResult(BaseModel):
    buoyant_capacity_kg: float
    payload_capacity_kg: float
    floats: Optional[bool] = None
    margin_kg: Optional[float] = None


class OutcomeModel(BaseModel):
    status: Literal["touchdown", "mission_complete", "timeout"]
    delta_x: Optional[float] = None
    delta_y: Optional[float] = None
    touchdown_time: Optional[float] = None
    on_platform: bool = False
    meets_accuracy_bound: bool = False
    phase_timeline: list[tuple[float, str]] = []

    @classmethod
    def from_core(cls, o: TrialOutcome) -> "OutcomeModel":
        return cls(
            status=o.status,
            delta_x=o.delta_x,
            delta_y=o.delta_y,
            touchdown_time=o.touchdown_time,
            on_platform=o.on_platform,
            meets_accuracy_bound=o.meets_accuracy_bound,
            phase_timeline=o.phase_timeline or [],
        )

    def to_core(self) -> TrialOutcome:
        return TrialOutcome(
            status=self.status,
            delta_x=self.delta_x,
            delta_y=self.delta_y,
            touchdown_time=self.touchdown_time,
            on_platform=self.on_platform,
            meets_accuracy_bound=self.meets_accuracy_bound,
            phase_timeline=[(t, p) for t, p in self.phase_timeline],
        )


_TRAJECTORY_FIELDS = (
    "t",
    "usv_x",
    "usv_y",
    "usv_yaw",
    "usv_u",
    "usv_r",
    "uav_px",
    "uav_py",
    "uav_pz",
    "phase",
    "thrust_left",
    "thrust_right",
    "cross_track",
    "heading_err",
    "speed_des",
    "vz_cmd",
    "beacon_detected",
)


class TrajectoryModel(BaseModel):
    """Column-wise step records; all lists share one length."""

    t: list[float]
    usv_x: list[float]
    usv_y: list[float]
    usv_yaw: list[float]
    usv_u: list[float]
    usv_r: list[float]
    uav_px: list[float]
    uav_py: list[float]
    uav_pz: list[float]
    phase: list[str]
    thrust_left: list[float]
    thrust_right: list[float]
    cross_track: list[float]
    heading_err: list[float]
    speed_des: list[float]
    vz_cmd: list[float]
    beacon_detected: list[bool]

    @classmethod
    def from_records(cls, records: list[StepRecord]) -> "TrajectoryModel":
        return cls(
            **{
                name: [getattr(r, name) for r in records]
                for name in _TRAJECTORY_FIELDS
            }
        )

    def to_records(self) -> list[StepRecord]:
        columns = [getattr(self, name) for name in _TRAJECTORY_FIELDS]
        return [StepRecord(*row) for row in zip(*columns)]


class TrialResult(BaseModel):
    trial_index: int
    outcome: OutcomeModel
    trajectory: TrajectoryModel

    @classmethod
    def from_core(cls, log: TrialLog) -> "TrialResult":
        return cls(
            trial_index=log.trial_index,
            outcome=OutcomeModel.from_core(log.outcome),
            trajectory=TrajectoryModel.from_records(log.records),
        )

    def to_core(self) -> TrialLog:
        return TrialLog(
            trial_index=self.trial_index,
            records=self.trajectory.to_records(),
            outcome=self.outcome.to_core(),
        )


class SummaryModel(BaseModel):
    n_trials: int
    outcomes: list[OutcomeModel]
    n_touchdown: int
    n_on_platform: int
    n_meets_accuracy_bound: int
    mean_delta_x: Optional[float] = None
    mean_delta_y: Optional[float] = None
    std_delta_x: Optional[float] = None
    std_delta_y: Optional[float] = None

    @classmethod
    def from_core(cls, s: BatchSummary) -> "SummaryModel":
        return cls(
            n_trials=s.n_trials,
            outcomes=[OutcomeModel.from_core(o) for o in s.outcomes],
            n_touchdown=s.n_touchdown,
            n_on_platform=s.n_on_platform,
            n_meets_accuracy_bound=s.n_meets_accuracy_bound,
            mean_delta_x=s.mean_delta_x,
            mean_delta_y=s.mean_delta_y,
            std_delta_x=s.std_delta_x,
            std_delta_y=s.std_delta_y,
        )

    def to_core(self) -> BatchSummary:
        return BatchSummary(
            n_trials=self.n_trials,
            outcomes=[o.to_core() for o in self.outcomes],
            n_touchdown=self.n_touchdown,
            n_on_platform=self.n_on_platform,
            n_meets_accuracy_bound=self.n_meets_accuracy_bound,
            mean_delta_x=self.mean_delta_x,
            mean_delta_y=self.mean_delta_y,
            std_delta_x=self.std_delta_x,
            std_delta_y=self.std_delta_y,
        )


class MonteCarloResult(BaseModel):
    summary: SummaryModel
    trials: list[TrialResult]
