"""Cooperative quadrotor / surface-vessel landing simulator.

Deterministic fixed-step simulation of a velocity-commanded quadrotor
landing on a catamaran's platform: two-phase (GPS approach, IR-beacon
precision descent) landing sequencing, PI/PD vessel control with
differential thrust, carrot-chasing path following, sensor noise
models, and a seeded Monte Carlo harness.  An HTTP service wraps the
core; the ``sim`` CLI is a thin client of that service.
"""

__version__ = "0.1.0"

from .control import GainSet, MotorCommand, SpeedCtrlState
from .dynamics import UavParams, UavState, UsvParams, UsvState, WindParams, WindState
from .guidance import GuidanceOutput, GuidanceParams, PathSegment
from .hydrostatics import FloatBody, buoyant_mass_capacity, float_check, payload_capacity
from .landing import LandingParams, LandingPhase, TrialOutcome
from .scenario import Scenario, ScenarioError, WorldClock, derive_stream, load_scenario
from .sensors import CompassReading, GpsFix, IrBeaconMeasurement, SensorParams
from .simulation import (
    BatchSummary,
    StepRecord,
    TrialLog,
    path_following_run,
    run_monte_carlo,
    run_trial,
    validate_log,
)

__all__ = [
    "__version__",
    "BatchSummary",
    "CompassReading",
    "FloatBody",
    "GainSet",
    "GpsFix",
    "GuidanceOutput",
    "GuidanceParams",
    "IrBeaconMeasurement",
    "LandingParams",
    "LandingPhase",
    "MotorCommand",
    "PathSegment",
    "Scenario",
    "ScenarioError",
    "SensorParams",
    "SpeedCtrlState",
    "StepRecord",
    "TrialLog",
    "TrialOutcome",
    "UavParams",
    "UavState",
    "UsvParams",
    "UsvState",
    "WindParams",
    "WindState",
    "WorldClock",
    "buoyant_mass_capacity",
    "derive_stream",
    "float_check",
    "load_scenario",
    "path_following_run",
    "payload_capacity",
    "run_monte_carlo",
    "run_trial",
    "validate_log",
]
