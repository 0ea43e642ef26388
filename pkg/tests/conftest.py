from __future__ import annotations

from pathlib import Path

import pytest

from skydock.scenario import Scenario, load_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_DIR = REPO_ROOT / "scenarios"


@pytest.fixture(scope="session")
def landing_scenario() -> Scenario:
    return load_scenario(SCENARIO_DIR / "landing_paper.json")


@pytest.fixture(scope="session")
def path_scenario() -> Scenario:
    return load_scenario(SCENARIO_DIR / "path_fig4b.json")


@pytest.fixture(scope="session")
def noiseless_landing(landing_scenario: Scenario) -> Scenario:
    """The bundled landing scenario with all noise and wind removed."""
    return landing_scenario.model_copy(
        update={
            "wind": landing_scenario.wind.model_copy(
                update={"mean": (0.0, 0.0), "gust_sigma": 0.0}
            ),
            "sensors": landing_scenario.sensors.model_copy(
                update={
                    "gps_sigma": 0.0,
                    "gps_vel_sigma": 0.0,
                    "compass_sigma": 0.0,
                    "beacon_sigma": 0.0,
                    "beacon_dropout_p": 0.0,
                }
            ),
        }
    )
