"""FastAPI application exposing the simulator.

Endpoints accept a full scenario in the request body and return results
inline; nothing is written server-side, so the service is stateless and
safe to run behind multiple workers.
"""

from __future__ import annotations

import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..hydrostatics import FloatBody, buoyant_mass_capacity, float_check, payload_capacity
from ..scenario import Scenario, ScenarioError
from ..simulation import SimulationFault, path_following_run, run_monte_carlo, run_trial
from .models import (
    HydroRequest,
    HydroResult,
    MonteCarloRequest,
    MonteCarloResult,
    PathRequest,
    SummaryModel,
    TrialRequest,
    TrialResult,
)

log = logging.getLogger(__name__)


def create_app() -> FastAPI:
    app = FastAPI(title="skydock simulation service", version=__version__)

    @app.exception_handler(ScenarioError)
    async def scenario_error_handler(request: Request, exc: ScenarioError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(SimulationFault)
    async def fault_handler(request: Request, exc: SimulationFault) -> JSONResponse:
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/scenario/validate", response_model=Scenario)
    def validate_scenario(scenario: Scenario) -> Scenario:
        """Echo the normalized scenario (defaults filled in)."""
        return scenario

    @app.post("/simulate/trial", response_model=TrialResult)
    def simulate_trial(req: TrialRequest) -> TrialResult:
        log.info("trial %d: seed=%d", req.trial_index, req.scenario.seed)
        return TrialResult.from_core(run_trial(req.scenario, req.trial_index))

    @app.post("/simulate/montecarlo", response_model=MonteCarloResult)
    def simulate_monte_carlo(req: MonteCarloRequest) -> MonteCarloResult:
        log.info("batch: %d trials, seed=%d, jobs=%d", req.trials, req.scenario.seed, req.jobs)
        summary, logs = run_monte_carlo(req.scenario, req.trials, jobs=req.jobs)
        return MonteCarloResult(
            summary=SummaryModel.from_core(summary),
            trials=[TrialResult.from_core(l) for l in logs],
        )

    @app.post("/simulate/path", response_model=TrialResult)
    def simulate_path(req: PathRequest) -> TrialResult:
        try:
            trial = path_following_run(req.scenario)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
        return TrialResult.from_core(trial)

    @app.post("/hydro", response_model=HydroResult)
    def hydro(req: HydroRequest) -> HydroResult:
        body = FloatBody(req.volume, req.dry_mass, req.density)
        result = HydroResult(
            buoyant_capacity_kg=buoyant_mass_capacity(req.volume, req.density),
            payload_capacity_kg=payload_capacity(body),
        )
        if req.payload is not None:
            floats, margin = float_check(body, req.payload)
            result.floats = floats
            result.margin_kg = margin
        return result

    return app


app = create_app()
