"""Command-line client for the simulation service.

The CLI never runs simulations itself: it posts requests to the HTTP
API and writes the returned results to disk.  By default it mounts the
service in-process (no server needed); pass ``--server URL`` to target
a running instance instead.

Subcommands: run (one landing trial), montecarlo (seeded batch), path
(vessel-only path following), hydro (buoyancy calculator), serve.
Exit codes: 0 success, 1 I/O or transport failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

import httpx

from . import __version__
from .output import OutputError, fmt, write_outputs
from .service.app import create_app
from .service.models import MonteCarloResult, TrialResult
from .simulation import summarize

log = logging.getLogger("sim")


class ClientError(RuntimeError):
    """Request rejected or transport failed; carries the suggested exit code."""

    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


class ServiceClient:
    """Minimal JSON-over-HTTP client with an in-process default transport."""

    def __init__(self, server: str | None = None, timeout: float = 600.0):
        self.server = server
        self.timeout = timeout

    def post(self, path: str, payload: dict) -> dict:
        if self.server is not None:
            try:
                with httpx.Client(base_url=self.server, timeout=self.timeout) as client:
                    response = client.post(path, json=payload)
            except httpx.HTTPError as exc:
                raise ClientError(f"request to {self.server}{path} failed: {exc}") from exc
        else:
            response = asyncio.run(self._post_local(path, payload))
        if response.status_code >= 400:
            raise ClientError(_error_detail(response), exit_code=2)
        return response.json()

    async def _post_local(self, path: str, payload: dict) -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://sim.local", timeout=self.timeout
        ) as client:
            return await client.post(path, json=payload)


def _error_detail(response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    return f"service returned {response.status_code}: {detail}"


def _read_scenario_json(path: str, seed: int | None) -> dict:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ClientError(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ClientError(f"{path} is not valid JSON: {exc}", exit_code=2) from exc
    if not isinstance(obj, dict):
        raise ClientError(f"{path} must contain a JSON object", exit_code=2)
    if seed is not None:
        obj["seed"] = seed
    return obj


def _outcome_line(trial: TrialResult) -> str:
    o = trial.outcome
    if o.status == "touchdown":
        return (
            f"trial {trial.trial_index}: touchdown at t={fmt(o.touchdown_time)} s, "
            f"delta=({fmt(o.delta_x)}, {fmt(o.delta_y)}) m, "
            f"on_platform={o.on_platform}, within_bound={o.meets_accuracy_bound}"
        )
    return f"trial {trial.trial_index}: {o.status}"


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _read_scenario_json(args.scenario, args.seed)
    client = ServiceClient(args.server)
    data = client.post("/simulate/trial", {"scenario": scenario, "trial_index": args.trial})
    trial = TrialResult.model_validate(data)
    log_core = trial.to_core()
    write_outputs([log_core], summarize([log_core.outcome]), args.out)
    print(_outcome_line(trial))
    return 0


def cmd_montecarlo(args: argparse.Namespace) -> int:
    scenario = _read_scenario_json(args.scenario, args.seed)
    client = ServiceClient(args.server)
    data = client.post(
        "/simulate/montecarlo",
        {"scenario": scenario, "trials": args.trials, "jobs": args.jobs},
    )
    result = MonteCarloResult.model_validate(data)
    logs = [t.to_core() for t in result.trials]
    write_outputs(logs, result.summary.to_core(), args.out)
    s = result.summary
    for trial in result.trials:
        log.info(_outcome_line(trial))
    print(
        f"{s.n_trials} trials: {s.n_touchdown} touchdowns, "
        f"{s.n_meets_accuracy_bound} within the accuracy bound, "
        f"{s.n_on_platform} on the platform"
    )
    if s.n_touchdown:
        print(
            f"mean delta = ({fmt(s.mean_delta_x)}, {fmt(s.mean_delta_y)}) m, "
            f"std = ({fmt(s.std_delta_x)}, {fmt(s.std_delta_y)}) m"
        )
    return 0


def cmd_path(args: argparse.Namespace) -> int:
    scenario = _read_scenario_json(args.scenario, None)
    client = ServiceClient(args.server)
    data = client.post("/simulate/path", {"scenario": scenario})
    trial = TrialResult.model_validate(data)
    log_core = trial.to_core()
    write_outputs([log_core], summarize([log_core.outcome]), args.out)
    cross = trial.trajectory.cross_track
    print(
        f"path run: {trial.outcome.status}, {len(cross)} steps, "
        f"final |cross_track| = {fmt(abs(cross[-1]))} m, "
        f"max |cross_track| = {fmt(max(abs(c) for c in cross))} m"
    )
    return 0


def cmd_hydro(args: argparse.Namespace) -> int:
    payload: dict = {"volume": args.volume, "density": args.density, "dry_mass": args.dry_mass}
    if args.payload is not None:
        payload["payload"] = args.payload
    client = ServiceClient(args.server)
    data = client.post("/hydro", payload)
    print(f"buoyant capacity: {data['buoyant_capacity_kg']:.3f} kg")
    print(f"payload capacity: {data['payload_capacity_kg']:.3f} kg")
    if data.get("floats") is not None:
        verdict = "floats" if data["floats"] else "sinks"
        print(f"with payload {args.payload:.3f} kg: {verdict} (margin {data['margin_kg']:.3f} kg)")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Quadrotor-on-vessel landing simulator (thin client of the HTTP service).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--server",
        default=None,
        metavar="URL",
        help="base URL of a running service; default runs the service in-process",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="errors only")
    verbosity.add_argument("--verbose", action="store_true", help="debug logging")

    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one landing trial and write its outputs")
    run.add_argument("--scenario", required=True, help="scenario JSON file")
    run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run.add_argument("--trial", type=int, default=0, help="trial index (default 0)")
    run.add_argument("--out", required=True, help="output directory")
    run.set_defaults(func=cmd_run)

    mc = sub.add_parser("montecarlo", help="run a seeded batch of trials")
    mc.add_argument("--scenario", required=True)
    mc.add_argument("--trials", type=int, default=20)
    mc.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
    mc.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    mc.add_argument("--out", required=True)
    mc.set_defaults(func=cmd_montecarlo)

    path = sub.add_parser("path", help="vessel-only path-following run")
    path.add_argument("--scenario", required=True)
    path.add_argument("--out", required=True)
    path.set_defaults(func=cmd_path)

    hydro = sub.add_parser("hydro", help="buoyancy / payload calculator")
    hydro.add_argument("--volume", type=float, required=True, help="displaced volume, m^3")
    hydro.add_argument("--density", type=float, default=1025.0, help="water density, kg/m^3")
    hydro.add_argument("--dry-mass", type=float, default=0.0, dest="dry_mass", help="kg")
    hydro.add_argument("--payload", type=float, default=None, help="payload to check, kg")
    hydro.set_defaults(func=cmd_hydro)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.ERROR if args.quiet else (logging.DEBUG if args.verbose else logging.INFO)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
