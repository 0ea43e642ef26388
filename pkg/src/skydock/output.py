"""File emission for trial logs and batch summaries.

Per trial: a trajectory CSV and an outcome JSON.  Per batch: a summary
JSON and a scatter CSV of touchdown deltas for accuracy plots.  All
floats are rounded to 9 significant digits before writing, and files
use fixed "\n" newlines, so identical runs produce byte-identical
outputs.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .landing import TrialOutcome
from .simulation import BatchSummary, StepRecord, TrialLog

CSV_COLUMNS = (
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
    "T_l",
    "T_r",
    "cross_track",
)


class OutputError(RuntimeError):
    """An output file could not be written."""


def fmt(x: float) -> str:
    """9-significant-digit float formatting used in every output file."""
    return f"{x:.9g}"


def _json_ready(obj):
    """Round floats to the output precision; map non-finite to null."""
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def _write_text(path: Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def _write_json(path: Path, obj) -> None:
    _write_text(path, json.dumps(_json_ready(obj), indent=2, sort_keys=True) + "\n")


def _csv_row(r: StepRecord) -> str:
    return ",".join(
        (
            fmt(r.t),
            fmt(r.usv_x),
            fmt(r.usv_y),
            fmt(r.usv_yaw),
            fmt(r.usv_u),
            fmt(r.usv_r),
            fmt(r.uav_px),
            fmt(r.uav_py),
            fmt(r.uav_pz),
            r.phase,
            fmt(r.thrust_left),
            fmt(r.thrust_right),
            fmt(r.cross_track),
        )
    )


def outcome_dict(outcome: TrialOutcome) -> dict:
    return {
        "status": outcome.status,
        "delta_x": outcome.delta_x,
        "delta_y": outcome.delta_y,
        "touchdown_time": outcome.touchdown_time,
        "on_platform": outcome.on_platform,
        "meets_accuracy_bound": outcome.meets_accuracy_bound,
        "phase_timeline": outcome.phase_timeline or [],
    }


def summary_dict(summary: BatchSummary) -> dict:
    return {
        "n_trials": summary.n_trials,
        "n_touchdown": summary.n_touchdown,
        "n_on_platform": summary.n_on_platform,
        "n_meets_accuracy_bound": summary.n_meets_accuracy_bound,
        "mean_delta_x": summary.mean_delta_x,
        "mean_delta_y": summary.mean_delta_y,
        "std_delta_x": summary.std_delta_x,
        "std_delta_y": summary.std_delta_y,
        "trials": [
            {"trial_index": i, **outcome_dict(o)} for i, o in enumerate(summary.outcomes)
        ],
    }


def write_trial_csv(log: TrialLog, path: Path) -> None:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(_csv_row(r) for r in log.records)
    _write_text(path, "\n".join(lines) + "\n")


def write_outputs(logs: list[TrialLog], summary: BatchSummary, out_dir: str | Path) -> list[Path]:
    """Write every output file for a batch; returns the written paths.

    Layout: trial_###.csv and trial_###_outcome.json per trial, plus
    summary.json and scatter.csv (touchdown delta pairs).
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {out}: {exc}") from exc

    written: list[Path] = []
    for log in logs:
        csv_path = out / f"trial_{log.trial_index:03d}.csv"
        write_trial_csv(log, csv_path)
        written.append(csv_path)
        outcome_path = out / f"trial_{log.trial_index:03d}_outcome.json"
        _write_json(outcome_path, outcome_dict(log.outcome))
        written.append(outcome_path)

    summary_path = out / "summary.json"
    _write_json(summary_path, summary_dict(summary))
    written.append(summary_path)

    scatter_lines = ["delta_x,delta_y"]
    scatter_lines.extend(
        f"{fmt(o.delta_x)},{fmt(o.delta_y)}"
        for o in summary.outcomes
        if o.status == "touchdown"
    )
    scatter_path = out / "scatter.csv"
    _write_text(scatter_path, "\n".join(scatter_lines) + "\n")
    written.append(scatter_path)
    return written
