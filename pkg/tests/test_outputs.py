"""Output files: layout, round-trips, and byte stability."""

from __future__ import annotations

import csv
import json
import statistics

import pytest

from skydock.output import CSV_COLUMNS, fmt, write_outputs
from skydock.simulation import run_monte_carlo


@pytest.fixture(scope="module")
def small_batch(landing_scenario):
    return run_monte_carlo(landing_scenario, 3)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestLayout:
    def test_file_inventory(self, small_batch, tmp_path):
        summary, logs = small_batch
        written = write_outputs(logs, summary, tmp_path)
        names = sorted(p.name for p in written)
        assert names == sorted(
            [f"trial_{i:03d}.csv" for i in range(3)]
            + [f"trial_{i:03d}_outcome.json" for i in range(3)]
            + ["summary.json", "scatter.csv"]
        )
        for path in written:
            assert path.exists()

    def test_csv_header_and_row_count(self, small_batch, tmp_path):
        summary, logs = small_batch
        write_outputs(logs, summary, tmp_path)
        for log in logs:
            rows = read_rows(tmp_path / f"trial_{log.trial_index:03d}.csv")
            assert len(rows) == len(log.records)
            assert tuple(rows[0].keys()) == CSV_COLUMNS

    def test_csv_round_trip_values(self, small_batch, tmp_path):
        summary, logs = small_batch
        write_outputs(logs, summary, tmp_path)
        rows = read_rows(tmp_path / "trial_000.csv")
        record = logs[0].records[42]
        row = rows[42]
        assert float(row["t"]) == pytest.approx(record.t)
        assert float(row["uav_pz"]) == pytest.approx(record.uav_pz, abs=1e-8)
        assert row["phase"] == record.phase
        assert float(row["T_l"]) == pytest.approx(record.thrust_left, abs=1e-7)

    def test_unwritable_directory_reports_path(self, small_batch, tmp_path):
        from skydock.output import OutputError

        summary, logs = small_batch
        blocker = tmp_path / "blocked"
        blocker.write_text("a file, not a directory")
        with pytest.raises(OutputError, match="blocked"):
            write_outputs(logs, summary, blocker)


class TestSummaryAndScatter:
    def test_summary_means_match_scatter_recomputation(self, small_batch, tmp_path):
        summary, logs = small_batch
        write_outputs(logs, summary, tmp_path)
        scatter = read_rows(tmp_path / "scatter.csv")
        loaded = json.loads((tmp_path / "summary.json").read_text())
        dx = [float(r["delta_x"]) for r in scatter]
        dy = [float(r["delta_y"]) for r in scatter]
        assert len(scatter) == loaded["n_touchdown"]
        assert loaded["mean_delta_x"] == pytest.approx(statistics.fmean(dx), abs=1e-8)
        assert loaded["mean_delta_y"] == pytest.approx(statistics.fmean(dy), abs=1e-8)
        assert loaded["std_delta_x"] == pytest.approx(statistics.pstdev(dx), abs=1e-8)

    def test_summary_counts(self, small_batch, tmp_path):
        summary, logs = small_batch
        write_outputs(logs, summary, tmp_path)
        loaded = json.loads((tmp_path / "summary.json").read_text())
        assert loaded["n_trials"] == 3
        assert len(loaded["trials"]) == 3
        assert loaded["trials"][1]["trial_index"] == 1

    def test_outcome_json_fields(self, small_batch, tmp_path):
        summary, logs = small_batch
        write_outputs(logs, summary, tmp_path)
        outcome = json.loads((tmp_path / "trial_000_outcome.json").read_text())
        assert outcome["status"] == "touchdown"
        assert outcome["on_platform"] is True
        assert isinstance(outcome["phase_timeline"], list)
        assert outcome["phase_timeline"][0][1] == "CRUISE_GPS"


class TestByteStability:
    def test_identical_batches_write_identical_bytes(self, landing_scenario, tmp_path):
        for name in ("a", "b"):
            summary, logs = run_monte_carlo(landing_scenario, 2)
            write_outputs(logs, summary, tmp_path / name)
        for rel in ("trial_000.csv", "trial_001_outcome.json", "summary.json", "scatter.csv"):
            assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()

    def test_float_format_is_nine_significant_digits(self):
        assert fmt(1.0 / 3.0) == "0.333333333"
        assert fmt(0.1) == "0.1"
        assert fmt(123456789012.0) == "1.23456789e+11"
