"""CLI behavior through the in-process service transport."""

from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

from skydock.cli import main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
LANDING = str(SCENARIO_DIR / "landing_paper.json")
PATH = str(SCENARIO_DIR / "path_fig4b.json")


class TestRun:
    def test_writes_outputs_and_reports(self, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["--quiet", "run", "--scenario", LANDING, "--out", str(out)]) == 0
        assert (out / "trial_000.csv").exists()
        assert (out / "trial_000_outcome.json").exists()
        assert (out / "summary.json").exists()
        assert "touchdown" in capsys.readouterr().out

    def test_seed_override_changes_result(self, tmp_path):
        outs = {}
        for seed in (7, 8):
            out = tmp_path / f"seed{seed}"
            main(["--quiet", "run", "--scenario", LANDING, "--seed", str(seed), "--out", str(out)])
            outs[seed] = (out / "trial_000_outcome.json").read_bytes()
        assert outs[7] != outs[8]

    def test_missing_scenario_file_fails(self, tmp_path):
        code = main(
            ["--quiet", "run", "--scenario", str(tmp_path / "nope.json"), "--out", str(tmp_path)]
        )
        assert code == 1

    def test_invalid_scenario_fails_with_validation_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"sim_dt": 0.03, "control_dt": 0.1}))
        code = main(["--quiet", "run", "--scenario", str(bad), "--out", str(tmp_path / "o")])
        assert code == 2


class TestMonteCarlo:
    def test_batch_outputs(self, tmp_path, capsys):
        out = tmp_path / "mc"
        code = main(
            ["--quiet", "montecarlo", "--scenario", LANDING, "--trials", "3", "--out", str(out)]
        )
        assert code == 0
        assert len(list(out.glob("trial_*.csv"))) == 3
        summary = json.loads((out / "summary.json").read_text())
        assert summary["n_trials"] == 3
        assert "3 trials" in capsys.readouterr().out

    def test_parallel_batch_is_identical(self, tmp_path):
        for name, jobs in (("serial", "1"), ("parallel", "3")):
            main(
                [
                    "--quiet", "montecarlo", "--scenario", LANDING,
                    "--trials", "3", "--jobs", jobs, "--out", str(tmp_path / name),
                ]
            )
        for rel in ("summary.json", "scatter.csv", "trial_002.csv"):
            assert (tmp_path / "serial" / rel).read_bytes() == (
                tmp_path / "parallel" / rel
            ).read_bytes()


class TestPath:
    def test_path_outputs_cross_track_series(self, tmp_path, capsys):
        out = tmp_path / "path"
        assert main(["--quiet", "path", "--scenario", PATH, "--out", str(out)]) == 0
        header = (out / "trial_000.csv").read_text().splitlines()[0]
        assert "cross_track" in header
        assert "mission_complete" in capsys.readouterr().out


class TestHydro:
    def test_prints_capacities(self, capsys):
        code = main(
            ["--quiet", "hydro", "--volume", "0.004006", "--density", "1025", "--payload", "4.0"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "4.106" in out
        assert "floats" in out
        assert "0.106" in out

    def test_sinks_verdict(self, capsys):
        main(["--quiet", "hydro", "--volume", "0.001", "--density", "1000", "--payload", "5"])
        assert "sinks" in capsys.readouterr().out


class TestInstalledEntryPoint:
    def test_console_script_runs(self):
        exe = shutil.which("sim")
        assert exe is not None, "console script 'sim' is not on PATH"
        proc = subprocess.run(
            [exe, "--quiet", "hydro", "--volume", "0.004006"],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode == 0
        assert "4.106" in proc.stdout
