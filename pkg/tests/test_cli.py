"""CLI surface: subcommands, exit codes, NDJSON schema, determinism."""

import json
import subprocess
import sys



def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "coweights", *args],
        capture_output=True,
        text=True,
    )


def ndjson(text):
    return [json.loads(line) for line in text.splitlines() if line]


class TestCheck:
    def test_true_verdict_exits_zero(self):
        proc = run_cli("check", "--family", "B", "--mu", "2,0,0", "--x", "1,1,0")
        assert proc.returncode == 0
        assert "verdict: ok" in proc.stdout

    def test_class_mismatch_exits_one(self):
        proc = run_cli("check", "--family", "A", "--mu", "1,0", "--x", "2,0")
        assert proc.returncode == 1
        assert "MISMATCH" in proc.stdout

    def test_malformed_vector_exits_two(self):
        proc = run_cli("check", "--family", "A", "--mu", "1,a", "--x", "1,0")
        assert proc.returncode == 2
        assert "error" in proc.stderr

    def test_non_dominant_mu_exits_two(self):
        proc = run_cli("check", "--family", "A", "--mu", "0,1", "--x", "1,0")
        assert proc.returncode == 2

    def test_rational_x_skips_class(self):
        proc = run_cli(
            "check", "--family", "B", "--mu", "2,0,0", "--x", "3/2,1/2,0",
            "--format", "json",
        )
        assert proc.returncode == 0
        record = json.loads(proc.stdout)
        assert record["class_match"] is None
        assert record["leq"] is True
        assert record["in_hull"] is True

    def test_inequality_members_listed(self):
        proc = run_cli(
            "check", "--family", "D", "--mu", "2,0", "--x", "1,1",
            "--format", "json",
        )
        record = json.loads(proc.stdout)
        labels = [m["label"] for m in record["inequalities"]]
        assert labels == ["S_1-x_2", "S_2"]
        assert record["ok"] is True


class TestEta:
    def test_walkthrough_json(self):
        proc = run_cli(
            "eta", "--family", "B", "--shape", "2,1,1;2",
            "--nu", "2,1,2,0,1,0", "--format", "json",
        )
        assert proc.returncode == 0
        record = json.loads(proc.stdout)
        assert record["merged"] == [2, 2, 1, 0, 1, 0]
        assert record["coarse_shape"] == "3,1;2"
        assert record["result"] == [2, 2, 1, 1, 0, 0]
        assert record["ok"] is True

    def test_single_batch_identity(self):
        proc = run_cli(
            "eta", "--family", "A", "--shape", "4", "--nu", "1,1,0,0",
            "--format", "json",
        )
        record = json.loads(proc.stdout)
        assert record["result"] == [1, 1, 0, 0]
        assert proc.returncode == 0

    def test_rejected_orthogonal_rank_one(self):
        proc = run_cli("eta", "--family", "D", "--shape", "2;1", "--nu", "1,1,1")
        assert proc.returncode == 2
        assert "trailing block of size 1" in proc.stderr

    def test_precondition_failure_exits_one(self):
        proc = run_cli("eta", "--family", "A", "--shape", "1,1", "--nu", "0,1")
        assert proc.returncode == 1
        assert "precondition failed" in proc.stdout

    def test_half_sector_records_flips(self):
        proc = run_cli(
            "eta", "--family", "D", "--sector", "half", "--shape", "2;2",
            "--nu", "1,-1,1,-1", "--format", "json",
        )
        record = json.loads(proc.stdout)
        assert record["sign_fixed"] == [1, 1, 1, -1]
        assert record["flip_count"] == 1
        assert record["result"] == [1, 1, 1, 1]


class TestSmallCommands:
    def test_pmu_points(self):
        proc = run_cli("pmu", "--family", "B", "--mu", "1,0", "--format", "json")
        record = json.loads(proc.stdout)
        assert record["count"] == 4
        assert record["points"] == [[-1, 0], [0, -1], [0, 1], [1, 0]]

    def test_pmu_cap_exits_three(self):
        proc = run_cli("pmu", "--family", "A", "--mu", "0,0,0,0,0,0,0")
        assert proc.returncode == 3

    def test_class_command(self):
        proc = run_cli(
            "class", "--family", "A", "--shape", "2,2", "--x", "2,1,1,0",
            "--format", "json",
        )
        record = json.loads(proc.stdout)
        assert record["sums"] == [3, 1]
        assert record["lift"] == [2, 1, 1, 0]

    def test_project_command(self):
        proc = run_cli(
            "project", "--family", "B", "--shape", "2,1,1;2",
            "--x", "2,1,2,0,1,0", "--format", "json",
        )
        record = json.loads(proc.stdout)
        assert record["averages"] == ["3/2", "2", "0"]

    def test_lift_command(self):
        proc = run_cli(
            "lift", "--family", "B", "--rank", "3", "--shape", "2;1",
            "--sums", "3", "--so-class", "1", "--format", "json",
        )
        record = json.loads(proc.stdout)
        assert record["lift"] == [2, 1, 1]


class TestVerify:
    def test_single_instance(self):
        proc = run_cli(
            "verify", "--family", "A", "--rank", "3", "--shape", "2,1",
            "--mu", "1,1,0",
        )
        assert proc.returncode == 0
        records = ndjson(proc.stdout)
        assert len(records) == 2
        body, summary = records
        assert body["schema"] == 1
        assert body["equal"] is True
        assert body["lhs"] == body["rhs"]
        assert summary["summary"] is True
        assert summary["instances"] == 1

    def test_grid_deterministic_bytes(self):
        args = (
            "verify", "--family", "D", "--sector", "half", "--rank", "2",
            "--all-shapes", "--max-entry", "3",
        )
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == 0
        assert first.stdout == second.stdout

    def test_jobs_preserve_output(self):
        args = (
            "verify", "--family", "B", "--rank", "2", "--all-shapes",
            "--max-entry", "1",
        )
        serial = run_cli(*args)
        parallel = run_cli(*args, "--jobs", "2")
        assert serial.stdout == parallel.stdout
        assert parallel.returncode == 0

    def test_timing_flag_adds_millis(self):
        args = (
            "verify", "--family", "A", "--rank", "2", "--shape", "2",
            "--mu", "1,0",
        )
        plain = ndjson(run_cli(*args).stdout)[0]
        timed = ndjson(run_cli(*args, "--timing").stdout)[0]
        assert "millis" not in plain
        assert "millis" in timed

    def test_missing_arguments_exit_two(self):
        proc = run_cli("verify", "--family", "A")
        assert proc.returncode == 2

    def test_zero_weight_grid_trivial_classes(self):
        proc = run_cli(
            "verify", "--family", "A", "--rank", "2", "--max-entry", "0",
            "--all-shapes",
        )
        assert proc.returncode == 0
        records = ndjson(proc.stdout)
        assert all(r["equal"] for r in records[:-1])
        assert all(len(r["lhs"]) == 1 for r in records[:-1])


class TestSweepCommand:
    def test_small_sweep(self):
        proc = run_cli(
            "sweep", "--family", "A", "--ranks", "1,2", "--max-entry", "1",
        )
        assert proc.returncode == 0
        records = ndjson(proc.stdout)
        assert records[-1]["summary"] is True
        assert records[-1]["failed"] == 0
        assert all(r.get("equal", True) for r in records[:-1])

    def test_multi_family_sweep_skips_properties(self):
        proc = run_cli(
            "sweep", "--families", "A,B", "--family", "A", "--ranks", "1",
            "--max-entry", "1", "--skip-properties",
        )
        assert proc.returncode == 0
        records = ndjson(proc.stdout)
        families = {r["family"] for r in records[:-1]}
        assert families == {"A", "B"}


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "report.ndjson"
    proc = run_cli(
        "verify", "--family", "A", "--rank", "2", "--shape", "1,1",
        "--mu", "1,0", "--out", str(target),
    )
    assert proc.returncode == 0
    records = [json.loads(line) for line in target.read_text().splitlines()]
    assert records[0]["equal"] is True
