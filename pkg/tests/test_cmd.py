import csv
import io
import json

import pytest

from triadic_process import triadic_cmd
from triadic_process.output import MARGIN_COLUMNS, SWEEP_COLUMNS, OutputRecord

SPEC = """\
seed = 7
trials = 2
r = 3
stats = none
point = n=20 p=0.02
point = n=30 p=0.02
"""


def write_spec(tmp_path, text=SPEC, name="grid.spec"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def invoke(runner, *args, env=None):
    return runner.invoke(triadic_cmd, list(args), env=env)


def test_run_p_zero(runner):
    result = invoke(runner, "run", "--n", "100", "--r", "3", "--p", "0")
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["kind"] == "run"
    assert record["result"]["final_edges_nonhub"] == 0
    assert "per_round" not in record["result"]


def test_run_p_one(runner):
    result = invoke(runner, "run", "--n", "6", "--r", "3", "--p", "1")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["result"]["final_edges_nonhub"] == 10


def test_run_accepts_expressions(runner):
    result = invoke(runner, "run", "--n", "100", "--p", "0.3*n^-0.5", "--seed", "4")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["config"]["p"] == pytest.approx(0.03)


def test_run_is_deterministic(runner):
    args = ["run", "--n", "80", "--r", "4", "--p", "0.05", "--seed", "12"]
    args.append("--per-round")
    first = invoke(runner, *args)
    second = invoke(runner, *args)
    assert first.exit_code == second.exit_code == 0
    assert (
        OutputRecord.from_json(first.stdout).payload_json()
        == OutputRecord.from_json(second.stdout).payload_json()
    )


def test_run_cap_hit_exits_with_two(runner):
    result = invoke(
        runner, "run", "--n", "30", "--p", "0.3", "--seed", "4", "--max-rounds", "1"
    )
    assert result.exit_code == 2
    assert json.loads(result.stdout)["result"]["terminated"] is False


@pytest.mark.parametrize(
    "args",
    [
        ["run", "--n", "2", "--p", "0.5"],
        ["run", "--n", "10", "--p", "1.5"],
        ["run", "--n", "10", "--p", "q*n"],
        ["run", "--n", "ten", "--p", "0.5"],
        ["run", "--p", "0.5"],
        ["run", "--n", "10", "--p", "0.5", "--stats", "lots"],
        ["run", "--n", "10", "--r", "4", "--p", "0.5", "--engine", "codegree"],
        ["frobnicate"],
    ],
)
def test_invalid_input_exits_with_one(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == 1
    assert result.stdout == ""


def test_run_csv_per_round(runner):
    result = invoke(
        runner, "run", "--n", "40", "--p", "0.02", "--per-round", "--out", "csv"
    )
    assert result.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert rows and rows[0]["round"] == "1"


def test_sweep_writes_one_row_per_point(runner, tmp_path):
    spec = write_spec(tmp_path)
    result = invoke(runner, "sweep", spec, "--kind", "final-size", "--out", "csv")
    assert result.exit_code == 0
    reader = csv.reader(io.StringIO(result.stdout))
    header, *rows = list(reader)
    assert tuple(header) == SWEEP_COLUMNS
    assert len(rows) == 2


def test_sweep_writes_output_files(runner, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    json_path = tmp_path / "sweep.json"
    text = SPEC + f"csv = {csv_path}\njson = {json_path}\n"
    spec = write_spec(tmp_path, text)
    result = invoke(runner, "sweep", spec, "--kind", "connectivity")
    assert result.exit_code == 0
    with open(csv_path) as csv_file:
        assert len(list(csv.DictReader(csv_file))) == 2
    record = OutputRecord.from_json(json_path.read_text())
    assert record.kind == "sweep-connectivity"
    assert record.payload_json() == OutputRecord.from_json(result.stdout).payload_json()


def test_sweep_jobs_from_environment(runner, tmp_path):
    spec = write_spec(tmp_path)
    serial = invoke(runner, "sweep", spec, "--kind", "final-size", "--out", "csv")
    parallel = invoke(
        runner,
        "sweep",
        spec,
        "--kind",
        "final-size",
        "--out",
        "csv",
        env={"TRIADIC_JOBS": "2"},
    )
    assert parallel.exit_code == 0
    assert parallel.stdout == serial.stdout


def test_concentration_sweep(runner, tmp_path):
    text = "seed = 3\ntrials = 2\npoint = n=100 p=n^-0.7\n"
    spec = write_spec(tmp_path, text)
    result = invoke(runner, "sweep", spec, "--kind", "concentration", "--out", "csv")
    assert result.exit_code == 0
    header, *rows = list(csv.reader(io.StringIO(result.stdout)))
    assert tuple(header) == MARGIN_COLUMNS
    assert rows


def test_concentration_sweep_cap_hit_exits_with_two(runner, tmp_path):
    text = "seed = 3\ntrials = 2\nmax_rounds = 1\npoint = n=60 p=0.3\n"
    spec = write_spec(tmp_path, text)
    result = invoke(runner, "sweep", spec, "--kind", "concentration")
    assert result.exit_code == 2
    assert json.loads(result.stdout)["result"]["cap_hits"] == 2


def test_threshold_sweep_rejects_other_r(runner, tmp_path):
    text = "seed = 1\npoint = n=100 r=4 c=0.5\n"
    result = invoke(runner, "sweep", write_spec(tmp_path, text), "--kind", "threshold")
    assert result.exit_code == 1
    assert "r = 3" in result.stderr


def test_sweep_empty_grid(runner, tmp_path):
    spec = write_spec(tmp_path, "seed = 1\n")
    result = invoke(runner, "sweep", spec, "--kind", "final-size")
    assert result.exit_code == 1
    assert "grid is empty" in result.stderr


def test_sweep_malformed_spec_is_anchored(runner, tmp_path):
    spec = write_spec(tmp_path, "seed = 1\ntrials = 2\npoint = n=10 p=)\n")
    result = invoke(runner, "sweep", spec, "--kind", "final-size")
    assert result.exit_code == 1
    assert f"{spec}:3:" in result.stderr


def test_sweep_unknown_kind(runner, tmp_path):
    result = invoke(runner, "sweep", write_spec(tmp_path), "--kind", "everything")
    assert result.exit_code == 1


def test_compare(runner):
    result = invoke(
        runner, "compare", "--n", "4", "--p", "0.5", "--trials", "2000", "--seed", "3"
    )
    assert result.exit_code == 0
    payload = json.loads(result.stdout)["result"]
    assert payload["exact_expectation"] == pytest.approx(1.6875)
    assert abs(payload["z_score"]) <= 4
    assert set(payload["distribution"]) == {"0", "1", "2", "3"}


@pytest.mark.parametrize("p, expected", [("0", 0.0), ("1", 3.0)])
def test_compare_trivial(runner, p, expected):
    result = invoke(runner, "compare", "--n", "4", "--p", p, "--trials", "50")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)["result"]
    assert payload["exact_expectation"] == payload["empirical_mean"] == expected
    assert payload["z_score"] == 0


def test_compare_over_budget(runner):
    result = invoke(runner, "compare", "--n", "9", "--p", "0.5", "--trials", "10")
    assert result.exit_code == 1
    assert result.stdout == ""
