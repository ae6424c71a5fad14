import json
import subprocess
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "prchannels.cli", *args],
        capture_output=True,
        text=True,
        cwd=REPO,
    )


@pytest.fixture(scope="module", autouse=True)
def ensure_fixtures(tmp_path_factory):
    if not FIXTURES.exists():
        out = run_cli("fixtures", "--out", str(FIXTURES))
        assert out.returncode == 0
    yield


def test_check_exit_codes():
    assert run_cli("check", str(FIXTURES / "identity2.json")).returncode == 0
    assert run_cli("check", str(FIXTURES / "dephasing.json")).returncode == 1
    res = run_cli("check", str(FIXTURES / "example_2_11.json"))
    assert res.returncode == 1
    assert "NECESSARY_VIOLATION" in res.stdout


def test_check_json_output():
    res = run_cli("check", str(FIXTURES / "dephasing.json"), "--output", "json")
    assert res.returncode == 1
    payload = json.loads(res.stdout)
    assert payload["verdict"]["status"] == "NOT_PR"
    assert payload["validation"]["choi_rank"] == 2
    assert payload["verdict"]["state_witness"] is not None


def test_check_method_restrictions():
    res = run_cli("check", str(FIXTURES / "example_2_11.json"), "--method", "necessary")
    assert res.returncode == 1
    res = run_cli("check", str(FIXTURES / "identity2.json"), "--method", "exact")
    assert res.returncode == 0
    res = run_cli("check", str(FIXTURES / "example_2_6.json"), "--method", "exact")
    assert res.returncode == 3  # rank 3 cannot be decided exactly
    res = run_cli("check", str(FIXTURES / "example_2_6.json"), "--method", "oracle", "--restarts", "16")
    assert res.returncode == 1


def test_malformed_json_is_input_error():
    bad = FIXTURES / ".." / "fixtures" / "does_not_exist.json"
    assert run_cli("check", str(bad)).returncode == 3

    res = run_cli("frame", str(FIXTURES / "dephasing.json"))
    assert res.returncode == 3  # channel schema is not a frame schema


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim_in": 2,\n  "oops"')
    res = run_cli("check", str(path))
    assert res.returncode == 3
    assert "line 2" in res.stderr


def test_frame_subcommand():
    res = run_cli("frame", str(FIXTURES / "f3_real.json"))
    assert res.returncode == 0
    assert "complement property: True" in res.stdout
    assert "phase retrievable: YES" in res.stdout


def test_spectrum_subcommand():
    res = run_cli("spectrum", str(FIXTURES / "example_2_11.json"), "--j", "1")
    assert res.returncode == 1
    assert "VIOLATION" in res.stdout
    payload = run_cli(
        "spectrum", str(FIXTURES / "example_2_11.json"), "--j", "1", "--output", "json"
    )
    data = json.loads(payload.stdout)
    assert len(data["points"]) == 2
    assert any(p["violation"] for p in data["pairs"])


def test_construct_projection(tmp_path):
    out = tmp_path / "proj"
    res = run_cli("construct", "--recipe", "projection", "--n", "2", "--dims", "1,1", "--out", str(out))
    assert res.returncode == 0
    for name in ("channel.json", "povm.json", "verdict.json"):
        assert (out / name).exists()
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["claimed_status"] == "NOT_PR"
    assert verdict["verdict"]["status"] == "NOT_PR"


def test_construct_from_observables(tmp_path):
    out = tmp_path / "fobs"
    res = run_cli(
        "construct",
        "--recipe",
        "from-observables",
        "--frame",
        str(FIXTURES / "parseval3.json"),
        "--r",
        "2",
        "--out",
        str(out),
    )
    assert res.returncode == 0
    channel = json.loads((out / "channel.json").read_text())
    assert channel["dim_in"] == 2


def test_construct_rank2_and_rankr(tmp_path):
    res = run_cli("construct", "--recipe", "rank2", "--n", "3", "--seed", "2", "--out", str(tmp_path / "r2"))
    assert res.returncode == 0
    verdict = json.loads((tmp_path / "r2" / "verdict.json").read_text())
    assert verdict["claimed_status"] == "PR"
    povm = json.loads((tmp_path / "r2" / "povm.json").read_text())
    assert povm["rank_one_count"] == 5  # minimal real count in dimension 3

    res = run_cli("construct", "--recipe", "rankr", "--n", "2", "--r", "3", "--out", str(tmp_path / "rr"))
    assert res.returncode == 0


def test_construct_precondition_errors(tmp_path):
    res = run_cli("construct", "--recipe", "rankr", "--n", "2", "--r", "5", "--out", str(tmp_path / "x"))
    assert res.returncode == 3
    res = run_cli(
        "construct",
        "--recipe",
        "from-observables",
        "--frame",
        str(FIXTURES / "f3_real.json"),
        "--r",
        "2",
        "--out",
        str(tmp_path / "y"),
    )
    assert res.returncode == 3
    assert "SpanConditionFailed" in res.stderr


def test_shipped_fixtures_reverify():
    expected = {
        "identity2.json": 0,
        "dephasing.json": 1,
        "example_2_11.json": 1,
        "example_2_6.json": 1,
    }
    for name, code in expected.items():
        res = run_cli("check", str(FIXTURES / name), "--seed", "0")
        assert res.returncode == code, f"{name}: {res.stdout}{res.stderr}"


def test_byte_identical_reports():
    args = ("check", str(FIXTURES / "example_2_6.json"), "--output", "json", "--seed", "7")
    first = run_cli(*args).stdout
    second = run_cli(*args).stdout
    assert first == second
    args = ("spectrum", str(FIXTURES / "example_2_11.json"), "--j", "1", "--output", "json")
    assert run_cli(*args).stdout == run_cli(*args).stdout
