import io
import json
import math

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from cli_io.main import cli
from tensor_core.library import basis_state, ghz_state, psi1_state
from tensor_core.states import DensityMatrix
from verification import suites


@pytest.fixture
def runner():
    return CliRunner()


def _json(result):
    return json.loads(result.output.strip().splitlines()[-1])


def test_compute_worked_example(runner, state_file):
    result = runner.invoke(cli, ["compute", state_file(psi1_state()), "--family", "kgm", "--k", "2"])
    assert result.exit_code == 0, result.output
    assert _json(result)["value"] == pytest.approx(3888 ** (1 / 14) / 2, abs=1e-9)


def test_compute_product_state_is_zero(runner, state_file):
    path = state_file(basis_state((2, 2, 2, 2), (0, 0, 0, 0)))
    for args in (["--family", "kgm", "--k", "3"], ["--family", "qkme", "--k", "2", "--param", "2"],
                 ["--family", "alphakgm", "--k", "4", "--param", "0.5"]):
        result = runner.invoke(cli, ["compute", path] + args)
        assert result.exit_code == 0, result.output
        assert _json(result)["value"] == 0


def test_compute_me_lists_the_attaining_partition(runner, state_file):
    result = runner.invoke(cli, ["compute", state_file(ghz_state(5)), "--family", "kme", "--k", "3", "--scores"])
    assert result.exit_code == 0, result.output
    record = _json(result)
    assert record["value"] == pytest.approx(1.0, abs=1e-11)
    assert "|" in record["attaining_partition"]
    assert len(record["per_partition_scores"]) == 25


def test_compute_output_is_rounded_to_twelve_digits(runner, state_file):
    result = runner.invoke(cli, ["compute", state_file(psi1_state()), "--family", "kgm", "--k", "2"])
    value = _json(result)["value"]
    assert value == float(f"{3888 ** (1 / 14) / 2:.12g}")


@pytest.mark.parametrize("args, code", [
    (["--family", "kgm", "--k", "5"], "InvalidK"),
    (["--family", "kgm", "--k", "2", "--param", "2"], "InvalidParam"),
    (["--family", "qkgm", "--k", "2", "--param", "0.5"], "InvalidParam"),
])
def test_compute_input_errors(runner, state_file, args, code):
    result = runner.invoke(cli, ["compute", state_file(psi1_state())] + args)
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == code


def test_compute_rejects_missing_and_mixed_files(runner, tmp_path, state_file):
    result = runner.invoke(cli, ["compute", str(tmp_path / "missing.json"), "--family", "kgm", "--k", "2"])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidFile"
    mixed = state_file(DensityMatrix((2, 2), np.eye(4) / 4), "mixed.json")
    result = runner.invoke(cli, ["compute", mixed, "--family", "kgm", "--k", "2"])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidState"


def test_sweep_csv(runner):
    result = runner.invoke(cli, ["sweep", "--template", "fig2", "--steps", "5"])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(io.StringIO(result.output))
    assert list(frame.columns) == ["theta", "value_gm", "value_me"]
    assert len(frame) == 5
    again = runner.invoke(cli, ["sweep", "--template", "fig2", "--steps", "5"])
    assert again.output == result.output


def test_sweep_writes_a_file(runner, tmp_path):
    out = tmp_path / "curve.csv"
    result = runner.invoke(cli, ["sweep", "--steps", "3", "--output", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_bytes().startswith(b"theta,value_gm,value_me\n")


@pytest.mark.parametrize("args", [["--steps", "1"], ["--theta-start", "2", "--theta-end", "1"],
                                  ["--template", "missing-template.json", "--steps", "3"]])
def test_sweep_bad_input(runner, args):
    result = runner.invoke(cli, ["sweep"] + args)
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidParam"


def test_ratio_csv(runner):
    result = runner.invoke(cli, ["ratio", "--alpha", "0.5", "--n-min", "5", "--n-max", "20"])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(io.StringIO(result.output))
    assert list(frame.columns) == ["n", "w_value", "ghz_value", "ratio"]
    assert frame["n"].tolist() == list(range(5, 21))
    assert (frame["ratio"] < 1).all()
    assert frame["ratio"].is_monotonic_increasing and frame["ratio"].is_unique


def test_ratio_three_qubits(runner):
    result = runner.invoke(cli, ["ratio", "--n-min", "3", "--n-max", "3"])
    ratio = pd.read_csv(io.StringIO(result.output))["ratio"].iloc[0]
    expected = math.sqrt(2 * ((1 + math.sqrt(2)) / math.sqrt(3) - 1)) / math.sqrt(2 * (math.sqrt(2) - 1))
    assert ratio == pytest.approx(expected, rel=1e-11)


def test_ratio_alpha_zero(runner):
    result = runner.invoke(cli, ["ratio", "--alpha", "0", "--n-min", "3", "--n-max", "6"])
    assert result.exit_code == 0
    assert pd.read_csv(io.StringIO(result.output))["ratio"].tolist() == [1.0] * 4


@pytest.mark.parametrize("args", [["--n-min", "2"], ["--n-min", "10", "--n-max", "9"], ["--n-max", "65"],
                                  ["--alpha", "1.5"]])
def test_ratio_bad_input(runner, args):
    result = runner.invoke(cli, ["ratio"] + args)
    assert result.exit_code == 2
    assert "error" in _json(result)


@pytest.mark.parametrize("n, k, expected", [(6, 4, "65"), (8, 3, "966"), (5, 2, "15")])
def test_partition_counts(runner, n, k, expected):
    result = runner.invoke(cli, ["partitions", "--n", str(n), "--k", str(k), "--count-only"])
    assert result.exit_code == 0
    assert result.output.strip() == expected


def test_partition_listing(runner):
    result = runner.invoke(cli, ["partitions", "--n", "3", "--k", "2"])
    assert result.output.splitlines() == ["12|3", "13|2", "1|23"]


def test_partition_bad_k(runner):
    result = runner.invoke(cli, ["partitions", "--n", "3", "--k", "4"])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidK"


def test_verify_passes(runner):
    result = runner.invoke(cli, ["verify", "--suite", "thm2", "--n", "4", "--samples", "10", "--seed", "3"])
    assert result.exit_code == 0, result.output
    record = _json(result)
    assert record["passed"] and record["seed"] == 3


def test_verify_seed_comes_from_the_environment(runner):
    result = runner.invoke(cli, ["verify", "--suite", "n-degeneracy", "--samples", "2", "--seed", "3"],
                           env={"ENTHIER_SEED": "17"})
    assert _json(result)["seed"] == 17


def test_verify_violation_exits_1(runner, monkeypatch):
    def broken(report, dims, rng, search):
        report.track("always violated", 1e-12).add(-1.0)

    monkeypatch.setitem(suites.SUITES, "perm", broken)
    result = runner.invoke(cli, ["verify", "--suite", "perm", "--samples", "1"])
    assert result.exit_code == 1
    assert _json(result)["passed"] is False


def test_verify_unknown_suite(runner):
    result = runner.invoke(cli, ["verify", "--suite", "nope"])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidParam"


def test_bound_on_pure_and_mixed_files(runner, state_file):
    result = runner.invoke(cli, ["bound", state_file(psi1_state()), "--family", "kgm", "--k", "2",
                                 "--restarts", "1", "--refine-iters", "1"])
    assert result.exit_code == 0, result.output
    record = _json(result)
    assert record["upper_bound"] == pytest.approx(3888 ** (1 / 14) / 2, abs=1e-9)
    assert record["ensemble_size"] == 1

    mat = np.zeros((8, 8))
    mat[0, 0], mat[7, 7] = 0.25, 0.75
    mixed = state_file(DensityMatrix((2, 2, 2), mat), "mixed.json")
    result = runner.invoke(cli, ["bound", mixed, "--family", "kme", "--k", "2", "--restarts", "1",
                                 "--refine-iters", "1"])
    assert result.exit_code == 0, result.output
    record = _json(result)
    assert record["upper_bound"] == 0
    assert sum(record["weights"]) == pytest.approx(1.0)


def test_log_level_and_threads_options(runner, state_file):
    result = runner.invoke(cli, ["--log-level", "error", "--threads", "2", "compute", state_file(ghz_state(4)),
                                 "--family", "kgm", "--k", "2"])
    assert result.exit_code == 0, result.output
    assert _json(result)["value"] == pytest.approx(1.0, abs=1e-11)


def test_compute_rejects_non_utf8_file(runner, tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"kind": "pure", "dims": [2, 2], "label": "\xff\xfe"}')
    result = runner.invoke(cli, ["compute", str(path), "--family", "kgm", "--k", "2"])
    assert result.exit_code == 2
    assert _json(result)["error"]["code"] == "InvalidFile"


def test_compute_single_partition(runner, state_file):
    path = state_file(psi1_state())
    result = runner.invoke(cli, ["compute", path, "--family", "kgm", "--k", "2", "--partition", "234|1"])
    assert result.exit_code == 0, result.output
    assert _json(result) == {"partition": "1|234", "score": pytest.approx(math.sqrt(3) / 2, abs=1e-11)}
    for bad in ("1|2|34", "12|3", "1|1"):
        result = runner.invoke(cli, ["compute", path, "--family", "kgm", "--k", "2", "--partition", bad])
        assert result.exit_code == 2
        assert _json(result)["error"]["code"] == "InvalidPartition"


def test_ratio_alpha_just_below_one(runner):
    result = runner.invoke(cli, ["ratio", "--alpha", repr(math.nextafter(1.0, 0.0)), "--n-min", "3", "--n-max", "5"])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(io.StringIO(result.output))
    assert frame["n"].tolist() == [3, 4, 5]
    assert (frame["w_value"] > 0).all() and (frame["ghz_value"] > 0).all()
    assert ((frame["ratio"] > 0) & (frame["ratio"] < 1)).all()
