import json
import subprocess
import sys

import numpy as np
import pytest

from superpos.channels import collecting_sp_channel, random_mixing_channel, random_sp_channel
from superpos.cli import main
from superpos.io import dumps_channel, dumps_operator


def qubit(c):
    return np.array([[0.5, c / 2], [np.conj(c) / 2, 0.5]], dtype=complex)


@pytest.fixture
def state_file(tmp_path):
    def write(rho, name="state.json"):
        p = tmp_path / name
        p.write_text(dumps_operator(rho))
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_measure_values(capsys, state_file):
    path = state_file(np.full((2, 2), 0.5))
    code, out = run(capsys, "measure", path, "--dims", "1,1", "--measure", "as")
    assert code == 0 and np.isclose(json.loads(out)["value"], np.log(2))
    path = state_file(qubit(0.6))
    for m, v in (("kyfan:1", 0.3), ("trace", 0.3), ("schatten:2", 0.3), ("af", 0.325083),
                 ("bound:1", 0.5), ("predictability", 0.0)):
        code, out = run(capsys, "measure", path, "--dims", "1,1", "--measure", m)
        assert code == 0 and np.isclose(json.loads(out)["value"], v, atol=1e-6), m


def test_measure_witness_and_dims_file(capsys, state_file, tmp_path):
    dims = tmp_path / "dims.json"
    dims.write_text('{"dims": [1, 1]}')
    code, out = run(capsys, "measure", state_file(qubit(0.6)), "--dims", str(dims), "--witness")
    doc = json.loads(out)
    assert code == 0 and doc["witness"]["dim"] == 2


def test_input_errors_exit_2(capsys, state_file, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["measure", str(bad), "--dims", "1,1"]) == 2
    assert main(["measure", state_file(qubit(0.6)), "--dims", "1,2"]) == 2
    assert main(["measure", state_file(qubit(0.6)), "--dims", "1,x"]) == 2
    assert main(["measure", state_file(qubit(0.6)), "--dims", "1,1", "--measure", "kyfan:5"]) == 2
    assert main(["measure", state_file(qubit(0.6)), "--dims", "1,1", "--measure", "nope"]) == 2
    assert main(["measure", str(tmp_path / "missing.json"), "--dims", "1,1"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["simulate", "--scenario", "f1", "--levels", "1", "--simple", "1",
                 "--t-max", "1", "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["simulate", "--scenario", "f1", "--levels", "2", "--t-max", "1",
                 "--out", str(tmp_path / "x.csv")]) == 2
    capsys.readouterr()


def test_simulate_compare_analytic(capsys, tmp_path):
    out = tmp_path / "f1.csv"
    code, text = run(capsys, "simulate", "--scenario", "f2", "--levels", "3", "--simple", "0.5",
                     "--t-max", "4", "--steps", "20", "--out", str(out), "--compare-analytic")
    doc = json.loads(text)
    assert code == 0 and doc["max_abs_deviation"] < 1e-7 and doc["rows"] == 21
    assert out.with_suffix(".json").exists()


def test_simulate_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["simulate", "--scenario", "f3", "--levels", "2", "--seed", "7",
                     "--t-max", "3", "--steps", "10", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_simulate_rate_file(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"g": [[0.5, 1.0], [0.0, 0.0]], "energies": [0.0, 1.0]}))
    assert main(["simulate", "--scenario", "f1", "--levels", "2", "--g-file", str(g),
                 "--t-max", "1", "--steps", "4", "--out", str(tmp_path / "g.csv")]) == 0
    g.write_text(json.dumps({"g": [[0.5, 1.0], [1.0, 0.0]]}))
    assert main(["simulate", "--scenario", "f1", "--levels", "2", "--g-file", str(g),
                 "--t-max", "1", "--out", str(tmp_path / "g.csv")]) == 2
    capsys.readouterr()


def test_interfere(capsys, state_file):
    rho = np.kron(np.full((2, 2), 0.5), np.eye(2) / 2)
    code, out = run(capsys, "interfere", state_file(rho), "--k", "1")
    doc = json.loads(out)
    assert code == 0 and np.isclose(doc["value"], 0.25) and np.isclose(doc["kyfan"], 0.25)
    assert np.isclose((doc["p1"] - doc["p2"]) / 2, 0.25)
    code, out = run(capsys, "interfere", state_file(qubit(0.6)), "--mode", "single_u")
    assert code == 0 and np.isclose(json.loads(out)["p_max"], 0.8)
    code, out = run(capsys, "interfere", state_file(rho), "--stochastic", "400", "--seed", "1")
    assert code == 0 and abs(json.loads(out)["value"] - 0.5) < 1e-3


def test_channel_check(capsys, tmp_path):
    def write(phi):
        p = tmp_path / "ch.json"
        p.write_text(dumps_channel(phi))
        return str(p)

    code, out = run(capsys, "channel-check", write(random_sp_channel([2, 2], seed=0)),
                    "--dims", "2,2", "--samples", "20")
    doc = json.loads(out)
    assert code == 0 and doc["is_sp"] and doc["monotone_as"] and doc["monotone_trace"]
    code, out = run(capsys, "channel-check", write(random_mixing_channel(4, seed=1)),
                    "--dims", "2,2", "--samples", "20")
    doc = json.loads(out)
    assert code == 0 and not doc["is_block_preserving"] and doc["as_increase_witness_found"]
    code, out = run(capsys, "channel-check", write(collecting_sp_channel(2)), "--dims", "2,2",
                    "--samples", "10")
    assert code == 0 and json.loads(out)["is_sp"]


def test_verify_subcommand(capsys):
    code, out = run(capsys, "verify", "--suite", "entropy", "--samples", "5")
    assert code == 0 and "PASS" in out and "FAIL" not in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "superpos", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "measure" in res.stdout
