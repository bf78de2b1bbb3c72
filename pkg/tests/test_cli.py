import json
import subprocess
import sys

import pytest

from csdm import hamio
from csdm.cli import _grid, main


def test_build_writes_parseable_file(tmp_path, capsys):
    out = tmp_path / "m.pham"
    assert main(["build", "--n", "5", "-o", str(out)]) == 0
    hf = hamio.read(out)
    assert hf.metadata["n_qubits"] == "5" and hf.metadata["theta"] == "0.16"
    ref = hamio.fixture_model_n5()
    for ps, c in ref:
        assert abs(hf.hamiltonian.coefficient(ps) - c) < 1e-5


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CSDM_OUTPUT_DIR", str(tmp_path / "out"))
    assert main(["build", "--n", "2"]) == 0
    assert (tmp_path / "out" / "model_n2.pham").exists()


def test_build_validation_exit_code(capsys):
    assert main(["build", "--n", "0"]) == 2
    assert main(["build", "--alpha", "-1"]) == 2


def test_measure_prints_energy_and_width(capsys):
    assert main(["measure", "--n", "2", "--target", "2.12-0.1i"]) == 0
    out = capsys.readouterr().out
    assert "E_theta   = 2.125899 -0.108984i" in out
    assert "Gamma     = 0.217968" in out
    assert "other" in out


def test_measure_json_is_byte_identical(tmp_path, capsys):
    args = ["measure", "--fixture", "h2minus", "--mode", "shots", "--seed", "3"]
    assert main(args + ["--json", str(tmp_path / "a.json")]) == 0
    assert main(args + ["--json", str(tmp_path / "b.json")]) == 0
    a = (tmp_path / "a.json").read_bytes()
    assert a == (tmp_path / "b.json").read_bytes()
    doc = json.loads(a)
    assert doc["seed"] == 3 and doc["variant"] == "shift" and doc["branch"] == "-" and doc["x"] == 1.0
    assert doc["source"]["sha256"] == hamio.fixture_checksum("h2minus")
    assert set(doc["fixture_sha256"]) == set(hamio.FIXTURES)


def test_measure_inconsistent_probabilities_is_runtime_error(capsys):
    # shift recovery for the n = 5 model has its arccos argument near 1
    assert main(["measure", "--mode", "shots", "--shots", "100000", "--seed", "0"]) == 1
    assert "arccos" in capsys.readouterr().err
    assert main(["measure", "--mode", "shots", "--shots", "100", "--seed", "0"]) == 1
    assert "p = 0" in capsys.readouterr().err


def test_measure_missing_file_and_parse_errors(tmp_path, capsys):
    assert main(["measure", "--hamiltonian", str(tmp_path / "none.pham"), "--target", "1"]) == 1
    bad = tmp_path / "bad.pham"
    bad.write_text("XX 1 0\nXQ 1 0\n")
    assert main(["measure", "--hamiltonian", str(bad), "--target", "1"]) == 2
    assert "line 2" in capsys.readouterr().err
    good = tmp_path / "good.pham"
    good.write_text("ZI 1 0\nIZ 0.5 -0.1\n")
    assert main(["measure", "--hamiltonian", str(good)]) == 2


def test_scan_model_outputs(tmp_path, capsys):
    args = ["scan", "--n", "5", "--alphas", "0.6:0.7:0.05", "--thetas", "0.14:0.18:0.01", "--jobs", "2"]
    files = ["--csv", str(tmp_path / "s.csv"), "--json", str(tmp_path / "s.json"), "--svg", str(tmp_path / "s.svg")]
    assert main(args + files) == 0
    out = capsys.readouterr().out
    assert "alpha=0.65 theta=0.16" in out and "not a pause point" not in out
    assert (tmp_path / "s.csv").read_text().count("\n") == 16
    doc = json.loads((tmp_path / "s.json").read_text())
    assert doc["metadata"]["pause"] is True and len(doc["points"]) == 15
    svg = (tmp_path / "s.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 3 and 'stroke="green"' in svg


def test_scan_n2_is_flagged(capsys):
    assert main(["scan", "--n", "2", "--alphas", "0.65"]) == 0
    assert "not a pause point" in capsys.readouterr().out


def test_scan_fixture_single_point(tmp_path, capsys):
    assert main(["scan", "--fixture", "h2minus", "--json", str(tmp_path / "h.json")]) == 0
    doc = json.loads((tmp_path / "h.json").read_text())
    assert doc["metadata"]["pause"] is False
    (pt,) = doc["points"]
    assert pt["theta"] == 0.18
    assert abs(complex(pt["re_E"], pt["im_E"]) - (-0.995102 - 0.046236j)) < 5e-3


def test_scan_empty_grid_is_usage_error(capsys):
    assert main(["scan", "--thetas", ""]) == 2


def test_argparse_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["measure", "--variant", "quartic"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--alphas", "0.8:0.5:0.1"])
    assert exc.value.code == 2


def test_grid_parsing():
    assert _grid("0.10:0.24:0.01")[-1] == 0.24 and len(_grid("0.10:0.24:0.01")) == 15
    assert _grid("0.5, 0.6") == [0.5, 0.6]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "csdm.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0.1.0"
