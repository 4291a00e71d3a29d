import csv
import json
import subprocess
import sys
from importlib import resources

import numpy as np
import pytest

from cliff13.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, load_config, run, validate_config


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_fixtures_match_shipped_file(capsys):
    code, out, _ = call(capsys, "rep", "--fixtures")
    assert code == EXIT_OK
    shipped = resources.files("cliff13").joinpath("data/gamma_fixtures.json").read_text()
    assert out == shipped
    g = json.loads(out)["gamma"]
    assert g["0"][0][0] == [1, 0]


def test_rep_matrix(capsys):
    code, out, _ = call(capsys, "rep", "--k", "2", "--input", '{"": 1}')
    assert code == EXIT_OK
    mat = np.array(json.loads(out)["matrix"])
    assert mat.shape == (8, 8, 2)
    assert np.array_equal(mat[..., 0], np.eye(8))
    assert call(capsys, "rep")[0] == EXIT_INPUT
    assert call(capsys, "rep", "--input", "{not json")[0] == EXIT_INPUT
    assert call(capsys, "rep", "--input", '{"4": 1}')[0] == EXIT_INPUT


def test_frame(capsys, tmp_path):
    out_file = tmp_path / "frame.json"
    code, out, _ = call(capsys, "frame", "--k", "3", "-o", str(out_file))
    obj = json.loads(out)
    assert code == EXIT_OK and obj["dimension"] == 12
    assert len(obj["basis"]) == 12 and len(obj["generators"]) == 9
    assert np.array(obj["structure_constants"]).shape == (9, 9, 9)
    assert json.loads(out_file.read_text()) == obj
    assert call(capsys, "frame", "--k", "5")[0] == EXIT_INPUT


def test_spin(capsys):
    code, out, _ = call(capsys, "spin", "--generator", '{"12": 0.3}', "--exterior")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["membership"]["pass"]
    assert np.ravel(obj["lambda"])[0] == pytest.approx(1.09)
    assert np.allclose(np.array(obj["lorentz"])[[0, 3]][:, [0, 3]], np.eye(2))
    code, out, _ = call(capsys, "spin", "--generator", '{"01": 0.5}')
    assert code == EXIT_OK and json.loads(out)["lorentz"][0][0] > 1
    assert call(capsys, "spin", "--generator", '{"1": 0.3}')[0] == EXIT_INPUT
    assert call(capsys, "spin", "--generator", '{"01": 1.2}', "--exterior")[0] == EXIT_INPUT


def test_geometry_csv(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"preset": "conformal", "points": 4})
    code, out, _ = call(capsys, "geometry", "--config", cfg, "--seed", "3")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == EXIT_OK and len(rows) == 4
    assert all(r["signature_ok"] == "1" for r in rows)
    code2, out2, _ = call(capsys, "geometry", "--config", cfg, "--seed", "3")
    assert out == out2
    code, out, _ = call(capsys, "geometry", "--config", write(tmp_path, "f.json", {"preset": "flat"}), "--points", "2")
    assert all(float(r["max_abs_riemann"]) == 0 for r in csv.DictReader(out.splitlines()))


def test_calculus(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"preset": "perturbed", "params": {"seed": 4, "eps": 0.05}})
    code, out, _ = call(capsys, "calculus", "--config", cfg, "--points", "3")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"]
    assert {s["name"] for s in rep["suites"]} == {"calculus", "geometry"}
    assert list(rep)[-1] == "timestamp"


@pytest.mark.parametrize("suite, k", [("tmp", 3), ("ym", 2), ("gauge", 1), ("bridge", 4), ("even", 2)])
def test_equations(capsys, tmp_path, suite, k):
    cfg = write(tmp_path, "c.json", {"preset": "conformal", "k": k, "seed": 2})
    code, out, _ = call(capsys, "equations", "--config", cfg, "--suite", suite, "--points", "2")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["pass"] and rep["max_residual"] < 1e-7


def test_equations_even_needs_small_k(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"preset": "flat"})
    code, _, err = call(capsys, "equations", "--config", cfg, "--suite", "even", "--k", "3")
    assert code == EXIT_INPUT and "k = 1 or k = 2" in err


def test_export_fixture(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"preset": "flat", "m": 0.5})
    target = tmp_path / "sol.csv"
    code, _, _ = call(capsys, "equations", "--config", cfg, "--suite", "bridge", "--points", "3", "--export-fixture", str(target))
    rows = list(csv.DictReader(target.read_text().splitlines()))
    assert code == EXIT_OK and len(rows) == 3
    r = rows[0]
    phase = np.exp(-0.5j * float(r["x0"]))
    assert float(r["re_psi0"]) == pytest.approx(phase.real) and float(r["im_psi0"]) == pytest.approx(phase.imag)
    assert float(r["re_scalar"]) == pytest.approx(0.5 * phase.real)


def test_schema_errors(capsys, tmp_path):
    bad = write(tmp_path, "b.json", {"preset": "conformal", "params": {"kappa": [1, 2]}, "color": 1})
    code, _, err = call(capsys, "calculus", "--config", bad)
    assert code == EXIT_INPUT
    assert "/params/kappa" in err and "color" in err
    assert call(capsys, "calculus", "--config", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    assert validate_config({"preset": "flat"}) == {"preset": "flat"}
    with pytest.raises(Exception):
        load_config('{"preset": "torus"}')


def test_argparse_errors(capsys):
    assert call(capsys, "nonsense")[0] == EXIT_INPUT
    assert call(capsys)[0] == EXIT_INPUT
    assert call(capsys, "--version")[0] == EXIT_OK


def test_failing_suite_exit_code(capsys, tmp_path, monkeypatch):
    from cliff13 import suites

    monkeypatch.setattr(suites.Check, "passed", property(lambda self: False))
    cfg = write(tmp_path, "c.json", {"preset": "flat"})
    code, _, err = call(capsys, "equations", "--config", cfg, "--suite", "tmp", "--points", "1")
    assert code == EXIT_FAIL and err.startswith("FAIL tmp/")


def test_verify_deterministic():
    cmd = [sys.executable, "-m", "cliff13.cli", "verify", "--seed", "5", "--points", "1"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0, a.stderr
    ra, rb = json.loads(a.stdout), json.loads(b.stdout)
    ra.pop("timestamp"), rb.pop("timestamp")
    assert ra == rb and ra["pass"]
