import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from starspec.cli import SCHEMA, main, render


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def ellipse_file(tmp_path):
    return write(tmp_path, "ellipse.json", {"dim": 2, "type": "ellipsoid", "semiaxes": [3.0, 1.0]})


@pytest.fixture
def square_file(tmp_path):
    return write(tmp_path, "square.json",
                 {"dim": 2, "type": "polygon", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]})


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def doc(out):
    d = json.loads(out)
    assert d["schema"] == SCHEMA
    return d["result"]


def test_factors(ellipse_file, capsys):
    code, out, _ = run(["factors", "--domain", ellipse_file], capsys)
    assert code == 0
    r = doc(out)
    assert r["g0"] == pytest.approx(5 / 3) and r["g1"] == pytest.approx(5 / 3)
    assert r["g"] == pytest.approx(5 / 3)


def test_factors_scan_csv(ellipse_file, tmp_path, capsys):
    grid = write(tmp_path, "grid.json", {"xs": [0.0, 2.0, 3.1], "ys": [0.0]})
    code, out, _ = run(["factors", "--domain", ellipse_file, "--scan", grid, "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["sign"] for r in rows][0] == "0"
    assert set(["x", "y", "g0", "g1", "sign"]) <= set(rows[0])


def test_homeo_check_and_dump(tmp_path, capsys):
    dom = write(tmp_path, "e.json", {"dim": 3, "type": "ellipsoid", "semiaxes": [1, 1, 2], "quadrature_order": 32})
    dump = str(tmp_path / "grid.csv")
    code, out, _ = run(["homeo", "--domain", dom, "--kind", "latlong", "--north", "c", "--check", "--dump", dump],
                       capsys)
    assert code == 0
    r = doc(out)
    assert r["jacobian_defect"] < 1e-6
    header = open(dump).readline().strip().split(",")
    assert header[:6] == ["theta1", "theta2", "f", "g", "jac", "hs2"]


def test_ball_spectrum_csv(capsys):
    code, out, _ = run(["ball-spectrum", "--bc", "dirichlet", "--dim", "2", "-n", "5", "--alpha",
                        "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    assert float(rows[0]["value"]) == pytest.approx(5.783185962946784)
    assert rows[1]["multiplicity"] == "2"


def test_bounds_verify(square_file, capsys):
    code, out, _ = run(["bounds", "--domain", square_file, "--bc", "dirichlet", "--functional", "lambda1",
                        "-n", "3", "--verify", "--improved", "--resolution", "4000"], capsys)
    assert code == 0
    reps = doc(out)["reports"]
    assert reps[0]["normalized_lhs"] == pytest.approx(np.pi**3 / 2, rel=1e-4)
    assert all(r["verdict"] == "PASS" for r in reps)


def test_bounds_negative_sigma_hint(square_file, capsys):
    code, _, err = run(["bounds", "--domain", square_file, "--bc", "robin", "--sigma", "-1"], capsys)
    assert code == 2
    assert "bound_engine.robin_parameters" in err and "hint:" in err


def test_sloshing_and_perturb(square_file, capsys):
    code, out, _ = run(["sloshing", "--domain", square_file, "-L", "1.0", "-n", "8"], capsys)
    assert code == 0 and doc(out)["reports"][0]["functional"] == "sloshing_sum"
    code, out, _ = run(["perturb", "--profile", "cos:3", "--eps", "0.01,0.02,0.04"], capsys)
    r = doc(out)
    assert r["fitted"] == pytest.approx(4.5, rel=0.02)
    code, out, _ = run(["perturb", "--profile", "Y:2:0", "--dim", "3"], capsys)
    assert code == 0


def test_verify_command(ellipse_file, capsys):
    code, out, _ = run(["verify", "--domain", ellipse_file, "--bc", "neumann", "-n", "4", "--resolution", "3000",
                        "--sloshing", "1.0"], capsys)
    assert code == 0 and doc(out)["passed"]


def test_mc_checks(capsys):
    code, out, _ = run(["mc", "--check", "traceav", "--dim", "3", "--samples", "20000", "--seed", "7"], capsys)
    assert code == 0 and doc(out)["deviation"] < 0.05
    code, out, _ = run(["mc", "--check", "haar", "--dim", "3", "--samples", "2000"], capsys)
    assert doc(out)["column_norm_defect"] < 1e-12
    code, out, _ = run(["mc", "--check", "q23", "--dim", "3", "--samples", "2000"], capsys)
    assert doc(out)["deviation"] < 1e-12
    code, out, _ = run(["mc", "--check", "orbital", "--dim", "3", "--samples", "5000"], capsys)
    assert code == 0


def test_mc_is_reproducible(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    for p in (a, b):
        assert main(["mc", "--check", "traceav", "--samples", "5000", "--seed", "3", "--out", p]) == 0
    assert open(a).read() == open(b).read()


def test_table1_exit_code(capsys, tmp_path):
    out = str(tmp_path / "t.csv")
    code, _, err = run(["table1", "--format", "csv", "--out", out], capsys)
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 16
    failing = [r for r in rows if r["ok"] != "True"]
    assert code == (3 if failing else 0)
    if failing:
        assert "cli.run_table1" in err


def test_fig1(capsys, tmp_path):
    code, out, _ = run(["fig1", "--step", "0.5"], capsys)
    assert code == 0
    assert doc(out)["summary"]["negative"] > 0


def test_suite_config_errors(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"n": 0})
    code, _, err = run(["suite", "--config", cfg], capsys)
    assert code == 2 and "InvalidArgument" in err
    cfg = write(tmp_path, "cfg2.json", {"sigmas": [-1.0]})
    code, _, err = run(["suite", "--config", cfg], capsys)
    assert code == 2 and "bound_engine.robin_parameters" in err and "hint:" in err
    cfg = write(tmp_path, "cfg3.json", {"colour": "red"})
    assert run(["suite", "--config", cfg], capsys)[0] == 2


def test_suite_pool_matches_serial(tmp_path, square_file, ellipse_file):
    base = {"domains": [square_file, ellipse_file], "bcs": ["dirichlet"], "n": 3, "resolution": 3000,
            "functionals": ["lambda1", "sum"]}
    outs = []
    for w in (1, 2):
        cfg = write(tmp_path, f"c{w}.json", dict(base, workers=w))
        p = str(tmp_path / f"o{w}.json")
        assert main(["suite", "--config", cfg, "--out", p]) == 0
        outs.append(open(p).read())
    assert outs[0] == outs[1]


def test_invalid_input_exit_codes(tmp_path, capsys):
    assert run(["factors", "--domain", str(tmp_path / "nope.json")], capsys)[0] == 2
    bad = write(tmp_path, "bad.json", {"dim": 2, "type": "fourier", "cos": [0.1, 1.0]})
    code, _, err = run(["factors", "--domain", bad], capsys)
    assert code == 2 and "geometric_factors.factor_set: InvalidDomain" in err
    code, _, _ = run(["ball-spectrum", "-n", "0"], capsys)
    assert code == 2


def test_render_nan_and_csv_key_value():
    text = render("x", {"a": float("nan"), "b": {"c": [1, 2]}}, "json")
    assert json.loads(text)["result"]["a"] is None
    text = render("x", {"a": 1, "b": {"c": 2}}, "csv")
    assert "b.c,2" in text


def test_module_entry_point(ellipse_file):
    p = subprocess.run([sys.executable, "-m", "starspec", "factors", "--domain", ellipse_file],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0
    assert json.loads(p.stdout)["command"] == "factors"
