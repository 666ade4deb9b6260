import csv
import io
import json

import numpy as np
import pytest

from qdlab.cli import EXIT_CONFIG, EXIT_EVAL, EXIT_OK, RNG_NAME, RunConfig, main, parse_grid
from qdlab.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def value(out):
    v = json.loads(out)["value"]
    return complex(v[0], v[1])


def rows(out):
    return list(csv.reader(io.StringIO(out)))


def test_phib_unit_modulus_on_real_line(capsys):
    code, out = run(capsys, "eval", "phib", "--z", "0.3")
    assert code == EXIT_OK
    assert abs(abs(value(out)) - 1) < 1e-12


def test_hr_symmetric_in_mu(capsys):
    args = ("eval", "hr", "--lambda", "0.1,-0.2", "--tol", "1e-10")
    _, a = run(capsys, *args, "--mu", "0.3,0.05")
    _, b = run(capsys, *args, "--mu", "0.05,0.3")
    assert abs(value(a) - value(b)) < 1e-8 * abs(value(a))


def test_extrapolated_tilde_hits_polynomial(capsys):
    common = ("--lambda", "0.3,-0.2", "--n", "0,1", "--nt", "0,0")
    _, a = run(capsys, "eval", "whittaker_tilde", "--extrapolate", *common)
    _, b = run(capsys, "eval", "whittaker_poly", *common)
    assert abs(value(a) - value(b)) < 1e-6 * abs(value(b))


def test_pole_is_evaluation_error(capsys):
    # c_b at b = 0.8 is the first pole of phi_b
    code, _ = run(capsys, "eval", "phib", "--b", "0.8", "--z", "1.025j")
    assert code == EXIT_EVAL


@pytest.mark.parametrize("argv", [
    ("eval", "phib", "--b", "1.3", "--z", "0.1"),
    ("eval", "nosuch", "--z", "0.1"),
    ("eval", "phib", "--z", "0.1", "--tol", "1e-15"),
    ("eval", "phib", "--z", "0.1", "--format", "xml"),
    ("eval", "hr", "--lambda", "0.1"),
    ("suite", "nosuch"),
    ("sweep", "phib", "--grid", "z=1:0:0.1"),
    (),
])
def test_configuration_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == EXIT_CONFIG


def test_hr_sweep_grid(capsys):
    code, out = run(capsys, "sweep", "hr", "--mu", "0.3,0.05", "--lambda", "0,0.1",
                    "--grid", "lambda1=-1:1:0.1", "--tol", "1e-8")
    assert code == EXIT_OK
    table = rows(out)
    assert len(table) == 22
    assert table[0][-3:] == ["value_re", "value_im", "error"]


def test_phib_sweep_csv(capsys):
    code, out = run(capsys, "sweep", "phib", "--grid", "z=-1:1:0.5")
    table = rows(out)
    assert code == EXIT_OK
    assert table[0] == ["z_re", "z_im", "value_re", "value_im", "error"]
    for r in table[1:]:
        assert abs(complex(float(r[2]), float(r[3]))) == pytest.approx(1, abs=1e-12)
    # 17 significant digits round-trip exactly
    assert table[2][0] == "-0.5"
    assert all(len(c.replace("-", "").replace(".", "").lstrip("0").split("e")[0]) <= 17 for c in table[1])


def test_m1_residual_sweep(capsys):
    code, out = run(capsys, "sweep", "macdonald_m1_residual", "--mu", "0.2,-0.1",
                    "--grid", "lambda=random:3", "--seed", "4", "--tol", "1e-10")
    assert code == EXIT_OK
    vals = [float(r[-3]) for r in rows(out)[1:]]
    assert len(vals) == 3 and max(vals) <= 1e-6


def test_cluster_suite_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["suite", "cluster", "--quick", "--out", str(p1)]) == EXIT_OK
    assert main(["suite", "cluster", "--quick", "--out", str(p2)]) == EXIT_OK
    assert p1.read_bytes() == p2.read_bytes()
    rep = json.loads(p1.read_text())
    assert rep["ok"] and rep["rng"] == RNG_NAME and rep["failed"] == 0


def test_batch_file(capsys, tmp_path):
    doc = {"b": 0.79, "tau": 0.1, "tol": 1e-9, "points": [
        {"lambda": [0.1, -0.2], "mu": [0.3, 0.05]},
        {"lambda": [[0.1, 0.0], -0.2], "mu": "0.05,0.3"},
    ]}
    path = tmp_path / "batch.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "batch", "hr", str(path), "--format", "json")
    assert code == EXIT_OK
    pts = json.loads(out)["points"]
    a, b = (complex(*p["value"]) for p in pts)
    assert abs(a - b) < 1e-7 * abs(a)
    code, out = run(capsys, "batch", "hr", str(path))
    assert len(rows(out)) == 3


def test_batch_file_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"points": [{"z": 0.1}]}))
    assert run(capsys, "batch", "hr", str(path))[0] == EXIT_CONFIG
    path.write_text("{not json")
    assert run(capsys, "batch", "phib", str(path))[0] == EXIT_CONFIG
    path.write_text(json.dumps({"b": 2.0, "points": []}))
    assert run(capsys, "batch", "phib", str(path))[0] == EXIT_CONFIG


def test_parse_grid_and_config():
    name, vals = parse_grid("z=0:1:0.25", np.random.default_rng(0))
    assert name == "z" and len(vals) == 5
    with pytest.raises(ConfigError):
        parse_grid("z", np.random.default_rng(0))
    with pytest.raises(ConfigError):
        RunConfig(b=0)
