import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from hodgelab.cli import run
from hodgelab.errors import StructureError
from hodgelab.families import load_model
from hodgelab.hodge import ANCHORS
from hodgelab.report import (GridSpecError, degeneration_summary, geometry_report, parse_grid,
                             parse_points, verify_model)

C0_MODEL = {"type": "prepotential", "name": "c0", "n": 2,
            "coefficients": [[[3, 0], 1.0], [[0, 3], 1.0]],
            "domain": {"re": [[-0.5, 0.5], [-0.5, 0.5]], "im": [[0.6, 1.0], [1.2, 2.4]]}}


# parsing -------------------------------------------------------------------

def test_parse_grid():
    pts = parse_grid("-0.5:0.5:3,0.8:1.2:2", 1)
    assert len(pts) == 6 and pts[0][0] == complex(-0.5, 0.8)
    pts = parse_grid("0:0:1,1:1:1;0:1:2,2:2:1", 2)
    assert [p.tolist() for p in pts] == [[1j, 2j], [1j, 1 + 2j]]
    assert len(parse_grid("0:1:2,1:2:2", 2)) == 16


@pytest.mark.parametrize("spec", ["", "0:1,1:2:2", "0:1:2", "0:1:0,1:2:2", "a:b:c,1:2:2",
                                  "0:1:2,1:2:2;0:1:2,1:2:2;0:1:2,1:2:2"])
def test_parse_grid_errors(spec):
    with pytest.raises(GridSpecError):
        parse_grid(spec, 2)


def test_parse_points():
    assert parse_points([[0.1, 1.0]], 1)[0].tolist() == [0.1 + 1j]
    assert parse_points([1.0, [0, 2]], 1)[1].tolist() == [2j]
    assert parse_points([[[0, 1], [0, 2]]], 2)[0].tolist() == [1j, 2j]
    with pytest.raises(GridSpecError):
        parse_points([], 1)
    with pytest.raises(GridSpecError):
        parse_points([[1j]], 1)
    with pytest.raises(GridSpecError):
        parse_points([[[0, 1]]], 2)


# library reports -----------------------------------------------------------

def test_geometry_report_flags_invalid_points(cubic):
    rep = geometry_report(cubic, [np.array([1j]), np.array([1.0 + 0j])])
    good, bad = rep["records"]
    assert good["valid"] and not bad["valid"]
    assert "positivity" in bad["reasons"] and "g" not in bad
    assert rep["summary"]["invalid"] == 1
    names = {c["name"] for c in good["checks"]}
    assert set(ANCHORS.values()) <= names
    assert abs(good["h_yukawa"]["re"][0][0] - 2.5) <= 1e-8


def test_verify_model_on_orbit():
    m = load_model("orbit_cubic")
    checks = verify_model(m, m.sample_points(3, seed=0))
    by_name = {}
    for c in checks:
        by_name.setdefault(c.name, []).append(c)
    assert all(c.passed for c in checks if c.required)
    assert not any(c.required for c in by_name["Thm4.2-constraint"])
    assert "limit-identity" in by_name and "schwarz-decay" in by_name


def test_degeneration_summary_requires_orbit(cubic):
    with pytest.raises(StructureError):
        degeneration_summary(cubic)


# command line --------------------------------------------------------------

def _cli(tmp_path, *args):
    return run([*args, "--out", str(tmp_path)])


def test_cli_validate_and_report(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[0, 1], [1, 0], [0.2, 1.5]]))
    assert _cli(tmp_path, "validate", "--model", "cubic", "--points", str(pts)) == 0
    data = json.loads((tmp_path / "validation.json").read_text())
    assert data["valid_count"] == 2
    assert _cli(tmp_path, "report", "--model", "cubic", "--points", str(pts)) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert [r["valid"] for r in rep["records"]] == [True, False, True]
    assert "2/3 points valid" in capsys.readouterr().out


def test_cli_scan(tmp_path):
    assert _cli(tmp_path, "scan", "--model", "two_moduli", "--grid", "0:0.2:2,0.7:0.9:2;0:0:1,1.5:1.5:1") == 0
    rows = list(csv.DictReader(io.StringIO((tmp_path / "scan.csv").read_text())))
    assert len(rows) == 4
    assert all(r["valid"] == "1" and r["checks_passed"] == "1" for r in rows)
    assert {"t1_re", "t2_im", "rho", "hhA"} <= set(rows[0])


def test_cli_negative_grid_needs_equals(tmp_path):
    assert _cli(tmp_path, "scan", "--model", "cubic", "--grid=-0.2:0.2:2,1:1:1") == 0


def test_cli_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["verify", "--model", "cubic", "--count", "4", "--out", str(a)]) == 0
    assert run(["verify", "--model", "cubic", "--count", "4", "--out", str(b)]) == 0
    assert (a / "verify.json").read_bytes() == (b / "verify.json").read_bytes()
    out = capsys.readouterr().out
    assert all(f"PASS {name}" in out for name in ANCHORS.values())


def test_cli_verify_failure_exit_1(tmp_path):
    model = tmp_path / "c0.json"
    model.write_text(json.dumps(C0_MODEL))
    assert _cli(tmp_path, "verify", "--model", str(model), "--count", "3") == 1
    rep = json.loads((tmp_path / "verify.json").read_text())
    assert "point-valid" in rep["failed"]


@pytest.mark.parametrize("args", [
    ("report", "--model", "no_such_model"),
    ("report", "--model", "cubic", "--grid", "nonsense"),
    ("degenerate", "--model", "cubic"),
    ("frobnicate", "--model", "cubic"),
    ("report", "--model", "cubic", "--tol", "-1"),
])
def test_cli_input_errors_exit_2(tmp_path, args):
    assert _cli(tmp_path, *args) == 2


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_cli_precision_exit_3(tmp_path):
    model = tmp_path / "q2.json"
    model.write_text(json.dumps({"type": "pf_mum", "truncation": 2,
                                 "coefficients": [[0, 0, 0, 0, 1], [-120, -1250, -4375, -6250, -3125]]}))
    assert _cli(tmp_path, "degenerate", "--model", str(model)) == 3


def test_cli_degenerate(tmp_path, capsys):
    assert _cli(tmp_path, "degenerate", "--model", "orbit_trivial") == 0
    summary = json.loads((tmp_path / "degeneration.json").read_text())
    assert summary["incomplete"] is True
    assert summary["constraint_derived"] == [0.0, 0.0]
    assert "incomplete=true" in capsys.readouterr().out
    assert _cli(tmp_path, "degenerate", "--model", "quintic") == 0
    assert json.loads((tmp_path / "degeneration.json").read_text())["incomplete"] is False


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hodgelab.cli", "validate", "--model", "cubic",
                           "--count", "2", "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "validation.json").exists()
