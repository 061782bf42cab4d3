import json
import os
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
EXE = os.environ.get("AER_EXE", str(ROOT / "build" / "tools" / "aer"))

pytestmark = pytest.mark.skipif(not Path(EXE).exists(), reason="aer executable not built")


def run(*args):
    return subprocess.run([EXE, *map(str, args)], capture_output=True, text=True)


def read_csv(path):
    lines = Path(path).read_text().splitlines()
    xs = [float(v) for v in lines[0].split(",")[1:]]
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return xs, rows


def test_asymptote_writes_outputs(tmp_path):
    p = run("asymptote", "--preset", "example1", "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    for name in ["assumptions.json", "phi_minus.csv", "phi_plus.csv", "front.csv", "width.csv", "u0.csv"]:
        assert (tmp_path / name).exists(), name
    report = json.loads((tmp_path / "assumptions.json").read_text())
    assert report


def test_flat_front_moves_at_unit_speed(tmp_path):
    p = run("asymptote", "--config", ROOT / "configs" / "flat_front.ini", "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    last = (tmp_path / "front.csv").read_text().splitlines()[-1].split(",")
    assert float(last[2]) == pytest.approx(0.0, abs=1e-4)


def test_invert_metrics_and_seed(tmp_path):
    p = run("invert", "--preset", "example1", "--seed", 3, "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    m = json.loads((tmp_path / "metrics.json").read_text())
    assert m["seed"] == 3
    assert m["branch"] == "smoothed"
    assert m["m_minus"] < m["m_plus"]
    xs, rows = read_csv(tmp_path / "f_delta.csv")
    assert len(xs) == 51 and len(rows) == 51


def test_forward_snapshot_round_trips(tmp_path):
    cfg = tmp_path / "f.ini"
    cfg.write_text("[forward]\nn = 20\nm = 20\nsnapshot_times = 0.1, 0.2\n")
    p = run("forward", "--preset", "example2", "--config", cfg, "--out", tmp_path)
    assert p.returncode == 0, p.stderr
    names = sorted(f.name for f in tmp_path.glob("u_t*.csv"))
    assert names == ["u_t0.1.csv", "u_t0.2.csv"]
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["steps"] > 0
    text = (tmp_path / "u_t0.2.csv").read_text()
    xs, rows = read_csv(tmp_path / "u_t0.2.csv")
    assert rows[0][1] == -8.0 and rows[-1][1] == 4.0
    assert all(r[1] == r[-1] for r in rows)
    assert "," in text


def test_bad_expression_exits_4(tmp_path):
    p = run("asymptote", "--config", ROOT / "configs" / "bad_expression.ini", "--out", tmp_path)
    assert p.returncode == 4
    assert "offset 10" in p.stderr


def test_assumption_violation_exits_2(tmp_path):
    p = run("asymptote", "--config", ROOT / "configs" / "assumption2_violation.ini", "--out", tmp_path)
    assert p.returncode == 2
    assert "assumption" in p.stderr
    assert (tmp_path / "assumptions.json").exists()


def test_unknown_option_exits_4(tmp_path):
    p = run("invert", "--preset", "example3", "--out", tmp_path)
    assert p.returncode == 4


def test_help_lists_grammar():
    p = run("--help")
    assert p.returncode == 0
    assert "[inverse]" in p.stdout
