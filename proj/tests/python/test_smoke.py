import math

import numpy as np
import pytest

import aer


def test_expression_round_trip():
    e = aer.Expr("cos(pi*x/4)*cos(pi*y/4)")
    assert e(0.0, 0.0) == pytest.approx(1.0)
    assert aer.Expr(str(e))(1.3, -0.7) == e(1.3, -0.7)


def test_parse_error_is_config_error():
    with pytest.raises(aer.ConfigError, match="offset 4"):
        aer.Expr("cos(")
    assert issubclass(aer.ConfigError, aer.Error)


def test_outer_function_matches_closed_form():
    s = aer.preset("example2")
    x, y = 0.3, -0.2
    want = -math.sqrt(math.sin(4 * math.pi * (x - y - 1)) - math.sin(4 * math.pi * x) + math.pi * y * y + 63 * math.pi) / math.sqrt(math.pi)
    assert aer.eval_phi(s, aer.Side.minus, x, y) == pytest.approx(want, abs=1e-9)


def test_phi_field_shape_and_boundary():
    s = aer.preset("example1")
    g = s.grid(20, 10)
    phi = aer.phi_field(s, aer.Side.minus, g)
    assert phi.shape == (11, 21)
    assert np.allclose(phi[0, :], -4.0)


def test_front_and_width():
    s = aer.preset("example1")
    h = aer.front_at(s, 16, 0.7)
    assert len(h) == 17
    assert all(-s.a < v < s.a for v in h)
    assert aer.layer_width(3.0, 0.08, 2.0) > 0


def test_noise_is_deterministic():
    g = aer.Grid2D(-1, 1, 1, 8, 8)
    u = np.ones((9, 9))
    a = aer.add_noise(g, u, 0.01, 5)
    b = aer.add_noise(g, u, 0.01, 5)
    assert np.array_equal(a, b)
    assert np.max(np.abs(a - 1)) <= 0.01


def test_pipeline_runs_and_reports():
    s = aer.preset("example1")
    r = aer.run_pipeline(s, delta=0.01, seed=1, n=50)
    assert r["branch"] == "smoothed"
    assert 0 < r["rel_err_f"] < 1
    assert r["m_minus"] < r["m_plus"]
    assert r["f_delta"].shape == (51, 51)


def test_assumption_errors_map_to_python():
    s = aer.preset("example1")
    s.f = aer.Expr("40*cos(pi*x/4)")
    assert not aer.assumptions_hold(s)
    s.k = -1.0
    with pytest.raises(aer.ConfigError):
        s.validate()
