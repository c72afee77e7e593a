import json
import math

import numpy as np
import pytest

import wavelab


def test_exact_exponents():
    assert wavelab.theta1("1", "1/4") == "3/2"
    # gamma = 7 is the midpoint of (2, 12)
    assert wavelab.default_gamma("1/4") == "7"
    assert wavelab.theta2("1", "7", "1/4") == "29/28"
    assert wavelab.classify_pair("inf", "2") == "optimal"
    assert wavelab.eligible("1", "1/4") == []
    assert any("4-2b" in v or "(4 - 2b)" in v or "alpha" in v for v in wavelab.eligible("2", "1"))


def test_linear_solve_conserves_l2_of_gradient():
    x = np.array(wavelab.coordinates())
    phi = np.exp(-x**2)
    psi = np.zeros_like(phi)
    u, ut = wavelab.linear_solve(phi, psi, 1.5)
    e0 = wavelab.energy(phi, psi, b=0.25, alpha=1.0, epsilon=1 / 16)
    assert u.shape == phi.shape
    g0 = wavelab.sobolev_seminorm(phi, 1.0)
    g1 = wavelab.sobolev_seminorm(u, 1.0)
    k1 = wavelab.sobolev_seminorm(ut, 0.0)
    assert math.isclose(g0**2, g1**2 + k1**2, rel_tol=1e-10)
    assert e0["kinetic"] == 0.0


def test_picard_zero_data_single_iteration():
    rep = wavelab.solve_picard("eq.b = 1/4\ndata.kind = zero\n")
    assert rep["outcome"] == "converged"
    assert rep["iterations"] == 1


def test_unknown_key_rejected():
    with pytest.raises(wavelab.ConfigError):
        wavelab.parse_config("eq.alphaa = 1\n")


def test_run_check_exponents(tmp_path):
    code, run_dir, manifest, out, err = wavelab.run(
        "check-exponents", "eq.alpha = 1\neq.b = 1/4\n", str(tmp_path))
    assert code == 0, err
    m = json.loads(manifest)
    assert m["derived"]["theta1"] == "3/2"
    assert m["derived"]["anomalies"]
    assert "theta1" in out
