"""Smoke tests for the Python bindings: each main operation runs and returns
self-consistent values.  Heavier property testing lives in the C++ suites."""

import math

import numpy as np
import pytest

import mgflow


@pytest.fixture(scope="module")
def point():
    return np.asarray(mgflow.random_glstar(seed=11, n=3))


def test_factorize_reconstructs(point):
    f = mgflow.factorize(point)
    lhs = point @ f["v_plus"]
    assert np.max(np.abs(lhs - f["a_plus"])) < 1e-10
    lhs = point @ f["v_minus"]
    assert np.max(np.abs(lhs - f["a_minus"])) < 1e-10
    # unit triangular factors
    assert np.max(np.abs(np.diag(f["v_plus"]) - 1.0)) < 1e-12
    assert np.max(np.abs(np.diag(f["v_minus"]) - 1.0)) < 1e-12


def test_darboux_chart_size(point):
    chart = mgflow.darboux(point)
    assert len(chart["p"]) == 3 and len(chart["q"]) == 3
    assert len(chart["casimirs"]) == 3
    assert all(np.isfinite(complex(v)) for v in chart["p"] + chart["q"])


def test_omega_antisymmetric(point):
    rng = np.random.default_rng(7)
    d1 = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    d2 = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    w12 = mgflow.omega(point, d1, d2)
    w21 = mgflow.omega(point, d2, d1)
    assert abs(w12 + w21) < 1e-10 * max(1.0, abs(w12))


def test_bracket_reference_value():
    a = np.array([[1.5 + 0.25j, 0.3 - 0.1j], [0.4 + 0.2j, 1.2 - 0.3j]])
    assert abs(mgflow.bracket(a, 1, 1, 2, 2)) < 1e-14
    want = 0.25 * a[0, 0] * a[1, 0]
    assert abs(mgflow.bracket(a, 1, 1, 2, 1) - want) < 1e-14


def test_linear_flow_freezes_actions(point):
    mu = [0.4 + 0.0j, -0.1 + 0.0j, -0.3 + 0.0j]
    moved = np.asarray(mgflow.linear_flow(point, mu, 0.6))
    p0 = mgflow.darboux(point)["p"]
    p1 = mgflow.darboux(moved)["p"]
    assert max(abs(x - y) for x, y in zip(p0, p1)) < 1e-12


def test_su3_actions_consistent():
    u = np.asarray(mgflow.random_su3(seed=5))
    assert np.max(np.abs(u.conj().T @ u - np.eye(3))) < 1e-12
    st = mgflow.su3_actions(u)
    for j, idx in ((st["I1"], (0, 0)), (st["I2"], (1, 1)), (st["I3"], (2, 2))):
        assert abs(j - abs(u[idx]) ** 2) < 1e-12
    assert abs(st["I0"] - (st["I2"] - st["I1"] - st["I3"] - 1.0)) < 1e-12
    assert abs(st["rho"] - math.sqrt(st["I1"] * st["I2"] * st["I3"])) < 1e-12


def test_pendulum_actions_frozen():
    run = mgflow.pendulum(t_final=1.0, steps=400, seed=2026)
    for key in ("I1", "I2", "I3"):
        drift = max(abs(v - run[key][0]) for v in run[key])
        assert drift < 1e-9
    assert max(run["residual"]) < 1e-9


def test_scatter_determinant_one():
    rec = mgflow.scatter(seed=9, n=3, half_width=6.0, h=0.0625, xi_max=1.0, xi_count=5)
    assert rec["flagged"] == 0
    for s in rec["s"]:
        assert abs(np.linalg.det(np.asarray(s)) - 1.0) < 1e-8


def test_verify_suite_passes():
    assert mgflow.verify("form", seed=2026, n=2, trials=4)
