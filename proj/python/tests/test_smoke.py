import math

import numpy as np
import pytest

import boussinesq_sponge as bsq


def test_grid_layout():
    g = bsq.Grid(4, 0.5)
    assert g.half_length == pytest.approx(1.0)
    np.testing.assert_allclose(g.points, [-1.0, -0.5, 0.0, 0.5])
    np.testing.assert_allclose(g.wavenumbers, [0.0, math.pi, 0.0, -math.pi])
    with pytest.raises(ValueError):
        bsq.Grid(5, 0.5)


def test_transform_round_trip_and_derivative():
    g = bsq.Grid(256, 0.1)
    rng = np.random.default_rng(3)
    v = rng.standard_normal(256)
    coeffs = bsq.to_spectral(g, v)
    assert coeffs[0] == pytest.approx(v.sum())
    np.testing.assert_allclose(bsq.to_physical(g, coeffs), v, atol=1e-12)

    x = g.points
    f = np.sin(g.dk * x)
    np.testing.assert_allclose(bsq.derivative(g, f), g.dk * np.cos(g.dk * x), atol=1e-12)
    np.testing.assert_allclose(bsq.antiderivative(g, np.cos(g.dk * x)), np.sin(g.dk * x) / g.dk, atol=1e-12)


def test_sponge_profile():
    g = bsq.Grid(1024, 0.2)
    s = bsq.sponge_profile(10.0, -90.0, 90.0, g)
    assert abs(s[g.n // 2]) < 1e-70
    assert s[0] == pytest.approx(-10.0)


def test_damped_wave_oracle():
    f = lambda x: math.exp(-x * x)
    g = lambda x: 0.0
    x = np.array([-1.0, 0.0, 2.0])
    got = bsq.damped_wave_gaussian(0.0, x, 1.5)
    np.testing.assert_allclose(got, 0.5 * (np.exp(-(x + 1.5) ** 2) + np.exp(-(x - 1.5) ** 2)), rtol=1e-13)
    assert bsq.damped_wave_exact(f, g, 0.5, 0.0, 2.0) == pytest.approx(bsq.damped_wave_gaussian(0.5, [0.0], 2.0)[0])


def test_stationary_solve():
    eta, u, froude = bsq.kdv_initial_guess(0.44, 0.01, 0.01, bsq.Grid(1024, 0.2))
    assert froude == pytest.approx(-1.0022)
    sol = bsq.solve_stationary(0.44)
    assert sol["residual"] < 1e-10
    assert sol["iterations"] <= 100
    assert sol["eta"][512] == pytest.approx(0.44, abs=1e-10)


def test_evolve_stationary_wave_is_steady():
    sol = bsq.solve_stationary(0.44, n=512)
    g = bsq.Grid(512, 0.2)
    states = bsq.evolve(g, sol["eta"], sol["u"], sol["froude"], t_final=1.0, snapshot_interval=0.5)
    assert [t for t, _, _ in states] == pytest.approx([0.0, 0.5, 1.0])
    np.testing.assert_allclose(states[-1][1], sol["eta"], atol=1e-10)


def test_evolve_zero_stays_zero():
    g = bsq.Grid(64, 0.5)
    z = np.zeros(64)
    states = bsq.evolve(g, z, z, 0.0, t_final=0.1, snapshot_interval=0.1, sponge_a1=10.0, sponge_margin=3.0)
    assert np.all(states[-1][1] == 0.0)


def test_scenario_and_snapshots(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("scenario = traveling_wave\nn = 512\nt_final = 1\nsnapshot_interval = 0.5\nwindow = -20, 20\n")
    out = tmp_path / "out"
    result = bsq.run_scenario(str(cfg), str(out))
    assert result["passed"]
    assert len(result["errors"]) == 3
    assert max(result["errors"]) < 1e-9

    a = bsq.read_snapshot(str(out / "sponge" / "snapshot_000002.dat"))
    b = bsq.read_snapshot(str(out / "nosponge" / "snapshot_000002.dat"))
    assert a.n == 512 and a.sponge and not b.sponge
    assert bsq.relative_error(a, a) == 0.0
    assert bsq.relative_error(b, a, -20.0, 20.0) < 1e-9


def test_bad_snapshot(tmp_path):
    p = tmp_path / "bad.dat"
    p.write_text("n=2\ndx=0.1\n0 0 0\n")
    with pytest.raises(bsq.SnapshotFormatError):
        bsq.read_snapshot(str(p))
