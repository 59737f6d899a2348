"""Wobble process: regimes, trajectory contracts, ensemble laws."""

import math

import numpy as np
import pytest

from uavwobble.rng import splitmix64, stream_seed
from uavwobble.wobble import (
    EnvelopeTrajectory,
    Regime,
    TimeGrid,
    WobbleParams,
    _displacement_block,
    classify_regime,
    default_dt,
    radial_velocity,
    sample_envelope,
    wobble_distance,
)

TWO_PI = 2.0 * math.pi


def params(sigma_v=1.0, mu=0.0, omega_v=0.0):
    return WobbleParams(sigma_v=sigma_v, mu=mu, omega_v=omega_v)


# --- classification -------------------------------------------------------


@pytest.mark.parametrize(
    "mu, omega_v, expected",
    [
        (30.0, 20 * math.pi, Regime.GENERAL),
        (0.0, 0.0, Regime.FREE_DRIFT),
        (30.0, 0.0, Regime.CORRELATED_DRIFT),
        (0.0, 20 * math.pi, Regime.PURE_VIBRATION),
        (1e-300, 1e-300, Regime.GENERAL),  # zero means exactly zero
    ],
)
def test_classify_regime(mu, omega_v, expected):
    assert classify_regime(params(mu=mu, omega_v=omega_v)) is expected


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sigma_v": 0.0},
        {"sigma_v": -1.0},
        {"mu": -0.1},
        {"omega_v": -0.1},
        {"sigma_v": math.nan},
    ],
)
def test_params_validation(kwargs):
    base = {"sigma_v": 1.0, "mu": 0.0, "omega_v": 0.0}
    base.update(kwargs)
    with pytest.raises(ValueError):
        WobbleParams(**base)


def test_grid_validation():
    with pytest.raises(ValueError):
        TimeGrid(dt=0.0, n=10)
    with pytest.raises(ValueError):
        TimeGrid(dt=1e-3, n=1)
    grid = TimeGrid(dt=0.5, n=5, t0=1.0)
    np.testing.assert_allclose(grid.times(), [1.0, 1.5, 2.0, 2.5, 3.0])
    assert grid.t_max == 3.0


def test_default_dt_rule():
    p = params(mu=30.0, omega_v=20 * math.pi)
    assert default_dt(p) == pytest.approx(min(TWO_PI / p.omega_v, 1 / p.mu) / 200)
    assert default_dt(params()) == 1e-3
    assert default_dt(params(mu=1e-4)) == 1e-3  # ceiling binds for slow rates


# --- envelope -------------------------------------------------------------


def test_envelope_deterministic():
    p = params(mu=30.0, omega_v=20 * math.pi)
    grid = TimeGrid(dt=1e-3, n=64)
    a = sample_envelope(p, grid, seed=1234)
    b = sample_envelope(p, grid, seed=1234)
    assert np.array_equal(a.a, b.a)
    assert a.phi0 == b.phi0
    c = sample_envelope(p, grid, seed=1235)
    assert not np.array_equal(a.a, c.a)


def test_envelope_constant_when_rate_zero():
    env = sample_envelope(params(), TimeGrid(dt=1e-3, n=50), seed=9)
    assert np.all(env.a == env.a[0])


def test_envelope_phase_range():
    for seed in range(40):
        env = sample_envelope(params(), TimeGrid(dt=1e-3, n=2), seed=seed)
        assert 0.0 <= env.phi0 < TWO_PI


def test_envelope_marginal_statistics():
    p = params(sigma_v=0.7, mu=25.0)
    grid = TimeGrid(dt=1e-3, n=12)
    paths = np.array([sample_envelope(p, grid, stream_seed(5, r)).a for r in range(4000)])
    # stationarity at a fixed offset: zero mean, sigma_v^2 variance
    for column in (0, 5, 11):
        se_mean = p.sigma_v / math.sqrt(paths.shape[0])
        assert abs(paths[:, column].mean()) < 3 * se_mean
        var = paths[:, column].var()
        se_var = p.sigma_v**2 * math.sqrt(2.0 / paths.shape[0])
        assert abs(var - p.sigma_v**2) < 3 * se_var


def test_envelope_lag_one_correlation():
    # mu = 30 at 1 ms steps: adjacent-sample correlation exp(-0.03)
    p = params(mu=30.0)
    grid = TimeGrid(dt=1e-3, n=4)
    paths = np.array([sample_envelope(p, grid, stream_seed(11, r)).a for r in range(10_000)])
    products = paths[:, 0] * paths[:, 1]
    corr = products.mean()
    se = products.std(ddof=1) / math.sqrt(len(products))
    assert abs(corr - math.exp(-0.03)) < 3 * se


# --- velocity and displacement --------------------------------------------


def test_velocity_reduces_to_envelope():
    grid = TimeGrid(dt=1e-3, n=16)
    env = EnvelopeTrajectory(grid=grid, a=np.arange(16.0), phi0=0.0)
    vel = radial_velocity(env, omega_v=0.0)
    assert np.array_equal(vel.samples, env.a)


def test_velocity_pure_sinusoid():
    grid = TimeGrid(dt=1e-3, n=400)
    env = EnvelopeTrajectory(grid=grid, a=np.full(400, 2.0), phi0=0.0)
    vel = radial_velocity(env, omega_v=20 * math.pi)
    np.testing.assert_allclose(vel.samples, 2.0 * np.cos(20 * math.pi * grid.times()), atol=1e-12)


def test_velocity_bounded_by_envelope():
    p = params(mu=10.0, omega_v=45.0)
    grid = TimeGrid(dt=2e-3, n=200)
    env = sample_envelope(p, grid, seed=3)
    vel = radial_velocity(env, p.omega_v)
    assert np.all(np.abs(vel.samples) <= np.abs(env.a) + 1e-15)


def test_distance_zero_velocity():
    grid = TimeGrid(dt=0.01, n=20)
    disp = wobble_distance(radial_velocity(EnvelopeTrajectory(grid, np.zeros(20), 0.0), 0.0))
    assert np.all(disp.samples == 0.0)


def test_distance_constant_velocity():
    grid = TimeGrid(dt=0.01, n=101)
    vel = radial_velocity(EnvelopeTrajectory(grid, np.ones(101), 0.0), 0.0)
    disp = wobble_distance(vel)
    assert disp.samples[0] == 0.0
    assert disp.samples[100] == pytest.approx(1.0, rel=1e-12)


def test_distance_increment_bound():
    p = params(mu=30.0, omega_v=20 * math.pi)
    grid = TimeGrid(dt=1e-3, n=300)
    env = sample_envelope(p, grid, seed=21)
    vel = radial_velocity(env, p.omega_v)
    disp = wobble_distance(vel)
    steps = np.abs(np.diff(disp.samples))
    bound = np.abs(vel.samples).max() * grid.dt
    assert np.all(steps <= bound * (1.0 + 1e-12) + 1e-15)


# --- ensemble kernel ------------------------------------------------------


def test_block_kernel_matches_scalar_paths_bitwise():
    p = params(sigma_v=0.4, mu=30.0, omega_v=20 * math.pi)
    grid = TimeGrid(dt=5e-4, n=120)
    probe = np.array([0, 7, 40, 119])
    master = 777
    block = _displacement_block(p, grid, master, start=3, count=5, probe_idx=probe)
    for row in range(5):
        env = sample_envelope(p, grid, stream_seed(master, 3 + row))
        disp = wobble_distance(radial_velocity(env, p.omega_v))
        assert np.array_equal(block[row], disp.samples[probe])


def test_splitmix_stream_seeds_distinct():
    seeds = {stream_seed(42, i) for i in range(10_000)}
    assert len(seeds) == 10_000
    assert splitmix64(0) != splitmix64(1)
