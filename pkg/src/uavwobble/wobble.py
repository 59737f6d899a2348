"""Stochastic wobble process of a hovering rotary-wing UAV.

A hovering rotorcraft never holds position exactly: rotor vibration and
wind gusts move the airframe on a millimetre scale.  Only the radial
component of that motion (along the UAV-to-ground line) shifts the
carrier phase, and it is modelled as

    V(t) = a(t) * cos(omega_v * t + phi0)

where ``omega_v`` is the mechanical vibration frequency, ``phi0`` a
uniform random initial phase, and ``a(t)`` a zero-mean stationary
Gaussian envelope with autocovariance ``sigma_v^2 * exp(-mu * |dt|)``.
The envelope is generated by the exact AR(1) discretization of that
Gauss-Markov law, so sampled paths carry the exponential correlation at
every lag with no time-step bias.  Displacement is accumulated with a
left Riemann sum

    d[0] = 0,   d[n] = d[n-1] + V[n-1] * dt

which is precisely the partition-sum form the closed-form channel
statistics are derived over, making simulation and analysis two
discretizations of the same object.

Setting ``mu`` and/or ``omega_v`` to exactly zero selects degenerate
wobble patterns (drift without vibration, vibration without envelope
drift, or free drift); see :class:`Regime`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .rng import generator_from_seed, open_uniform, standard_normals, stream_seed

_TWO_PI = 2.0 * math.pi

#: Hard ceiling on the default simulation step (s).
_DT_CEILING = 1e-3

#: Samples per fastest characteristic time in the default step rule.
_SAMPLES_PER_CHARACTERISTIC_TIME = 200


class Regime(enum.Enum):
    """Wobble pattern selected by which rates are exactly zero."""

    GENERAL = "general"                    # mu != 0 and omega_v != 0
    FREE_DRIFT = "free_drift"              # mu == 0 and omega_v == 0
    CORRELATED_DRIFT = "correlated_drift"  # mu != 0 and omega_v == 0
    PURE_VIBRATION = "pure_vibration"      # mu == 0 and omega_v != 0


@dataclass(frozen=True)
class WobbleParams:
    """Wobbling description: envelope scale and the two rates.

    sigma_v: standard deviation of the velocity envelope (m/s), > 0.
    mu: envelope decorrelation rate (1/s), >= 0.
    omega_v: mechanical vibration angular frequency (rad/s), >= 0.
    """

    sigma_v: float
    mu: float
    omega_v: float

    def __post_init__(self) -> None:
        for name in ("sigma_v", "mu", "omega_v"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.sigma_v <= 0.0:
            raise ValueError(f"sigma_v > 0 required, got {self.sigma_v!r}")
        if self.mu < 0.0:
            raise ValueError(f"mu >= 0 required, got {self.mu!r}")
        if self.omega_v < 0.0:
            raise ValueError(f"omega_v >= 0 required, got {self.omega_v!r}")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling grid: ``n`` samples spaced ``dt`` from ``t0``."""

    dt: float
    n: int
    t0: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError(f"dt > 0 required, got {self.dt!r}")
        if self.n < 2:
            raise ValueError(f"n >= 2 required, got {self.n!r}")

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_max(self) -> float:
        return self.t0 + self.dt * (self.n - 1)


@dataclass(frozen=True)
class EnvelopeTrajectory:
    """One sampled velocity-envelope path and its realization phase."""

    grid: TimeGrid
    a: np.ndarray
    phi0: float


@dataclass(frozen=True)
class VelocityTrajectory:
    grid: TimeGrid
    samples: np.ndarray


@dataclass(frozen=True)
class DisplacementTrajectory:
    grid: TimeGrid
    samples: np.ndarray


def classify_regime(params: WobbleParams) -> Regime:
    """Map exact zeros of (mu, omega_v) to the wobble pattern.

    The rates are model choices, not measurements, so the comparison is
    exact: 0.0 means the mechanism is switched off, any nonzero value
    (however small) means it is present.
    """
    mu_zero = params.mu == 0.0
    omega_zero = params.omega_v == 0.0
    if mu_zero and omega_zero:
        return Regime.FREE_DRIFT
    if mu_zero:
        return Regime.PURE_VIBRATION
    if omega_zero:
        return Regime.CORRELATED_DRIFT
    return Regime.GENERAL


def default_dt(params: WobbleParams) -> float:
    """Default simulation step: >= 200 samples per fastest time scale.

    Keeps the Riemann-sum discretization error well below Monte Carlo
    noise for any ensemble size used in practice.  Capped at 1 ms so
    slow (or rateless) processes still get a sensible grid.
    """
    scales = []
    if params.omega_v > 0.0:
        scales.append(_TWO_PI / params.omega_v)
    if params.mu > 0.0:
        scales.append(1.0 / params.mu)
    if not scales:
        return _DT_CEILING
    return min(_DT_CEILING, min(scales) / _SAMPLES_PER_CHARACTERISTIC_TIME)


def grid_for_horizon(params: WobbleParams, t_max: float, dt: float | None = None) -> TimeGrid:
    """Grid covering [0, t_max] at the default (or given) step."""
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValueError(f"t_max > 0 required, got {t_max!r}")
    step = default_dt(params) if dt is None else float(dt)
    n = max(2, int(round(t_max / step)) + 1)
    return TimeGrid(dt=step, n=n)


def _envelope_draws(rng: np.random.Generator, n: int) -> tuple[np.ndarray, float]:
    # Fixed draw order per stream: n envelope normals, then phi0.
    normals = standard_normals(rng, n)
    phi0 = _TWO_PI * float(open_uniform(rng, 1)[0])
    return normals, phi0


def sample_envelope(params: WobbleParams, grid: TimeGrid, seed: int) -> EnvelopeTrajectory:
    """Draw one envelope path from its exact AR(1) discretization.

    ``a[0] = sigma_v * b_1`` and
    ``a[k] = exp(-mu dt) a[k-1] + sigma_v sqrt(1 - exp(-2 mu dt)) b_{k+1}``
    with i.i.d. standard normal ``b``.  Every sample is marginally
    N(0, sigma_v^2) and the lag-k autocovariance is
    ``sigma_v^2 exp(-mu k dt)`` exactly.  ``phi0`` is drawn from the same
    stream, so ``(seed, params, grid)`` fully determine the trajectory.
    """
    rng = generator_from_seed(seed)
    normals, phi0 = _envelope_draws(rng, grid.n)
    rho = math.exp(-params.mu * grid.dt)
    innovation = params.sigma_v * math.sqrt(max(0.0, 1.0 - rho * rho))
    a = np.empty(grid.n)
    a[0] = params.sigma_v * normals[0]
    for k in range(1, grid.n):
        a[k] = rho * a[k - 1] + innovation * normals[k]
    return EnvelopeTrajectory(grid=grid, a=a, phi0=phi0)


def radial_velocity(env: EnvelopeTrajectory, omega_v: float) -> VelocityTrajectory:
    """Radial velocity ``V(t) = a(t) cos(omega_v t + phi0)`` on the grid."""
    t = env.grid.times()
    samples = env.a * np.cos(omega_v * t + env.phi0)
    return VelocityTrajectory(grid=env.grid, samples=samples)


def wobble_distance(vel: VelocityTrajectory) -> DisplacementTrajectory:
    """Accumulated radial displacement by left Riemann sum, d(t0) = 0."""
    d = np.empty(vel.grid.n)
    d[0] = 0.0
    np.cumsum(vel.samples[:-1] * vel.grid.dt, out=d[1:])
    return DisplacementTrajectory(grid=vel.grid, samples=d)


def _displacement_block(
    params: WobbleParams,
    grid: TimeGrid,
    master_seed: int,
    start: int,
    count: int,
    probe_idx: np.ndarray,
) -> np.ndarray:
    """Displacements at ``probe_idx`` for realizations [start, start+count).

    Vectorized across the block but arithmetically identical, sample for
    sample, to running :func:`sample_envelope` -> :func:`radial_velocity`
    -> :func:`wobble_distance` per realization: each row consumes its own
    (master_seed, index)-derived stream and the per-element update order
    matches the scalar recursion.
    """
    n = grid.n
    normals = np.empty((count, n))
    phi0 = np.empty(count)
    for row in range(count):
        rng = generator_from_seed(stream_seed(master_seed, start + row))
        normals[row], phi0[row] = _envelope_draws(rng, n)

    rho = math.exp(-params.mu * grid.dt)
    innovation = params.sigma_v * math.sqrt(max(0.0, 1.0 - rho * rho))

    a = np.empty((count, n))
    a[:, 0] = params.sigma_v * normals[:, 0]
    for k in range(1, n):
        a[:, k] = rho * a[:, k - 1] + innovation * normals[:, k]

    # same op order as radial_velocity, so rows match scalar paths bitwise
    t = grid.times()
    velocity = a * np.cos(params.omega_v * t[None, :] + phi0[:, None])
    d = np.empty((count, n))
    d[:, 0] = 0.0
    np.cumsum(velocity[:, :-1] * grid.dt, axis=1, out=d[:, 1:])
    return d[:, probe_idx]
