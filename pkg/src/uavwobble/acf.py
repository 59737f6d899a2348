"""Temporal autocorrelation of the wobbling line-of-sight channel.

The channel impulse response of the hovering link is a pure phase
rotation driven by the radial wobble displacement,

    h(t) = h0 * exp(j * (omega_c / c) * d(t)),

so the normalized temporal ACF ``C(dt) = E[h(t) h*(t+dt)] / |h0|^2``
depends only on the statistics of the displacement increment.  Carrying
the expectation over the Gaussian envelope and the uniform initial
phase through the characteristic function yields the closed form

    C(dt) = exp(-X(dt)) * I0(Y(dt))

with ``X = 0.5 * (omega_c/c)^2 * sigma_d^2(dt)`` and a Bessel argument
``Y`` produced by the residual-phase average (``E[exp(a cos p)] over
uniform p = I0(a)``).  ``X >= |Y|`` holds on the whole parameter domain
(the exponent of a characteristic function cannot exceed 0), which is
what keeps ``C`` in (0, 1].

In the degenerate regimes (``mu`` and/or ``omega_v`` exactly zero) the
general expressions hit 0/0 and the analytic limits are used instead;
there ``Y`` collapses onto ``X``.

The empirical counterpart fixes the estimation instant at t = 0 and
ensemble-averages ``exp(-j kappa d(dt))`` over independent
realizations, each with a fresh envelope and initial phase: the
initial-phase randomization is what makes the simulated process
stationary in the same sense the closed form assumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .displacement import _exact_value, general_bracket
from .montecarlo import McConfig, displacement_phase_moments
from .specfun import exp_scaled_i0
from .wobble import (
    DisplacementTrajectory,
    Regime,
    TimeGrid,
    WobbleParams,
    classify_regime,
    default_dt,
)

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class CarrierParams:
    """Carrier angular frequency (rad/s) and propagation speed (m/s)."""

    omega_c: float
    c: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega_c) and self.omega_c > 0.0):
            raise ValueError(f"omega_c > 0 required, got {self.omega_c!r}")
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise ValueError(f"c > 0 required, got {self.c!r}")

    @classmethod
    def from_frequency_hz(cls, f_c_hz: float, c: float = SPEED_OF_LIGHT) -> CarrierParams:
        return cls(omega_c=2.0 * math.pi * f_c_hz, c=c)

    @property
    def kappa(self) -> float:
        """Phase accumulated per metre of radial displacement (rad/m)."""
        return self.omega_c / self.c


@dataclass(frozen=True)
class CirTrajectory:
    """Sampled channel impulse response; |h[n]| = |h0| for all n."""

    grid: TimeGrid
    h: np.ndarray
    h0: complex


@dataclass(frozen=True)
class AcfCurve:
    """ACF values on a separation grid.

    ``analytic`` holds the (real) closed form, ``empirical`` the complex
    ensemble average; either may be absent.  ``stderr_re``/``stderr_im``
    are per-lag Monte Carlo standard errors of the empirical parts.
    """

    delta_t: np.ndarray
    analytic: np.ndarray | None = None
    empirical: np.ndarray | None = None
    n_realizations: int = 0
    stderr_re: np.ndarray | None = None
    stderr_im: np.ndarray | None = None


@dataclass(frozen=True)
class AcfTerms:
    """Arguments of the closed form: C = exp(-exp_arg) * I0(bessel_arg)."""

    exp_arg: float
    bessel_arg: float


def _check_delta_t(delta_t: float) -> float:
    delta_t = float(delta_t)
    if not math.isfinite(delta_t) or delta_t < 0.0:
        raise ValueError(f"delta_t >= 0 required, got {delta_t!r}")
    return delta_t


def acf_terms(params: WobbleParams, carrier: CarrierParams, delta_t: float) -> AcfTerms:
    """Exponent and Bessel arguments of the closed-form ACF.

    Both vanish at ``delta_t = 0`` (returned exactly, since the general
    expressions only cancel to rounding there).
    """
    delta_t = _check_delta_t(delta_t)
    if delta_t == 0.0:
        return AcfTerms(exp_arg=0.0, bessel_arg=0.0)
    half_kappa2_sv2 = 0.5 * params.sigma_v**2 * carrier.kappa**2
    regime = classify_regime(params)
    if regime is not Regime.GENERAL:
        # degenerate regimes: Bessel argument equals the exponent, and
        # the exponent is the scaled displacement variance
        x = half_kappa2_sv2 * _exact_value(params, delta_t) / params.sigma_v**2
        return AcfTerms(exp_arg=x, bessel_arg=x)
    mu = params.mu
    om = params.omega_v
    rate2 = mu * mu + om * om
    x = half_kappa2_sv2 * general_bracket(mu, om, delta_t) / (rate2 * rate2)
    decay = math.exp(-mu * delta_t)
    phase = om * delta_t
    g = mu * math.sin(phase) - om * math.cos(phase) + om * decay
    y = half_kappa2_sv2 * g / (rate2 * om)
    return AcfTerms(exp_arg=x, bessel_arg=y)


def acf_closed_form(params: WobbleParams, carrier: CarrierParams, delta_t: float) -> float:
    """Closed-form channel temporal ACF, a real number in (0, 1]."""
    terms = acf_terms(params, carrier, delta_t)
    return exp_scaled_i0(terms.exp_arg, terms.bessel_arg).value


def acf_closed_form_curve(
    params: WobbleParams, carrier: CarrierParams, delta_ts: np.ndarray
) -> np.ndarray:
    """Closed form evaluated on a separation grid."""
    return np.array(
        [acf_closed_form(params, carrier, dt) for dt in np.asarray(delta_ts, dtype=float)]
    )


def cir_realization(
    disp: DisplacementTrajectory, carrier: CarrierParams, h0: complex
) -> CirTrajectory:
    """Channel impulse response along one displacement path."""
    h = h0 * np.exp(1j * carrier.kappa * disp.samples)
    return CirTrajectory(grid=disp.grid, h=h, h0=h0)


def acf_empirical(
    params: WobbleParams,
    carrier: CarrierParams,
    grid: TimeGrid,
    mc: McConfig,
    workers: int = 1,
) -> AcfCurve:
    """Monte Carlo ACF on ``delta_t[k] = k * grid.dt``.

    Averages ``exp(-j kappa d_r(delta_t))`` over independent
    realizations; the closed form is real, so the imaginary part of the
    result is a zero-mean residual whose size checks the ensemble.
    """
    if mc.n_realizations < 100:
        raise ValueError(
            f"n_realizations >= 100 required for empirical estimates, "
            f"got {mc.n_realizations}"
        )
    probe_idx = np.arange(grid.n)
    _, _, mean_phasor, se_re, se_im = displacement_phase_moments(
        params, grid, mc, probe_idx, kappa=carrier.kappa, workers=workers
    )
    return AcfCurve(
        delta_t=grid.dt * probe_idx,
        empirical=mean_phasor,
        n_realizations=mc.n_realizations,
        stderr_re=se_re,
        stderr_im=se_im,
    )


def acf_decay_horizon(
    params: WobbleParams,
    carrier: CarrierParams,
    threshold: float = 1e-3,
    cap: float = 1.0,
) -> float:
    """First grid time where the closed form drops below ``threshold``.

    Capped at ``cap`` seconds: slowly decaying (or periodic) regimes
    never cross the threshold and the transform horizon must stay
    bounded.  Scanned at the default simulation step.
    """
    dt = default_dt(params)
    t = dt
    while t < cap:
        if acf_closed_form(params, carrier, t) < threshold:
            return t
        t += dt
    return cap
