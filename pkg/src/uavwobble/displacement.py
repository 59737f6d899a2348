"""Variance of the accumulated wobble displacement.

``sigma_d^2(dt)`` is the mean-square radial distance the UAV drifts over
a time separation ``dt``.  It is the single quantity that couples the
wobble process to the channel: the ACF exponent is
``0.5 * (omega_c / c)^2 * sigma_d^2``.

Three routes to the same number are kept deliberately separate:

* :func:`sigma_d2_exact` - the full closed form, with analytic limits
  for the degenerate regimes (exact zeros of ``mu`` / ``omega_v``)
  where the general expression would hit 0/0.
* :func:`sigma_d2_asymptotic` - the large-separation piecewise law,
  which keeps only the growth term of the exact form.
* :func:`sigma_d2_empirical` - an ensemble estimate from simulated
  trajectories, used to validate the other two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .montecarlo import McConfig, displacement_phase_moments
from .wobble import Regime, TimeGrid, WobbleParams, classify_regime, default_dt

FormulaTag = Literal["exact16", "asymptotic4", "empirical"]


@dataclass(frozen=True)
class SigmaD2Result:
    """Displacement variance (m^2) at one time separation."""

    value: float
    delta_t: float
    formula: FormulaTag


def _check_delta_t(delta_t: float) -> float:
    delta_t = float(delta_t)
    if not math.isfinite(delta_t) or delta_t < 0.0:
        raise ValueError(f"delta_t >= 0 required, got {delta_t!r}")
    return delta_t


def _drift_shape(z: float) -> float:
    """``z - 1 + exp(-z)`` for z >= 0, stable near zero (~ z^2/2)."""
    if z < 1e-3:
        # cancellation-free series; relative error < 3e-15 at the cutover
        return 0.5 * z * z * (1.0 - z / 3.0 + z * z / 12.0 - z**3 / 60.0)
    return max(0.0, z + math.expm1(-z))


def general_bracket(mu: float, omega_v: float, delta_t: float) -> float:
    """Shared numerator of the general-regime variance and ACF exponent.

    Equals ``(mu^2 + omega_v^2)^2 * sigma_d^2 / sigma_v^2``.  Mathematically
    nonnegative (it is a scaled variance), so rounding residue at tiny
    separations is clamped at zero.
    """
    if delta_t == 0.0:
        return 0.0
    rate2 = mu * mu + omega_v * omega_v
    decay = math.exp(-mu * delta_t)
    phase = omega_v * delta_t
    value = (
        mu * delta_t * rate2
        - 2.0 * mu * omega_v * math.sin(phase) * decay
        + (mu * mu - omega_v * omega_v) * math.cos(phase) * decay
        - mu * mu
        + omega_v * omega_v
    )
    return max(0.0, value)


def _exact_value(params: WobbleParams, delta_t: float) -> float:
    sv2 = params.sigma_v**2
    mu = params.mu
    om = params.omega_v
    regime = classify_regime(params)
    if regime is Regime.FREE_DRIFT:
        return 0.5 * sv2 * delta_t * delta_t
    if regime is Regime.CORRELATED_DRIFT:
        return sv2 * _drift_shape(mu * delta_t) / (mu * mu)
    if regime is Regime.PURE_VIBRATION:
        half_sin = math.sin(0.5 * om * delta_t)
        return 2.0 * sv2 * half_sin * half_sin / (om * om)
    rate2 = mu * mu + om * om
    return sv2 * general_bracket(mu, om, delta_t) / (rate2 * rate2)


def sigma_d2_exact(params: WobbleParams, delta_t: float) -> SigmaD2Result:
    """Exact displacement variance at separation ``delta_t``."""
    delta_t = _check_delta_t(delta_t)
    return SigmaD2Result(
        value=_exact_value(params, delta_t), delta_t=delta_t, formula="exact16"
    )


def sigma_d2_asymptotic(params: WobbleParams, delta_t: float) -> SigmaD2Result:
    """Large-separation displacement variance (piecewise by regime).

    For the drifting regimes this keeps only the term that grows with
    ``delta_t``; the pure-vibration case has no growth and the law is
    already exact there.
    """
    delta_t = _check_delta_t(delta_t)
    sv2 = params.sigma_v**2
    mu = params.mu
    om = params.omega_v
    regime = classify_regime(params)
    if regime is Regime.GENERAL:
        value = sv2 * mu * delta_t / (om * om + mu * mu)
    elif regime is Regime.FREE_DRIFT:
        value = 0.5 * sv2 * delta_t * delta_t
    elif regime is Regime.CORRELATED_DRIFT:
        value = sv2 * delta_t / mu
    else:
        half_sin = math.sin(0.5 * om * delta_t)
        value = 2.0 * sv2 * half_sin * half_sin / (om * om)
    return SigmaD2Result(value=value, delta_t=delta_t, formula="asymptotic4")


def sigma_d2_curve(
    params: WobbleParams, delta_ts: np.ndarray, formula: FormulaTag = "exact16"
) -> np.ndarray:
    """Closed-form variance evaluated on a grid of separations."""
    fn = sigma_d2_exact if formula == "exact16" else sigma_d2_asymptotic
    return np.array([fn(params, dt).value for dt in np.asarray(delta_ts, dtype=float)])


def sigma_d2_empirical_curve(
    params: WobbleParams,
    delta_ts: np.ndarray,
    mc: McConfig,
    workers: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Ensemble mean of d(delta_t)^2 with its standard error.

    Each realization is simulated once on an internally refined grid
    (step <= the default rule) whose samples land exactly on every
    requested separation; all separations then come from the same path,
    each with a fresh envelope and initial phase per realization.  The
    separations must share a uniform base step (any equally spaced or
    midpoint grid qualifies).
    """
    delta_ts = np.asarray(delta_ts, dtype=float)
    if delta_ts.size == 0:
        raise ValueError("delta_ts must be non-empty")
    if np.any(delta_ts < 0.0):
        raise ValueError("delta_t >= 0 required")
    if mc.n_realizations < 100:
        raise ValueError(
            f"n_realizations >= 100 required for empirical estimates, "
            f"got {mc.n_realizations}"
        )
    probe_idx, fine = _aligned_probe_grid(params, delta_ts)
    mean_d2, se_d2, _, _, _ = displacement_phase_moments(
        params, fine, mc, probe_idx, kappa=None, workers=workers
    )
    return mean_d2, se_d2


def _aligned_probe_grid(
    params: WobbleParams, delta_ts: np.ndarray
) -> tuple[np.ndarray, TimeGrid]:
    """Simulation grid whose samples hit every requested separation."""
    positive = delta_ts[delta_ts > 0]
    if positive.size == 0:
        return np.zeros(delta_ts.shape, dtype=np.intp), TimeGrid(dt=1.0, n=2)
    base = float(positive.min())
    ratios = delta_ts / base
    if np.any(np.abs(ratios - np.rint(ratios)) > 1e-6):
        raise ValueError(
            "separations must be integer multiples of the smallest "
            "positive separation (use an equally spaced grid)"
        )
    factor = max(1, math.ceil(base / default_dt(params)))
    dt = base / factor
    probe_idx = np.rint(ratios).astype(np.intp) * factor
    return probe_idx, TimeGrid(dt=dt, n=int(probe_idx.max()) + 1)


def sigma_d2_empirical(
    params: WobbleParams,
    delta_t: float,
    mc: McConfig,
    workers: int = 1,
) -> SigmaD2Result:
    """Monte Carlo displacement variance at a single separation."""
    delta_t = _check_delta_t(delta_t)
    values, _ = sigma_d2_empirical_curve(params, np.array([delta_t]), mc, workers)
    return SigmaD2Result(value=float(values[0]), delta_t=delta_t, formula="empirical")
