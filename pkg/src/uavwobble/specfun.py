"""Modified Bessel function kernels for the channel autocorrelation.

The closed-form temporal ACF of the wobbling channel has the shape
``exp(-X) * I0(Y)`` where ``I0`` is the modified Bessel function of the
first kind, order zero.  At 28 GHz the arguments X and Y grow linearly
with the time separation and ``I0`` alone overflows double precision
(``I0(710)`` > 1e306), so every evaluation on the ACF path goes through
the jointly scaled form :func:`exp_scaled_i0`, which works in log space
and never materialises an unscaled ``I0``.

The kernel is self-contained on purpose: the ACF correctness budget is
1e-12 relative and we do not want it to float with whichever linear
algebra stack happens to be installed.

Evaluation strategy
-------------------
* ``|x| < 15``: ascending power series ``sum_k (x/2)^(2k) / (k!)^2``.
  All terms are positive, so there is no cancellation; the series is
  summed until it stops changing the total.
* ``|x| >= 15``: asymptotic expansion of the scaled function
  ``e^{-x} I0(x) ~ (2 pi x)^{-1/2} * sum_k u_k / x^k`` with
  ``u_k = ((2k-1)!!)^2 / (k! 8^k)``, truncated at the smallest term,
  plus the exponentially small reflection term ``e^{-2x}`` of the same
  expansion, which matters right at the switchover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SERIES_ASYMPTOTIC_SPLIT = 15.0
_MAX_SERIES_TERMS = 200
_MAX_ASYMPTOTIC_TERMS = 40


@dataclass(frozen=True)
class ScaledBesselResult:
    """Jointly scaled Bessel evaluation ``e^{-X} I0(Y)``.

    ``value = exp(log_value)`` whenever it is representable; for very
    large ``X - |Y|`` the value underflows to 0.0 while ``log_value``
    stays finite and usable.
    """

    log_value: float
    value: float


def _require_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def _i0_series(x: float) -> float:
    # Ascending series; valid for any x but used only for |x| < 15.
    t = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, _MAX_SERIES_TERMS + 1):
        term *= t / (k * k)
        new_total = total + term
        if new_total == total:
            break
        total = new_total
    return total


def _i0e_asymptotic(x: float) -> float:
    # Scaled e^{-x} I0(x) for x >= 15.  Terms of the divergent expansion
    # are added while they keep shrinking (optimal truncation); the
    # alternating-sign reflection series carries the e^{-2x} tail.
    inv_x = 1.0 / x
    term = 1.0
    s_plus = 1.0
    s_minus = 1.0
    sign = 1.0
    for k in range(1, _MAX_ASYMPTOTIC_TERMS + 1):
        odd = 2.0 * k - 1.0
        next_term = term * odd * odd * inv_x / (8.0 * k)
        if next_term >= term:
            break
        term = next_term
        sign = -sign
        s_plus += term
        s_minus += sign * term
    reflection = math.exp(-2.0 * x) * s_minus
    return (s_plus + reflection) / math.sqrt(2.0 * math.pi * x)


def log_i0e(x: float) -> float:
    """Return ``log(e^{-|x|} I0(x))``, always finite and <= 0."""
    x = abs(_require_finite("x", x))
    if x < _SERIES_ASYMPTOTIC_SPLIT:
        return math.log(_i0_series(x)) - x
    return math.log(_i0e_asymptotic(x))


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero.

    Even in ``x``; overflows to ``inf`` for ``|x|`` above ~709 + log
    corrections, which is the honest IEEE answer.  Intended for testing
    and for small arguments; production ACF code uses
    :func:`exp_scaled_i0`.
    """
    x = abs(_require_finite("x", x))
    if x < _SERIES_ASYMPTOTIC_SPLIT:
        return _i0_series(x)
    log_val = x + math.log(_i0e_asymptotic(x))
    if log_val > 709.0:
        return math.inf
    return math.exp(log_val)


def exp_scaled_i0(x_exp: float, y_bessel: float) -> ScaledBesselResult:
    """Evaluate ``e^{-X} I0(Y)`` without forming ``I0`` unscaled.

    ``log_value = -X + |Y| + log(e^{-|Y|} I0(Y))``; the last two terms
    are computed together so the result is finite for any finite inputs.
    ``I0`` is even, so the sign of Y is irrelevant.
    """
    x_exp = _require_finite("X", x_exp)
    y_bessel = _require_finite("Y", y_bessel)
    y = abs(y_bessel)
    log_value = -x_exp + y + log_i0e(y)
    if log_value > 709.0:
        value = math.inf
    elif log_value < -746.0:
        value = 0.0
    else:
        value = math.exp(log_value)
    return ScaledBesselResult(log_value=log_value, value=value)
