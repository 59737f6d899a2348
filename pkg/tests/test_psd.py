"""Doppler PSD: transform conventions, symmetry, qualitative shape."""

import math

import numpy as np
import pytest

from uavwobble.acf import AcfCurve, CarrierParams, acf_closed_form_curve
from uavwobble.psd import doppler_psd, rms_doppler_spread, window_weights
from uavwobble.wobble import WobbleParams, default_dt

CARRIER = CarrierParams.from_frequency_hz(28e9)
OMEGA_20PI = 20 * math.pi


def analytic_curve(params, t_max, dt=None):
    step = default_dt(params) if dt is None else dt
    delta_t = step * np.arange(int(round(t_max / step)) + 1)
    return AcfCurve(delta_t=delta_t, analytic=acf_closed_form_curve(params, CARRIER, delta_t))


def strong_general():
    sigma_v = 0.01 * math.sqrt((OMEGA_20PI**2 + 900.0) / 30.0)
    return WobbleParams(sigma_v, 30.0, OMEGA_20PI)


def secondary_maxima(spec, min_rel=0.002):
    """|f| of local maxima above a relative floor, excluding f = 0."""
    psd = spec.psd
    interior = (psd[1:-1] > psd[:-2]) & (psd[1:-1] > psd[2:])
    idx = np.where(interior)[0] + 1
    idx = idx[np.abs(spec.freq[idx]) > 0.0]
    idx = idx[psd[idx] >= min_rel * psd.max()]
    return np.sort(np.abs(spec.freq[idx]))


def test_constant_acf_concentrates_at_zero():
    delta_t = 1e-3 * np.arange(1001)
    spec = doppler_psd(AcfCurve(delta_t=delta_t, analytic=np.ones(1001)), "rect", 2)
    assert spec.freq[np.argmax(spec.psd)] == 0.0
    df = spec.freq[1] - spec.freq[0]
    assert float(spec.psd.sum() * df) == pytest.approx(1.0, abs=1e-12)


def test_symmetry_is_exact():
    spec = doppler_psd(analytic_curve(strong_general(), 0.5), "rect", 3)
    assert np.array_equal(spec.psd, spec.psd[::-1])
    assert np.array_equal(spec.freq, -spec.freq[::-1])


def test_normalization_with_rect_window():
    spec = doppler_psd(analytic_curve(strong_general(), 0.5), "rect", 1)
    df = spec.freq[1] - spec.freq[0]
    assert float(spec.psd.sum() * df) == pytest.approx(1.0, abs=1e-12)


def test_window_weights():
    rect = window_weights("rect", 5)
    assert np.array_equal(rect, np.ones(5))
    hann = window_weights("hann", 5)
    assert hann[0] == 1.0
    assert hann[-1] == pytest.approx(0.0, abs=1e-15)
    assert np.all(np.diff(hann) < 0)
    with pytest.raises(ValueError):
        window_weights("hamming", 5)


def test_grid_validation():
    good = 1e-3 * np.arange(100)
    values = np.ones(100)
    with pytest.raises(ValueError):
        doppler_psd(AcfCurve(delta_t=good + 1e-3, analytic=values))
    bad = good.copy()
    bad[50] += 3e-4
    with pytest.raises(ValueError):
        doppler_psd(AcfCurve(delta_t=bad, analytic=values))
    with pytest.raises(ValueError):
        doppler_psd(AcfCurve(delta_t=good, analytic=values), pad_factor=0)
    with pytest.raises(ValueError):
        doppler_psd(AcfCurve(delta_t=good))  # no values at all


def test_near_nonnegative_rect_and_hann():
    curve = analytic_curve(strong_general(), 0.6)
    rect = doppler_psd(curve, "rect", 2)
    assert rect.psd.min() >= -1e-3 * rect.psd.max()
    hann = doppler_psd(curve, "hann", 2)
    assert hann.psd.min() >= -1e-6 * hann.psd.max()


def test_empirical_real_part_accepted():
    delta_t = 1e-3 * np.arange(200)
    values = np.exp(-10 * delta_t) + 0.001j * np.ones(200)
    spec = doppler_psd(AcfCurve(delta_t=delta_t, empirical=values), "hann", 2)
    assert np.isfinite(spec.psd).all()


def test_spread_grows_with_envelope_spread():
    spreads = []
    for scale in (0.001, 0.005, 0.01):
        params = WobbleParams(scale * math.sqrt(2.0), 0.0, 0.0)
        spec = doppler_psd(analytic_curve(params, 1.0), "hann", 2)
        spreads.append(rms_doppler_spread(spec))
    assert spreads[0] < spreads[1] < spreads[2]


def test_vibration_bulge_moves_out_when_rate_doubles():
    # Hann window: rectangular truncation ripple (~2% of peak here)
    # would bury the ~1% vibration bulge
    positions = []
    for omega_v in (200 * math.pi, 400 * math.pi):
        sigma_v = 0.005 * math.sqrt((omega_v**2 + 900.0) / 30.0)
        params = WobbleParams(sigma_v, 30.0, omega_v)
        spec = doppler_psd(analytic_curve(params, 1.0), "hann", 2)
        bulges = secondary_maxima(spec)
        assert bulges.size > 0, f"no side bulge found for omega_v={omega_v}"
        positions.append(bulges[0])
    assert positions[1] > positions[0]
    # bulge sits near the vibration frequency
    assert positions[0] == pytest.approx(100.0, abs=5.0)
    assert positions[1] == pytest.approx(200.0, abs=5.0)