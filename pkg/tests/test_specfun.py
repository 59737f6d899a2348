"""Bessel kernel accuracy against extended-precision oracles."""

import math

import mpmath as mp
import numpy as np
import pytest

from uavwobble.specfun import ScaledBesselResult, bessel_i0, exp_scaled_i0, log_i0e

mp.mp.dps = 50

# frozen extended-precision references (50-digit evaluation)
I0_OF_1 = 1.2660658777520083356
I0_OF_2_5 = 3.2898391440501230357
I0E_OF_1000 = 0.012617240455891256586


def series_oracle(x: float, terms: int = 50) -> mp.mpf:
    """Extended-precision ascending series, independent of the kernel."""
    t = mp.mpf(x) ** 2 / 4
    total = mp.mpf(1)
    term = mp.mpf(1)
    for k in range(1, terms + 1):
        term *= t / (k * k)
        total += term
    return total


def test_i0_at_zero_is_one():
    assert bessel_i0(0.0) == 1.0


def test_i0_series_value():
    assert bessel_i0(1.0) == pytest.approx(I0_OF_1, rel=1e-13)
    assert bessel_i0(2.5) == pytest.approx(I0_OF_2_5, rel=1e-13)


def test_i0_even():
    assert bessel_i0(-1.0) == bessel_i0(1.0)
    assert bessel_i0(-123.456) == bessel_i0(123.456)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_i0_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        bessel_i0(bad)


def test_i0_small_range_vs_series_oracle():
    # 50 extended-precision terms fully converge for |x| < 15
    for x in np.linspace(0.01, 14.99, 149):
        ref = series_oracle(float(x))
        rel = abs((mp.mpf(bessel_i0(float(x))) - ref) / ref)
        assert rel < 1e-12, f"x={x}: relative error {float(rel):.3e}"


def test_i0_large_range_vs_extended_precision():
    for x in np.geomspace(15.0, 700.0, 120):
        ref = mp.besseli(0, mp.mpf(float(x))) * mp.exp(-mp.mpf(float(x)))
        got = math.exp(log_i0e(float(x)))
        rel = abs((mp.mpf(got) - ref) / ref)
        assert rel < 1e-12, f"x={x}: relative error {float(rel):.3e}"


def test_i0_monotone_and_at_least_one():
    xs = np.linspace(0.0, 40.0, 400)
    values = [bessel_i0(float(x)) for x in xs]
    assert all(v >= 1.0 for v in values)
    assert all(b > a for a, b in zip(values, values[1:]))


def test_exp_scaled_identity_unit():
    res = exp_scaled_i0(0.0, 0.0)
    assert isinstance(res, ScaledBesselResult)
    assert res.value == 1.0
    assert res.log_value == 0.0


def test_exp_scaled_large_equal_arguments():
    res = exp_scaled_i0(1000.0, 1000.0)
    assert res.value == pytest.approx(I0E_OF_1000, rel=1e-12)
    # leading asymptotic behaviour ~ (2 pi x)^(-1/2)
    assert res.value == pytest.approx(1.0 / math.sqrt(2e3 * math.pi), rel=2e-4)


def test_exp_scaled_composes_with_series():
    res = exp_scaled_i0(2.0, 1.0)
    assert res.value == pytest.approx(math.exp(-2.0) * I0_OF_1, rel=1e-12)


def test_exp_scaled_matches_unscaled_product():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        x = float(rng.uniform(-5.0, 40.0))
        y = float(rng.uniform(-30.0, 30.0))
        res = exp_scaled_i0(x, y)
        assert res.value * math.exp(x) == pytest.approx(bessel_i0(y), rel=1e-10)


def test_exp_scaled_even_in_bessel_argument():
    for x, y in [(0.3, 4.0), (12.0, 7.5), (100.0, 60.0)]:
        assert exp_scaled_i0(x, y) == exp_scaled_i0(x, -y)


def test_exp_scaled_bounded_when_exponent_dominates():
    rng = np.random.default_rng(7)
    for _ in range(300):
        y = float(rng.uniform(-200.0, 200.0))
        x = abs(y) + float(rng.uniform(0.0, 50.0))
        res = exp_scaled_i0(x, y)
        assert res.log_value <= 0.0
        assert 0.0 < res.value <= 1.0


def test_exp_scaled_underflow_keeps_log():
    res = exp_scaled_i0(2000.0, 0.0)
    assert res.value == 0.0
    assert res.log_value == -2000.0


def test_exp_scaled_value_matches_log():
    for x, y in [(0.0, 0.0), (3.0, 1.0), (50.0, 49.0), (700.0, 650.0)]:
        res = exp_scaled_i0(x, y)
        assert res.value == math.exp(res.log_value)


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_exp_scaled_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        exp_scaled_i0(bad, 0.0)
    with pytest.raises(ValueError):
        exp_scaled_i0(0.0, bad)
