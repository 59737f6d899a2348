"""Doppler power spectral density from the temporal ACF.

The Doppler PSD is the Fourier transform of the channel temporal ACF
over time separation.  The closed-form ACF is real and even, so the
one-sided curve is extended to negative separations, optionally
windowed against truncation leakage, zero-padded for frequency
resolution, and transformed with an FFT scaled by the sample step so
the output approximates the continuous transform (units 1/Hz).

The transform length is kept odd so the frequency grid is exactly
symmetric about zero, and the output is symmetrized after the realness
check, making ``psd(f) == psd(-f)`` hold bit-for-bit.

With a rectangular window the truncated transform can go slightly
negative near sharp features; a Hann window trades resolution for
leakage and is the right choice for slowly decaying ACFs (free drift at
small velocity spread) and for spectral-moment computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .acf import AcfCurve

WindowTag = Literal["rect", "hann"]

#: Relative grid-uniformity tolerance for input separation grids.
_GRID_RTOL = 1e-9


@dataclass(frozen=True)
class DopplerSpectrum:
    """PSD on a symmetric Doppler-frequency grid (linear scale, 1/Hz)."""

    freq: np.ndarray
    psd: np.ndarray
    window: WindowTag
    t_max: float


def _acf_values(acf: AcfCurve) -> np.ndarray:
    if acf.analytic is not None:
        return np.asarray(acf.analytic, dtype=float)
    if acf.empirical is not None:
        # the underlying transform target is real; the imaginary part of
        # an empirical curve is Monte Carlo residue by construction
        return np.real(np.asarray(acf.empirical)).astype(float)
    raise ValueError("AcfCurve carries neither analytic nor empirical values")


def _uniform_step(delta_t: np.ndarray) -> float:
    if delta_t.size < 2:
        raise ValueError("need at least two separation samples")
    if delta_t[0] != 0.0:
        raise ValueError("separation grid must start at 0")
    steps = np.diff(delta_t)
    dt = float(steps[0])
    if dt <= 0.0 or np.any(np.abs(steps - dt) > _GRID_RTOL * dt):
        raise ValueError("separation grid must be uniform")
    return dt


def window_weights(window: WindowTag, n: int) -> np.ndarray:
    """One-sided lag-window weights w[0..n-1], w[0] = 1."""
    if window == "rect":
        return np.ones(n)
    if window == "hann":
        return 0.5 * (1.0 + np.cos(np.pi * np.arange(n) / (n - 1)))
    raise ValueError(f"unknown window {window!r}")


def doppler_psd(acf: AcfCurve, window: WindowTag = "rect", pad_factor: int = 1) -> DopplerSpectrum:
    """Transform an ACF sampled on [0, t_max] into a Doppler PSD.

    Uses the even extension ``C(-dt) = C(dt)``; ``pad_factor`` >= 1
    multiplies the transform length, refining the frequency grid to
    roughly ``1 / (pad_factor * 2 * t_max)``.
    """
    if pad_factor < 1:
        raise ValueError(f"pad_factor >= 1 required, got {pad_factor!r}")
    delta_t = np.asarray(acf.delta_t, dtype=float)
    dt = _uniform_step(delta_t)
    values = _acf_values(acf)
    m = values.size
    g = values * window_weights(window, m)

    # circularly even layout of the two-sided sequence; odd length keeps
    # the shifted frequency grid symmetric about 0
    length = 2 * pad_factor * m - 1
    s = np.zeros(length)
    s[:m] = g
    s[length - m + 1 :] = g[1:][::-1]

    spectrum = np.fft.fft(s) * dt
    max_imag = float(np.abs(spectrum.imag).max())
    if max_imag > 1e-10:
        raise AssertionError(
            f"even-extended transform produced imaginary residue {max_imag:.3e}"
        )
    psd = np.fft.fftshift(spectrum.real)
    freq = np.fft.fftshift(np.fft.fftfreq(length, d=dt))
    psd = 0.5 * (psd + psd[::-1])  # exact evenness
    return DopplerSpectrum(
        freq=freq, psd=psd, window=window, t_max=float(delta_t[-1])
    )


def rms_doppler_spread(spec: DopplerSpectrum) -> float:
    """Root of the normalized second spectral moment (Hz).

    Negative leakage bins are clipped before normalizing; with a Hann
    window they are at numerical-noise level anyway.
    """
    weights = np.maximum(spec.psd, 0.0)
    total = weights.sum()
    if total <= 0.0:
        raise ValueError("PSD has no positive mass")
    return math.sqrt(float((weights * spec.freq**2).sum() / total))
