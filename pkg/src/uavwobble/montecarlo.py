"""Ensemble engine: seeded, order-independent Monte Carlo reductions.

Realizations are processed in fixed blocks of :data:`BLOCK` indices.
Each block's partial statistics are computed with a fixed summation
shape, and block partials are combined in index order, so the final
floating-point result is bit-identical whether blocks run serially or
on a process pool of any size.  ``BLOCK`` is therefore part of the
reproducibility contract and must not change between runs that are
expected to compare byte-for-byte.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .wobble import TimeGrid, WobbleParams, _displacement_block

#: Realizations per reduction block (fixed; see module docstring).
BLOCK = 512


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo run description: ensemble size and master seed."""

    n_realizations: int = 10_000
    master_seed: int = 1

    def __post_init__(self) -> None:
        if self.n_realizations < 1:
            raise ValueError(
                f"n_realizations >= 1 required, got {self.n_realizations!r}"
            )


def _block_starts(n_realizations: int) -> list[tuple[int, int]]:
    return [
        (start, min(BLOCK, n_realizations - start))
        for start in range(0, n_realizations, BLOCK)
    ]


def _phase_moment_block(args) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Partial sums over one block: d^2, d^4, e^{-j kappa d} and its |.|^2."""
    params, grid, master_seed, start, count, probe_idx, kappa = args
    d = _displacement_block(params, grid, master_seed, start, count, probe_idx)
    d2 = d * d
    phasor = np.exp(-1j * kappa * d) if kappa is not None else None
    sum_d2 = d2.sum(axis=0)
    sum_d4 = (d2 * d2).sum(axis=0)
    if phasor is None:
        z = np.zeros(len(probe_idx))
        return sum_d2, sum_d4, z.astype(complex), z
    sum_phasor = phasor.sum(axis=0)
    # |phasor| == 1, so the second moment of Re/Im comes from cos/sin^2;
    # track sum of squared real and imag parts for standard errors
    sum_sq = (phasor.real * phasor.real + 1j * phasor.imag * phasor.imag).sum(axis=0)
    return sum_d2, sum_d4, sum_phasor, sum_sq


def displacement_phase_moments(
    params: WobbleParams,
    grid: TimeGrid,
    mc: McConfig,
    probe_idx: np.ndarray,
    kappa: float | None = None,
    workers: int = 1,
):
    """Ensemble moments of displacement (and optionally its phasor).

    Returns ``(mean_d2, se_d2, mean_phasor, se_re, se_im)`` at the probe
    indices; the phasor entries are None when ``kappa`` is None.
    """
    probe_idx = np.asarray(probe_idx, dtype=np.intp)
    tasks = [
        (params, grid, mc.master_seed, start, count, probe_idx, kappa)
        for start, count in _block_starts(mc.n_realizations)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_phase_moment_block, tasks, chunksize=1))
    else:
        partials = [_phase_moment_block(task) for task in tasks]

    sum_d2 = partials[0][0].copy()
    sum_d4 = partials[0][1].copy()
    sum_phasor = partials[0][2].copy()
    sum_sq = partials[0][3].copy()
    for p in partials[1:]:
        sum_d2 += p[0]
        sum_d4 += p[1]
        sum_phasor += p[2]
        sum_sq += p[3]

    r = float(mc.n_realizations)
    mean_d2 = sum_d2 / r
    var_d2 = np.maximum(0.0, sum_d4 / r - mean_d2 * mean_d2)
    se_d2 = np.sqrt(var_d2 / r)
    if kappa is None:
        return mean_d2, se_d2, None, None, None
    mean_phasor = sum_phasor / r
    var_re = np.maximum(0.0, sum_sq.real / r - mean_phasor.real**2)
    var_im = np.maximum(0.0, sum_sq.imag / r - mean_phasor.imag**2)
    return mean_d2, se_d2, mean_phasor, np.sqrt(var_re / r), np.sqrt(var_im / r)


def refine_grid(grid: TimeGrid, dt_target: float) -> tuple[TimeGrid, np.ndarray]:
    """Subdivide ``grid`` so its step is <= ``dt_target``.

    Returns the fine grid and the fine-grid indices of the original
    sample points, so coarse probe times land exactly on simulated
    samples.
    """
    factor = max(1, math.ceil(grid.dt / dt_target))
    fine = TimeGrid(dt=grid.dt / factor, n=(grid.n - 1) * factor + 1, t0=grid.t0)
    return fine, np.arange(grid.n) * factor
