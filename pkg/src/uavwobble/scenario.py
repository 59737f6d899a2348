"""Scenario files, product pipelines, and reproducible run output.

A scenario is a flat ``key = value`` text file selecting the wobble and
carrier parameters, the Monte Carlo budget, and which products to
compute.  Running a scenario writes, per product, a delimited data file
(CSV with 17-significant-digit floats, or JSON), a rendered PNG, and a
single JSON manifest recording parameters, seed, build identity and
wall time.  For a fixed (scenario, seed) the data files are
byte-identical across reruns and across worker counts.

Recognized keys::

    sigma_v, mu, omega_v          # wobble process (required: sigma_v)
    f_c_hz, c                     # carrier (defaults: 28e9, vacuum light speed)
    dt, t_max                     # grid overrides (defaults per product)
    n_realizations, seed          # Monte Carlo (defaults: 10000, 1)
    products                      # comma list of sigma_d2 | acf | psd | abep
    window, pad_factor            # psd options (rect|hann, >=1)
    scheme, m_order, snr_db       # abep modulation (psk|qam, order, dB)
"""

from __future__ import annotations

import json
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .acf import (
    SPEED_OF_LIGHT,
    AcfCurve,
    CarrierParams,
    acf_closed_form_curve,
    acf_decay_horizon,
    acf_empirical,
)
from .bep import AbepCurve, ModulationSpec, abep_vs_time
from .displacement import sigma_d2_curve, sigma_d2_empirical_curve
from .montecarlo import McConfig
from .psd import WindowTag, doppler_psd
from .wobble import TimeGrid, WobbleParams, default_dt
from .plots import render_curves, write_plot_script

PRODUCTS = ("sigma_d2", "acf", "psd", "abep")

_DEFAULT_FC_HZ = 28e9
_DEFAULT_ACF_T_MAX = 0.1
_DEFAULT_ABEP_T_MAX = 1.0
_CURVE_POINTS = 51  # sigma_d2 / abep reporting grids (includes t = 0)


class ScenarioError(ValueError):
    """Scenario file rejected; message carries line/key context."""


@dataclass(frozen=True)
class Scenario:
    """Validated run description."""

    params: WobbleParams
    carrier: CarrierParams
    mc: McConfig
    products: tuple[str, ...] = ("acf",)
    dt: float | None = None
    t_max: float | None = None
    window: WindowTag = "rect"
    pad_factor: int = 4
    modulation: ModulationSpec = field(
        default_factory=lambda: ModulationSpec("psk", 4, 20.0)
    )

    def acf_grid(self) -> TimeGrid:
        step = self.dt if self.dt is not None else default_dt(self.params)
        t_max = self.t_max if self.t_max is not None else _DEFAULT_ACF_T_MAX
        return TimeGrid(dt=step, n=max(2, int(round(t_max / step)) + 1))

    def psd_grid(self) -> TimeGrid:
        step = self.dt if self.dt is not None else default_dt(self.params)
        t_max = (
            self.t_max
            if self.t_max is not None
            else acf_decay_horizon(self.params, self.carrier)
        )
        return TimeGrid(dt=step, n=max(2, int(round(t_max / step)) + 1))

    def report_times(self, t_max_default: float) -> np.ndarray:
        t_max = self.t_max if self.t_max is not None else t_max_default
        return np.linspace(0.0, t_max, _CURVE_POINTS)


@dataclass(frozen=True)
class ProductResult:
    """One computed product: ordered columns plus manifest metadata."""

    product: str
    columns: dict[str, np.ndarray]
    meta: dict


@dataclass(frozen=True)
class RunReport:
    out_dir: Path
    files: tuple[str, ...]
    manifest_path: Path
    wall_time_s: float


# ---------------------------------------------------------------------------
# scenario parsing


_FLOAT_KEYS = {"sigma_v", "mu", "omega_v", "f_c_hz", "c", "dt", "t_max", "snr_db"}
_INT_KEYS = {"n_realizations", "seed", "pad_factor", "m_order"}
_STR_KEYS = {"window", "scheme"}
_LIST_KEYS = {"products"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _LIST_KEYS


def _parse_lines(text: str, origin: str) -> dict[str, object]:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"{origin}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ScenarioError(f"{origin}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ScenarioError(f"{origin}:{lineno}: duplicate key {key!r}")
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _INT_KEYS:
                values[key] = int(value)
            elif key in _LIST_KEYS:
                items = [v.strip() for v in value.split(",") if v.strip()]
                values[key] = tuple(items)
            else:
                values[key] = value
        except ValueError as exc:
            raise ScenarioError(f"{origin}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def scenario_from_mapping(values: dict[str, object], origin: str = "<scenario>") -> Scenario:
    """Build and validate a Scenario from parsed key/value pairs."""
    if "sigma_v" not in values:
        raise ScenarioError(f"{origin}: missing required key 'sigma_v'")
    try:
        params = WobbleParams(
            sigma_v=float(values["sigma_v"]),
            mu=float(values.get("mu", 0.0)),
            omega_v=float(values.get("omega_v", 0.0)),
        )
        carrier = CarrierParams.from_frequency_hz(
            float(values.get("f_c_hz", _DEFAULT_FC_HZ)),
            c=float(values.get("c", SPEED_OF_LIGHT)),
        )
        mc = McConfig(
            n_realizations=int(values.get("n_realizations", 10_000)),
            master_seed=int(values.get("seed", 1)),
        )
        products = tuple(values.get("products", ("acf",)))
        for product in products:
            if product not in PRODUCTS:
                raise ValueError(
                    f"unknown product {product!r}; expected one of {PRODUCTS}"
                )
        window = str(values.get("window", "rect"))
        if window not in ("rect", "hann"):
            raise ValueError(f"window must be 'rect' or 'hann', got {window!r}")
        pad_factor = int(values.get("pad_factor", 4))
        if pad_factor < 1:
            raise ValueError(f"pad_factor >= 1 required, got {pad_factor}")
        modulation = ModulationSpec(
            scheme=str(values.get("scheme", "psk")),
            m=int(values.get("m_order", 4)),
            snr_db=float(values.get("snr_db", 20.0)),
        )
        dt = values.get("dt")
        t_max = values.get("t_max")
        if dt is not None and not (float(dt) > 0.0):
            raise ValueError(f"dt > 0 required, got {dt}")
        if t_max is not None and not (float(t_max) > 0.0):
            raise ValueError(f"t_max > 0 required, got {t_max}")
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"{origin}: {exc}") from exc
    return Scenario(
        params=params,
        carrier=carrier,
        mc=mc,
        products=products,
        dt=None if dt is None else float(dt),
        t_max=None if t_max is None else float(t_max),
        window=window,  # type: ignore[arg-type]
        pad_factor=pad_factor,
        modulation=modulation,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Parse and validate a scenario file."""
    path = Path(path)
    if not path.exists():
        raise ScenarioError(f"scenario file not found: {path}")
    return scenario_from_mapping(_parse_lines(path.read_text(), str(path)), str(path))


# ---------------------------------------------------------------------------
# product pipelines


def _sigma_d2_product(s: Scenario, workers: int) -> ProductResult:
    delta_t = s.report_times(_DEFAULT_ACF_T_MAX)
    exact = sigma_d2_curve(s.params, delta_t, "exact16")
    asym = sigma_d2_curve(s.params, delta_t, "asymptotic4")
    empirical, _ = sigma_d2_empirical_curve(s.params, delta_t, s.mc, workers)
    return ProductResult(
        product="sigma_d2",
        columns={
            "delta_t": delta_t,
            "sigma_d2_exact": exact,
            "sigma_d2_asymptotic": asym,
            "sigma_d2_empirical": empirical,
        },
        meta={"points": int(delta_t.size)},
    )


def _acf_product(s: Scenario, workers: int) -> ProductResult:
    grid = s.acf_grid()
    analytic = acf_closed_form_curve(s.params, s.carrier, grid.dt * np.arange(grid.n))
    curve = acf_empirical(s.params, s.carrier, grid, s.mc, workers)
    return ProductResult(
        product="acf",
        columns={
            "delta_t": curve.delta_t,
            "acf_analytic": analytic,
            "acf_empirical_re": curve.empirical.real,
            "acf_empirical_im": curve.empirical.imag,
        },
        meta={"dt": grid.dt, "t_max": grid.t_max},
    )


def _psd_product(s: Scenario, workers: int) -> ProductResult:
    grid = s.psd_grid()
    delta_t = grid.dt * np.arange(grid.n)
    analytic = acf_closed_form_curve(s.params, s.carrier, delta_t)
    spectrum = doppler_psd(
        AcfCurve(delta_t=delta_t, analytic=analytic),
        window=s.window,
        pad_factor=s.pad_factor,
    )
    return ProductResult(
        product="psd",
        columns={"doppler_hz": spectrum.freq, "psd": spectrum.psd},
        meta={"window": s.window, "pad_factor": s.pad_factor, "t_max": spectrum.t_max},
    )


def _abep_product(s: Scenario, workers: int) -> ProductResult:
    times = s.report_times(_DEFAULT_ABEP_T_MAX)
    grid = TimeGrid(dt=float(times[1] - times[0]), n=times.size)
    curve = abep_vs_time(s.params, s.carrier, s.modulation, grid, s.mc, workers)
    return ProductResult(
        product="abep",
        columns={"t": curve.t, "abep": curve.abep, "abep_stderr": curve.stderr},
        meta={
            "scheme": s.modulation.scheme,
            "m_order": s.modulation.m,
            "snr_db": s.modulation.snr_db,
        },
    )


_PIPELINES = {
    "sigma_d2": _sigma_d2_product,
    "acf": _acf_product,
    "psd": _psd_product,
    "abep": _abep_product,
}


# ---------------------------------------------------------------------------
# output writing


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path: Path, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[n]) for n in names]
    lines = [",".join(names)]
    for row in zip(*arrays):
        lines.append(",".join(format_float(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def write_json_columns(path: Path, columns: dict[str, np.ndarray]) -> None:
    payload = {name: [float(v) for v in np.asarray(col)] for name, col in columns.items()}
    path.write_text(json.dumps({"columns": payload}, indent=2, sort_keys=True) + "\n")


def build_describe() -> str:
    """Best-effort build identity: git description or package version."""
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except OSError:
        pass
    return f"uavwobble-{__version__}"


def _scenario_manifest(s: Scenario) -> dict:
    return {
        "params": {
            "sigma_v": s.params.sigma_v,
            "mu": s.params.mu,
            "omega_v": s.params.omega_v,
        },
        "carrier": {"omega_c": s.carrier.omega_c, "c": s.carrier.c},
        "mc": {"n_realizations": s.mc.n_realizations, "seed": s.mc.master_seed},
        "dt": s.dt,
        "t_max": s.t_max,
        "window": s.window,
        "pad_factor": s.pad_factor,
        "modulation": {
            "scheme": s.modulation.scheme,
            "m_order": s.modulation.m,
            "snr_db": s.modulation.snr_db,
        },
        "products": list(s.products),
    }


_PLOT_AXES = {
    "sigma_d2": ("time separation (s)", "displacement variance (m$^2$)"),
    "acf": ("time separation (s)", "temporal ACF"),
    "psd": ("Doppler frequency (Hz)", "PSD (1/Hz)"),
    "abep": ("time since estimation (s)", "average bit error probability"),
}


def _plot_series(result: ProductResult) -> tuple[dict[str, tuple[np.ndarray, np.ndarray]], bool]:
    names = list(result.columns)
    x = result.columns[names[0]]
    series = {
        name: (x, result.columns[name])
        for name in names[1:]
        if not name.endswith("_stderr")
    }
    logy = result.product == "abep"
    return series, logy


def run_scenario(
    s: Scenario,
    out_dir: str | Path,
    workers: int = 1,
    fmt: str = "csv",
    stem: str = "scenario",
) -> RunReport:
    """Execute every requested product and write data, figure, manifest."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    files: list[str] = []
    product_meta: dict[str, dict] = {}
    for product in s.products:
        result = _PIPELINES[product](s, workers)
        data_name = f"{stem}_{product}.{fmt}"
        data_path = out / data_name
        if fmt == "csv":
            write_csv(data_path, result.columns)
        else:
            write_json_columns(data_path, result.columns)
        files.append(data_name)

        xlabel, ylabel = _PLOT_AXES[product]
        series, logy = _plot_series(result)
        png_name = f"{stem}_{product}.png"
        render_curves(out / png_name, series, xlabel, ylabel, logy=logy)
        files.append(png_name)

        script_name = f"{stem}_{product}_plot.py"
        write_plot_script(out / script_name, [data_name], xlabel, ylabel, logy=logy)
        files.append(script_name)
        product_meta[product] = result.meta

    wall = time.monotonic() - started
    manifest = {
        "scenario": _scenario_manifest(s),
        "product_meta": product_meta,
        "files": files,
        "git_describe": build_describe(),
        "package_version": __version__,
        "wall_time_s": wall,
    }
    manifest_path = out / f"{stem}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return RunReport(
        out_dir=out,
        files=tuple(files),
        manifest_path=manifest_path,
        wall_time_s=wall,
    )
