"""Doppler analysis of a hovering rotary-wing UAV mmWave ground link.

Simulates the millimetre-scale mechanical wobbling of a hovering UAV,
evaluates the closed-form temporal autocorrelation of the resulting
line-of-sight channel together with its Monte Carlo counterpart,
derives Doppler power spectral densities, and quantifies the bit error
probability penalty of transmitting on an outdated channel estimate.
"""

__version__ = "0.1.0"

from .acf import (
    AcfCurve,
    AcfTerms,
    CarrierParams,
    CirTrajectory,
    acf_closed_form,
    acf_closed_form_curve,
    acf_decay_horizon,
    acf_empirical,
    acf_terms,
    cir_realization,
)
from .bep import (
    AbepCurve,
    ModulationSpec,
    abep_vs_time,
    awgn_baseline,
    conditional_bep,
    uniform_phase_floor,
)
from .displacement import (
    SigmaD2Result,
    sigma_d2_asymptotic,
    sigma_d2_curve,
    sigma_d2_empirical,
    sigma_d2_empirical_curve,
    sigma_d2_exact,
)
from .figures import FIGURES, TABLE_I, reproduce_figure
from .montecarlo import McConfig
from .psd import DopplerSpectrum, doppler_psd, rms_doppler_spread
from .scenario import (
    RunReport,
    Scenario,
    ScenarioError,
    load_scenario,
    run_scenario,
)
from .specfun import ScaledBesselResult, bessel_i0, exp_scaled_i0
from .wobble import (
    DisplacementTrajectory,
    EnvelopeTrajectory,
    Regime,
    TimeGrid,
    VelocityTrajectory,
    WobbleParams,
    classify_regime,
    default_dt,
    radial_velocity,
    sample_envelope,
    wobble_distance,
)

__all__ = [
    "AbepCurve",
    "AcfCurve",
    "AcfTerms",
    "CarrierParams",
    "CirTrajectory",
    "DisplacementTrajectory",
    "DopplerSpectrum",
    "EnvelopeTrajectory",
    "FIGURES",
    "McConfig",
    "ModulationSpec",
    "Regime",
    "RunReport",
    "ScaledBesselResult",
    "Scenario",
    "ScenarioError",
    "SigmaD2Result",
    "TABLE_I",
    "TimeGrid",
    "VelocityTrajectory",
    "WobbleParams",
    "abep_vs_time",
    "acf_closed_form",
    "acf_closed_form_curve",
    "acf_decay_horizon",
    "acf_empirical",
    "acf_terms",
    "awgn_baseline",
    "bessel_i0",
    "cir_realization",
    "classify_regime",
    "conditional_bep",
    "default_dt",
    "doppler_psd",
    "exp_scaled_i0",
    "load_scenario",
    "radial_velocity",
    "reproduce_figure",
    "rms_doppler_spread",
    "run_scenario",
    "sample_envelope",
    "sigma_d2_asymptotic",
    "sigma_d2_curve",
    "sigma_d2_empirical",
    "sigma_d2_empirical_curve",
    "sigma_d2_exact",
    "uniform_phase_floor",
    "wobble_distance",
]
