"""
Simulator for whispering-gallery-mode sensing with classical light and
entangled photon pairs.

The package models an all-pass ring resonator probed three ways: direct
transmission of a single waveguide, a Mach-Zehnder interferometer with the
ring in one arm, and the same interferometer fed with an energy-entangled
photon pair detected in coincidence.  It provides closed-form spectra,
input-linewidth convolution, operating-point/dynamic-range analysis, and a
Monte Carlo noise model that converts photon shot noise and resonance
jitter into a 3-sigma readout uncertainty.
"""

from .noise import (
    DEFAULT_SEED,
    NoiseResult,
    NoiseRunConfig,
    dynamic_range_exclusion,
    simulate_case,
    snr_enhancement,
    sweep_coupling_map,
    sweep_linewidth,
    sweep_photon_number,
)
from .resonator import (
    CouplingRegime,
    Detuning,
    MidStateAmplitudes,
    OutputStateAmplitudes,
    ResonatorConfig,
    classical_wgm_intensity,
    coincidence_probability,
    linewidth_and_q,
    mid_state_amplitudes,
    mid_state_norm,
    mzi_output_difference,
    mzi_output_intensities,
    noise_norms,
    normalization_closure,
    output_state_amplitudes,
    output_state_norm,
    pair_amplitude_ratio,
    pair_normalization,
    theta_per_linewidth,
    transmission,
)
from .spectra import (
    DEFAULT_GRID_POINTS,
    DEFAULT_GRID_SPAN,
    MAIN_CASES,
    FlatSpectrumError,
    GridResolutionError,
    MeasurementCase,
    OperatingPoint,
    Spectrum,
    classical_dip_fwhm,
    convolve_gaussian,
    count_local_minima,
    detuning_grid,
    find_operating_point,
    sample_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "CouplingRegime",
    "DEFAULT_GRID_POINTS",
    "DEFAULT_GRID_SPAN",
    "DEFAULT_SEED",
    "Detuning",
    "FlatSpectrumError",
    "GridResolutionError",
    "MAIN_CASES",
    "MeasurementCase",
    "MidStateAmplitudes",
    "NoiseResult",
    "NoiseRunConfig",
    "OperatingPoint",
    "OutputStateAmplitudes",
    "ResonatorConfig",
    "Spectrum",
    "classical_dip_fwhm",
    "classical_wgm_intensity",
    "coincidence_probability",
    "convolve_gaussian",
    "count_local_minima",
    "detuning_grid",
    "dynamic_range_exclusion",
    "find_operating_point",
    "linewidth_and_q",
    "mid_state_amplitudes",
    "mid_state_norm",
    "mzi_output_difference",
    "mzi_output_intensities",
    "noise_norms",
    "normalization_closure",
    "output_state_amplitudes",
    "output_state_norm",
    "pair_amplitude_ratio",
    "pair_normalization",
    "sample_spectrum",
    "simulate_case",
    "snr_enhancement",
    "sweep_coupling_map",
    "sweep_linewidth",
    "sweep_photon_number",
    "theta_per_linewidth",
    "transmission",
    "__version__",
]
