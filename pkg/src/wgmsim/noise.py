"""
Monte Carlo noise model for fixed-detuning WGM shift readout.

Each simulated time bin adds Gaussian jitter to the resonance position and
Poisson shot noise to the detected counts, then inverts the intensity at
the operating point back to an apparent resonance shift through the local
gradient.  The 3-sigma spread of those apparent shifts is the reported
measurement noise; ratios between cases, computed with shared jitter
streams, give SNR enhancement factors.

Every photon budget is the same `photons_per_bin` mean per time bin: the
direct-transmission probe detects N * I(d), each interferometer output of
the coherent-probe MZI detects N * I_out(d) (their difference normalized
by N is the readout statistic), and the pair scheme detects
N * P_coinc(d) coincidences.

Sweep drivers derive one RNG stream per grid cell from (seed, cell index),
so results are independent of evaluation order; within a cell all cases
share the jitter stream (common random numbers) to stabilize ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.random import SeedSequence, default_rng

from .resonator import (
    ResonatorConfig,
    linewidth_and_q,
    mzi_output_intensities,
    theta_per_linewidth,
)
from .spectra import (
    DEFAULT_GRID_POINTS,
    DEFAULT_GRID_SPAN,
    MAIN_CASES,
    MeasurementCase,
    OperatingPoint,
    Spectrum,
    convolve_gaussian,
    detuning_grid,
    find_operating_point,
    sample_spectrum,
)

# Stable per-case stream indices for count draws (jitter stream is shared).
_CASE_STREAM = {
    MeasurementCase.CLASSICAL_WGM: 0,
    MeasurementCase.CLASSICAL_WGM_MZI: 1,
    MeasurementCase.ENTANGLED_WGM_MZI: 2,
    MeasurementCase.CLASSICAL_WGM_MZI_SINGLE: 3,
}

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class NoiseRunConfig:
    """Monte Carlo settings shared by all cases of one comparison."""

    photons_per_bin: float
    n_steps: int = 1000
    jitter_sigma_fm: float = 1.0
    seed: int | tuple = DEFAULT_SEED
    width_ratio: float = 0.0
    true_shift: float = 0.0  # imposed resonance shift, linewidth units

    def __post_init__(self) -> None:
        if self.photons_per_bin <= 0:
            raise ValueError("photons_per_bin must be positive")
        if self.n_steps < 100:
            raise ValueError("n_steps must be at least 100")
        if self.jitter_sigma_fm < 0:
            raise ValueError("jitter_sigma_fm must be non-negative")
        if self.width_ratio < 0:
            raise ValueError("width_ratio must be non-negative")


@dataclass(frozen=True)
class NoiseResult:
    """3-sigma readout noise for one case, with diagnostics."""

    case: MeasurementCase
    delta_omega_3sigma_fm: float
    noise_3sigma_gamma: float
    operating_point: OperatingPoint
    mean_counts: float
    dr_violation: bool


def _component_spectra(
    cfg: ResonatorConfig,
    case: MeasurementCase,
    width_ratio: float,
    span: float,
    points: int,
) -> list[Spectrum]:
    """Spectra whose values are Poisson count means (each non-negative)."""
    if case is MeasurementCase.CLASSICAL_WGM_MZI:
        grid = detuning_grid(span, points)
        plus_vals, minus_vals = mzi_output_intensities(cfg, grid * theta_per_linewidth(cfg))
        single = MeasurementCase.CLASSICAL_WGM_MZI_SINGLE
        return [
            convolve_gaussian(Spectrum(single, grid, plus_vals, cfg), width_ratio),
            convolve_gaussian(Spectrum(single, grid, minus_vals, cfg), width_ratio),
        ]
    return [convolve_gaussian(sample_spectrum(cfg, case, span, points), width_ratio)]


def simulate_case(
    cfg: ResonatorConfig,
    case: MeasurementCase,
    run: NoiseRunConfig,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> NoiseResult:
    """
    Monte Carlo 3-sigma readout noise for one measurement case.

    Per time bin: draw a resonance shift ~ N(true_shift, jitter), evaluate
    the (convolved) spectrum at the fixed operating detuning with the
    spectrum shifted accordingly, draw Poisson counts, and linearize back
    to an apparent shift through the operating-point gradient.  The result
    carries a dynamic-range violation flag when the 3-sigma noise exceeds
    the distance to the nearest stationary point.
    """
    comps = _component_spectra(cfg, case, run.width_ratio, span, points)
    if case is MeasurementCase.CLASSICAL_WGM_MZI:
        statistic = replace(
            comps[0],
            case=MeasurementCase.CLASSICAL_WGM_MZI,
            values=comps[0].values - comps[1].values,
        )
    else:
        statistic = comps[0]
    op = find_operating_point(statistic)
    grid = statistic.detunings
    value0 = float(np.interp(op.detuning, grid, statistic.values))

    gamma_fm = linewidth_and_q(cfg)[0] * 1e15
    sigma_d = run.jitter_sigma_fm / gamma_fm
    n = run.photons_per_bin

    jitter_rng = default_rng(SeedSequence(entropy=run.seed, spawn_key=(0,)))
    shifts = jitter_rng.normal(0.0, sigma_d, run.n_steps) + run.true_shift
    count_rng = default_rng(
        SeedSequence(entropy=run.seed, spawn_key=(1, _CASE_STREAM[case]))
    )

    sampled = [np.interp(op.detuning - shifts, grid, c.values) for c in comps]
    counts = [count_rng.poisson(n * s) for s in sampled]
    if case is MeasurementCase.CLASSICAL_WGM_MZI:
        estimate = (counts[0] - counts[1]) / n
        mean_counts = float(np.mean(counts[0] + counts[1]))
    else:
        estimate = counts[0] / n
        mean_counts = float(np.mean(counts[0]))

    apparent = (estimate - value0) / op.gradient
    noise_gamma = 3.0 * float(np.std(apparent, ddof=1))
    return NoiseResult(
        case=case,
        delta_omega_3sigma_fm=noise_gamma * gamma_fm,
        noise_3sigma_gamma=noise_gamma,
        operating_point=op,
        mean_counts=mean_counts,
        dr_violation=bool(noise_gamma > op.dynamic_range),
    )


def snr_enhancement(
    cfg: ResonatorConfig,
    run: NoiseRunConfig,
    baseline: MeasurementCase,
    candidate: MeasurementCase,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> float:
    """Noise ratio baseline/candidate; > 1 means the candidate is quieter.

    Both cases run with the same seed, hence the same jitter stream.
    """
    base = simulate_case(cfg, baseline, run, span, points)
    cand = simulate_case(cfg, candidate, run, span, points)
    return base.delta_omega_3sigma_fm / cand.delta_omega_3sigma_fm


def _cell_seed(base: int | tuple, *index: int) -> tuple:
    parts = base if isinstance(base, tuple) else (base,)
    return parts + index


def sweep_photon_number(
    cfg: ResonatorConfig,
    run: NoiseRunConfig,
    n_values,
    cases=MAIN_CASES,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> list[NoiseResult]:
    """One NoiseResult per (photon number, case), shared jitter per cell."""
    results = []
    for k, n in enumerate(n_values):
        cell = replace(run, photons_per_bin=float(n), seed=_cell_seed(run.seed, 2, k))
        for case in cases:
            results.append(simulate_case(cfg, case, cell, span, points))
    return results


def sweep_coupling_map(
    r_values,
    alpha_values,
    run: NoiseRunConfig,
    cfg_template: ResonatorConfig | None = None,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> list[dict]:
    """
    Enhancement of the pair scheme over both classical baselines on an
    (r, alpha) grid.  Rows carry the entangled-case dynamic-range flag.
    """
    template = cfg_template or ResonatorConfig(r=0.9996, alpha=0.9997)
    rows = []
    for ia, a in enumerate(alpha_values):
        for ir, r in enumerate(r_values):
            cfg = replace(template, r=float(r), alpha=float(a))
            cell = replace(run, seed=_cell_seed(run.seed, 3, ia, ir))
            wgm = simulate_case(cfg, MeasurementCase.CLASSICAL_WGM, cell, span, points)
            mzi = simulate_case(cfg, MeasurementCase.CLASSICAL_WGM_MZI, cell, span, points)
            ent = simulate_case(cfg, MeasurementCase.ENTANGLED_WGM_MZI, cell, span, points)
            rows.append(
                {
                    "r": float(r),
                    "alpha": float(a),
                    "snr_vs_classical_wgm": wgm.delta_omega_3sigma_fm
                    / ent.delta_omega_3sigma_fm,
                    "snr_vs_classical_mzi": mzi.delta_omega_3sigma_fm
                    / ent.delta_omega_3sigma_fm,
                    "dr_violation_flag": int(ent.dr_violation),
                }
            )
    return rows


def sweep_linewidth(
    cfg: ResonatorConfig,
    run: NoiseRunConfig,
    ratios,
    r_values,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> list[dict]:
    """Pair-vs-coherent-MZI enhancement per (input width ratio, r)."""
    rows = []
    for i, ratio in enumerate(ratios):
        for j, r in enumerate(r_values):
            cell_cfg = replace(cfg, r=float(r))
            cell = replace(
                run,
                width_ratio=float(ratio),
                seed=_cell_seed(run.seed, 4, i, j),
            )
            rows.append(
                {
                    "width_ratio": float(ratio),
                    "r": float(r),
                    "snr_vs_classical_mzi": snr_enhancement(
                        cell_cfg,
                        cell,
                        MeasurementCase.CLASSICAL_WGM_MZI,
                        MeasurementCase.ENTANGLED_WGM_MZI,
                        span,
                        points,
                    ),
                }
            )
    return rows


def dynamic_range_exclusion(
    cfg: ResonatorConfig,
    run: NoiseRunConfig,
    r_values,
    fractions=(0.2, 0.4, 0.6, 0.8),
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> list[dict]:
    """
    Pair-scheme noise against dynamic range for each r.

    max_fraction_satisfied is the strictest listed fraction f with
    3-sigma noise <= f * dynamic range (NaN when even the loosest
    fraction is violated): smaller reported fractions mean more headroom.
    """
    fracs = sorted(fractions)
    rows = []
    for i, r in enumerate(r_values):
        cell_cfg = replace(cfg, r=float(r))
        cell = replace(run, seed=_cell_seed(run.seed, 5, i))
        res = simulate_case(
            cell_cfg, MeasurementCase.ENTANGLED_WGM_MZI, cell, span, points
        )
        dr = res.operating_point.dynamic_range
        satisfied = [f for f in fracs if res.noise_3sigma_gamma <= f * dr]
        rows.append(
            {
                "r": float(r),
                "dynamic_range_gamma": dr,
                "noise_3sigma_gamma": res.noise_3sigma_gamma,
                "max_fraction_satisfied": satisfied[0] if satisfied else math.nan,
            }
        )
    return rows
