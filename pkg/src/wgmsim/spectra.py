"""
Sampled-spectrum construction and analysis.

Builds detuning-gridded spectra for each measurement case, applies a
Gaussian input-linewidth convolution, and locates the maximum-gradient
operating point together with its dynamic range (distance to the nearest
stationary point, beyond which an intensity readout can no longer be
inverted to a unique resonance shift).

Detuning grids are dimensionless, in units of the resonator linewidth.
The convolution kernel width is specified as a ratio to the *measured*
full width at half minimum of the classical transmission dip on the same
grid, so that "input light N times wider than the resonance" means the
same thing for every coupling condition without appealing to an analytic
lineshape.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .resonator import (
    ResonatorConfig,
    classical_wgm_intensity,
    coincidence_probability,
    mzi_output_difference,
    mzi_output_intensities,
    theta_per_linewidth,
)

DEFAULT_GRID_POINTS = 4001
DEFAULT_GRID_SPAN = 5.0  # +- linewidths around resonance

# Gradient magnitudes below this (per linewidth) count as stationary.
STATIONARY_GRADIENT_TOL = 1e-12
# A spectrum whose every gradient is below this has no operating point.
FLAT_GRADIENT_TOL = 1e-15

# Minimum kernel sampling for a resolvable convolution.
MIN_SAMPLES_PER_FWHM = 8


class MeasurementCase(enum.Enum):
    """The measurement schemes whose spectra the simulator produces."""

    CLASSICAL_WGM = "classical_wgm"
    CLASSICAL_WGM_MZI = "classical_wgm_mzi"
    ENTANGLED_WGM_MZI = "entangled_wgm_mzi"
    # Single-output variant of the coherent-probe MZI; used only for the
    # difference-vs-single comparison, never in headline ratios.
    CLASSICAL_WGM_MZI_SINGLE = "classical_wgm_mzi_single"

    @property
    def label(self) -> str:
        return self.value


MAIN_CASES = (
    MeasurementCase.CLASSICAL_WGM,
    MeasurementCase.CLASSICAL_WGM_MZI,
    MeasurementCase.ENTANGLED_WGM_MZI,
)


class FlatSpectrumError(ValueError):
    """Raised when a spectrum has no usable gradient anywhere."""


class GridResolutionError(ValueError):
    """Raised when the detuning grid cannot resolve a requested kernel."""


@dataclass(frozen=True)
class Spectrum:
    """
    A sampled spectrum: amplitude statistic vs detuning.

    detunings are strictly increasing and uniformly spaced, in linewidth
    units; values are the case's intensity/probability statistic.
    width_ratio records the input-linewidth convolution already applied
    (0 = monochromatic).
    """

    case: MeasurementCase
    detunings: np.ndarray
    values: np.ndarray
    cfg: ResonatorConfig
    width_ratio: float = 0.0

    def __post_init__(self) -> None:
        d, v = self.detunings, self.values
        if d.ndim != 1 or v.shape != d.shape:
            raise ValueError("detunings and values must be 1-D and equal length")
        steps = np.diff(d)
        if len(steps) == 0 or steps.min() <= 0:
            raise ValueError("detunings must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("detuning grid must be uniform")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum values must be finite")
        if self.case in (
            MeasurementCase.CLASSICAL_WGM,
            MeasurementCase.ENTANGLED_WGM_MZI,
        ) and (v.min() < -1e-12 or v.max() > 1 + 1e-12):
            raise ValueError(f"{self.case.label} values must lie in [0, 1]")

    @property
    def step(self) -> float:
        return float(self.detunings[1] - self.detunings[0])


@dataclass(frozen=True)
class OperatingPoint:
    """
    Maximum-|gradient| readout point of a spectrum.

    gradient is d(value)/d(detuning) in per-linewidth units;
    dynamic_range is the detuning distance to the nearest stationary
    point (inf when the spectrum is monotone over the whole grid).
    """

    detuning: float
    gradient: float
    dynamic_range: float


def detuning_grid(
    span: float = DEFAULT_GRID_SPAN, points: int = DEFAULT_GRID_POINTS
) -> np.ndarray:
    """Symmetric uniform detuning grid over [-span, +span] linewidths."""
    if points < 64:
        raise ValueError(f"grid needs at least 64 points, got {points}")
    if span < 3.0:
        raise ValueError(f"grid must span at least +-3 linewidths, got {span}")
    return np.linspace(-span, span, points)


def _case_values(cfg: ResonatorConfig, case: MeasurementCase, theta: np.ndarray):
    if case is MeasurementCase.CLASSICAL_WGM:
        return classical_wgm_intensity(cfg, theta)
    if case is MeasurementCase.CLASSICAL_WGM_MZI:
        return mzi_output_difference(cfg, theta)
    if case is MeasurementCase.CLASSICAL_WGM_MZI_SINGLE:
        return mzi_output_intensities(cfg, theta)[0]
    return coincidence_probability(cfg, theta)


def sample_spectrum(
    cfg: ResonatorConfig,
    case: MeasurementCase,
    span: float = DEFAULT_GRID_SPAN,
    points: int = DEFAULT_GRID_POINTS,
) -> Spectrum:
    """Sample the monochromatic spectrum of `case` on a uniform grid."""
    grid = detuning_grid(span, points)
    theta = grid * theta_per_linewidth(cfg)
    return Spectrum(case=case, detunings=grid, values=_case_values(cfg, case, theta), cfg=cfg)


def classical_dip_fwhm(cfg: ResonatorConfig, grid: np.ndarray | None = None) -> float:
    """
    Full width at half minimum of the classical dip, measured on `grid`
    (default grid when omitted).

    The half level sits midway between the dip minimum and the
    far-detuned level at the grid edge; crossings are located by linear
    interpolation.  This measured width (not an analytic formula) is the
    reference for all convolution width ratios.
    """
    if grid is None:
        grid = detuning_grid()
    theta = grid * theta_per_linewidth(cfg)
    vals = classical_wgm_intensity(cfg, theta)
    half = 0.5 * (vals.min() + vals[0])
    below = np.where(vals < half)[0]
    if len(below) == 0:
        raise GridResolutionError("classical dip is unresolved on this grid")
    lo, hi = below[0], below[-1]
    if lo == 0 or hi == len(grid) - 1:
        raise GridResolutionError("classical dip extends beyond the grid")

    def crossing(j: int, k: int) -> float:
        return grid[j] + (half - vals[j]) * (grid[k] - grid[j]) / (vals[k] - vals[j])

    return crossing(hi, hi + 1) - crossing(lo - 1, lo)


def convolve_gaussian(spec: Spectrum, width_ratio: float) -> Spectrum:
    """
    Convolve a spectrum with a unit-area Gaussian input line.

    The kernel FWHM is width_ratio times the measured classical dip width
    (`classical_dip_fwhm`) for the spectrum's own configuration and grid.
    Edges are handled by extending the boundary values, which are flat
    far from resonance.  width_ratio = 0 returns the input unchanged.

    Raises
    ------
    GridResolutionError
        If the grid provides fewer than 8 samples per kernel FWHM.
    """
    if width_ratio < 0:
        raise ValueError(f"width_ratio must be >= 0, got {width_ratio}")
    if width_ratio == 0:
        return spec
    fwhm = width_ratio * classical_dip_fwhm(spec.cfg, spec.detunings)
    dx = spec.step
    if fwhm / dx < MIN_SAMPLES_PER_FWHM:
        raise GridResolutionError(
            f"kernel FWHM {fwhm:.3g} spans under {MIN_SAMPLES_PER_FWHM} grid steps"
            f" (step {dx:.3g}); refine the grid or widen the line"
        )
    sigma = fwhm / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    m = int(math.ceil(4.0 * sigma / dx))
    kernel = np.exp(-0.5 * (np.arange(-m, m + 1) * dx / sigma) ** 2)
    kernel /= kernel.sum()
    padded = np.concatenate(
        [np.full(m, spec.values[0]), spec.values, np.full(m, spec.values[-1])]
    )
    smoothed = np.convolve(padded, kernel, mode="valid")
    return replace(
        spec,
        values=smoothed,
        width_ratio=math.hypot(spec.width_ratio, width_ratio),
    )


def _stationary_indices(gradient: np.ndarray) -> list[int]:
    idx = set(np.flatnonzero(np.abs(gradient) < STATIONARY_GRADIENT_TOL).tolist())
    sign = np.sign(gradient)
    flips = np.flatnonzero((sign[:-1] != 0) & (sign[1:] != 0) & (sign[:-1] != sign[1:]))
    for j in flips:
        idx.add(int(j if abs(gradient[j]) <= abs(gradient[j + 1]) else j + 1))
    return sorted(idx)


def find_operating_point(spec: Spectrum) -> OperatingPoint:
    """
    Locate the maximum-|gradient| grid point and its dynamic range.

    Gradients are central differences (`numpy.gradient`).  Among equal
    maxima the point with the smallest |detuning| is chosen (then the
    more negative one), making the pick deterministic on symmetric
    spectra.  Equality uses a relative tolerance: sampled symmetric
    spectra carry last-ulp asymmetries that would otherwise flip the
    pick between the two flanks from grid to grid.  Stationary points
    are gradient sign changes or gradient magnitudes below the
    stationary tolerance.

    Raises
    ------
    FlatSpectrumError
        If every gradient is below the flat tolerance.
    """
    if len(spec.detunings) < 3:
        raise ValueError("operating point needs at least 3 samples")
    grad = np.gradient(spec.values, spec.detunings)
    mags = np.abs(grad)
    if mags.max() < FLAT_GRADIENT_TOL:
        raise FlatSpectrumError("spectrum is flat: no usable operating point")
    candidates = np.flatnonzero(mags >= mags.max() * (1.0 - 1e-9))
    abs_d = np.abs(spec.detunings[candidates])
    near = candidates[abs_d <= abs_d.min() + 0.5 * spec.step]
    i_op = int(near[np.argmin(spec.detunings[near])])
    stationary = [j for j in _stationary_indices(grad) if j != i_op]
    if stationary:
        dr = min(abs(spec.detunings[j] - spec.detunings[i_op]) for j in stationary)
    else:
        dr = math.inf
    return OperatingPoint(
        detuning=float(spec.detunings[i_op]),
        gradient=float(grad[i_op]),
        dynamic_range=float(dr),
    )


def count_local_minima(spec: Spectrum) -> int:
    """Number of strict interior local minima of the sampled spectrum."""
    v = spec.values
    return int(np.sum((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])))
