"""
Closed-form physics of a waveguide-coupled whispering-gallery-mode resonator.

Implements the all-pass complex transmission of a single WGM resonance, the
intensity spectra seen by three measurement schemes built on it, and the
two-photon state bookkeeping needed for the photon-pair scheme:

    1. direct transmission of a coherent probe:   I(delta) = |t|^2
    2. coherent probe in one arm of a Mach-Zehnder interferometer,
       monitoring both outputs and their difference
    3. an indistinguishable photon pair entering both interferometer
       inputs, monitoring the output coincidence probability

Theory:
    The amplitude transmission past the coupler is

        t(theta) = (r - alpha e^{i theta}) / (1 - r alpha e^{i theta})

    with r the coupler through-coefficient, alpha the round-trip amplitude
    transmission, and theta the round-trip phase accumulated by the detuned
    field.  r > alpha is undercoupled, r = alpha critical (t = 0 on
    resonance), r < alpha overcoupled.

    A photon pair bunched into one arm (two-photon amplitude t^2, seen here
    through its conjugate) interferes with the pair in the other arm.  Loss
    inside the resonator couples the pair to environment modes; the
    surviving two-photon amplitude is renormalized by a factor that depends
    only on |t|^2, and the coincidence probability at the outputs is

        P(theta) = 1/4 |q(theta) + 1|^2

    where q = g(|t|^2) e^{2i arg t} is the normalized pair response and
    g(x) = [1 + 2(1-x)^2 + 2(1-x)^4]^{-1/2}.  The doubled phase is what
    steepens the spectrum relative to the classical cases.

All functions are pure; theta arguments accept scalars or NumPy arrays
(radians of round-trip phase) or a `Detuning`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Speed of light in vacuum [m/s]
C_VACUUM = 299792458.0

# Relative tolerance for classifying r == alpha as critical coupling.
# Classification is informational only; all physics uses raw r, alpha.
CRITICAL_COUPLING_RTOL = 1e-12


@dataclass(frozen=True)
class ResonatorConfig:
    """
    Physical and coupling parameters of one WGM resonator.

    Parameters
    ----------
    r : float
        Coupler amplitude through-coefficient, 0 <= r < 1.  The cross
        coupling satisfies |kappa|^2 + r^2 = 1 and is never stored.
    alpha : float
        Round-trip amplitude transmission (intrinsic loss), 0 < alpha < 1.
    radius : float, optional
        Resonator radius [m].  Default 40 um.
    ref_index : float, optional
        Refractive index of the resonator mode.  Default 1.45.
    lambda0 : float, optional
        Resonance wavelength [m].  Default 780 nm.

    Notes
    -----
    All dimensionless results (spectra, enhancement ratios) depend only on
    (r, alpha); radius, ref_index and lambda0 enter only the conversion
    between round-trip phase, linewidth units, and femtometres.
    """

    r: float
    alpha: float
    radius: float = 40e-6
    ref_index: float = 1.45
    lambda0: float = 780e-9

    def __post_init__(self) -> None:
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"r must be in [0, 1), got {self.r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.ref_index < 1:
            raise ValueError(f"ref_index must be >= 1, got {self.ref_index}")
        if self.lambda0 <= 0:
            raise ValueError(f"lambda0 must be positive, got {self.lambda0}")

    @property
    def coupling_regime(self) -> "CouplingRegime":
        """Classify the coupling condition by comparing r to alpha."""
        tol = CRITICAL_COUPLING_RTOL * max(self.r, self.alpha)
        if abs(self.r - self.alpha) <= tol:
            return CouplingRegime.CRITICAL
        return (
            CouplingRegime.UNDERCOUPLED
            if self.r > self.alpha
            else CouplingRegime.OVERCOUPLED
        )


class CouplingRegime(enum.Enum):
    """Coupling condition of the resonator relative to its intrinsic loss."""

    UNDERCOUPLED = "undercoupled"  # r > alpha
    CRITICAL = "critical"          # r = alpha (on-resonance transmission -> 0)
    OVERCOUPLED = "overcoupled"    # r < alpha


def linewidth_and_q(cfg: ResonatorConfig) -> tuple[float, float]:
    """
    Resonance linewidth (FWHM, wavelength units) and quality factor.

    Delta_lambda = -lambda0^2 ln(alpha r) / (4 pi^2 R),  Q = lambda0 / Delta_lambda.

    Returns
    -------
    (linewidth_m, q) : tuple of float
        Linewidth in metres (> 0 since ln(alpha r) < 0) and the
        dimensionless quality factor.  Q is +inf if alpha*r rounds to 1
        and the logarithm underflows to zero.
    """
    dlam = -cfg.lambda0**2 * math.log(cfg.alpha * cfg.r) / (4 * math.pi**2 * cfg.radius)
    q = cfg.lambda0 / dlam if dlam > 0 else math.inf
    return dlam, q


def theta_per_linewidth(cfg: ResonatorConfig) -> float:
    """
    Round-trip phase accumulated across one linewidth of detuning.

    Derived by chaining theta = 2 pi R n delta / c with the linewidth
    expressed as a frequency detuning; the geometry cancels and the result
    is -n ln(alpha r).
    """
    return -cfg.ref_index * math.log(cfg.alpha * cfg.r)


@dataclass(frozen=True)
class Detuning:
    """
    Frequency detuning from the WGM resonance.

    Canonical unit is radians of round-trip phase theta; constructors
    convert from linewidth units or from a resonance-wavelength shift in
    femtometres.  theta = 2 pi R n delta / c for angular frequency
    detuning delta, which is exact and invertible for a fixed config.
    """

    theta: float

    @classmethod
    def from_linewidths(cls, cfg: ResonatorConfig, value: float) -> "Detuning":
        """Detuning given in units of the WGM linewidth."""
        return cls(theta=value * theta_per_linewidth(cfg))

    @classmethod
    def from_fm(cls, cfg: ResonatorConfig, value_fm: float) -> "Detuning":
        """Detuning given as a resonance-wavelength shift in femtometres."""
        dlam, _ = linewidth_and_q(cfg)
        return cls.from_linewidths(cfg, value_fm * 1e-15 / dlam)

    def in_linewidths(self, cfg: ResonatorConfig) -> float:
        """This detuning expressed in units of the WGM linewidth."""
        return self.theta / theta_per_linewidth(cfg)

    def in_fm(self, cfg: ResonatorConfig) -> float:
        """This detuning expressed as a wavelength shift in femtometres."""
        dlam, _ = linewidth_and_q(cfg)
        return self.in_linewidths(cfg) * dlam * 1e15


def _theta_value(theta):
    """Accept Detuning, float, or ndarray and return raw radians."""
    if isinstance(theta, Detuning):
        return theta.theta
    return theta


def transmission(cfg: ResonatorConfig, theta):
    """
    Complex amplitude transmission t(theta) past the resonator coupler.

        t = (r - alpha e^{i theta}) / (1 - r alpha e^{i theta})

    |t| <= 1 for all theta (equality only as alpha -> 1); the denominator
    cannot vanish for r, alpha < 1.  t(-theta) = conj(t(theta)), so every
    intensity derived from t is an even function of detuning.

    Parameters
    ----------
    theta : float, ndarray, or Detuning
        Round-trip phase detuning [rad].

    Returns
    -------
    complex or ndarray of complex
    """
    th = _theta_value(theta)
    phase = np.exp(1j * np.asarray(th, dtype=complex))
    t = (cfg.r - cfg.alpha * phase) / (1 - cfg.r * cfg.alpha * phase)
    return t if isinstance(th, np.ndarray) else complex(t)


def classical_wgm_intensity(cfg: ResonatorConfig, theta):
    """Direct transmission spectrum |t|^2 of a coherent probe, in [0, 1]."""
    return np.abs(transmission(cfg, theta)) ** 2


def mzi_output_intensities(cfg: ResonatorConfig, theta):
    """
    Output intensities (I_plus, I_minus) of the coherent-probe MZI.

    One interferometer arm contains the resonator; a unit-intensity
    coherent probe enters one input.  The two outputs carry

        I_plus  = 1/4 |1 + t|^2,    I_minus = 1/4 |1 - t|^2

    and satisfy I_plus + I_minus = (1 + |t|^2)/2 <= 1.
    """
    t = transmission(cfg, theta)
    return 0.25 * np.abs(1 + t) ** 2, 0.25 * np.abs(1 - t) ** 2


def mzi_output_difference(cfg: ResonatorConfig, theta):
    """
    Balanced difference of the coherent-probe MZI outputs.

    Algebraically identical to Re(t); computed from the two output
    intensities so the identity stays a testable property rather than an
    assumption.
    """
    i_plus, i_minus = mzi_output_intensities(cfg, theta)
    return i_plus - i_minus


def pair_normalization(cfg: ResonatorConfig, theta):
    """
    Renormalization factor of the resonator-arm two-photon amplitude.

        A = |t|^2 [1 + 2(1-|t|^2)^2 + 2(1-|t|^2)^4]^{-1/2}

    Monotone in |t|^2 with 0 <= A <= |t|^2; A = 1 in the lossless limit.
    """
    return _pair_norm_factor(classical_wgm_intensity(cfg, theta))


def _pair_response_scale(t_abs_sq):
    """g(x) = [1 + 2(1-x)^2 + 2(1-x)^4]^{-1/2}; magnitude of the pair response."""
    u = 1.0 - np.asarray(t_abs_sq, dtype=float)
    return 1.0 / np.sqrt(1.0 + 2.0 * u**2 + 2.0 * u**4)


def _pair_norm_factor(t_abs_sq):
    x = np.asarray(t_abs_sq, dtype=float)
    out = x * _pair_response_scale(x)
    return out if out.shape else float(out)


def noise_norms(t_abs_sq) -> tuple:
    """
    Expectation values of the environment (loss) operator products.

    Photon loss inside the resonator couples the circulating field to a
    bath at zero temperature.  The two vacuum expectation values that
    survive in the pair-state bookkeeping are

        <F F^dag>     = 1 - |t|^2
        <F^2 F^dag^2> = 2 (1 - |t|^2)^2

    the unique pair of values consistent with both the renormalization
    factor `pair_normalization` and a unit-norm output state.  They enter
    the state-norm accounting through their squares (see
    `mid_state_norm` / `output_state_norm`).
    """
    u = 1.0 - np.asarray(t_abs_sq, dtype=float)
    one = u if u.shape else float(u)
    two = 2.0 * u**2 if u.shape else float(2.0 * u**2)
    return one, two


def pair_amplitude_ratio(cfg: ResonatorConfig, theta):
    """
    Normalized response q = A / conj(t)^2 of the resonator-arm photon pair.

    Evaluated in the factored form g(|t|^2) e^{2i arg t}, finite and
    continuous everywhere except exactly at t = 0 (critical coupling on
    resonance), where the directional limit along the real axis is used:
    the doubled phase maps both arg t = 0 and arg t = pi to a phase factor
    of +1, so q -> g(0) = 1/sqrt(5).

    Returns
    -------
    complex or ndarray of complex
    """
    t = transmission(cfg, theta)
    t_arr = np.asarray(t, dtype=complex)
    g = _pair_response_scale(np.abs(t_arr) ** 2)
    safe = np.where(t_arr == 0, 1.0, t_arr)
    phase = np.where(t_arr == 0, 1.0 + 0j, np.exp(2j * np.angle(safe)))
    q = g * phase
    return q if isinstance(t, np.ndarray) else complex(q)


def coincidence_probability(cfg: ResonatorConfig, theta):
    """
    Coincidence probability of the photon-pair MZI outputs.

        P = 1/4 |q + 1|^2,   q = pair_amplitude_ratio

    P in [0, 1]; P -> 1 far off resonance (|t| -> 1, arg t -> 0) and
    P -> 1/4 |1/sqrt(5) + 1|^2 ~= 0.5236 at exactly critical coupling on
    resonance (an isolated point: the neighbouring limit is
    1/4 |1 - 1/sqrt(5)|^2 ~= 0.0764, approached as theta -> 0).
    """
    q = pair_amplitude_ratio(cfg, theta)
    return 0.25 * np.abs(q + 1) ** 2


@dataclass(frozen=True)
class MidStateAmplitudes:
    """
    Two-photon state between the interferometer couplers.

    Amplitudes of |2,0> and |0,2> in the (resonator arm, reference arm)
    photon-number basis, plus the loss terms |1,0> x F^dag |0>_env and
    |0,0> x F^dag^2 |0>_env.  The |0,2> probability is exactly 1/2 for
    every configuration: the reference-arm pair never sees the resonator.
    """

    both_resonator_arm: complex
    both_reference_arm: complex
    one_lost: complex
    both_lost: complex


@dataclass(frozen=True)
class OutputStateAmplitudes:
    """
    Two-photon state after the output coupler.

    Amplitudes of |2,0>, |0,2>, |1,1> in the output-port photon-number
    basis plus the three loss terms (|1,0> x F^dag, |0,1> x F^dag,
    |0,0> x F^dag^2).  |coincidence|^2 reproduces
    `coincidence_probability`.
    """

    pair_port_a: complex
    pair_port_b: complex
    coincidence: complex
    one_lost_port_a: complex
    one_lost_port_b: complex
    both_lost: complex


def mid_state_amplitudes(cfg: ResonatorConfig, theta) -> MidStateAmplitudes:
    """State of the photon pair after the input coupler and resonator pass."""
    q = pair_amplitude_ratio(cfg, theta)
    half = 1j / math.sqrt(2)
    return MidStateAmplitudes(
        both_resonator_arm=half * q,
        both_reference_arm=half,
        one_lost=-1j * q,
        both_lost=0.5j * q,
    )


def output_state_amplitudes(cfg: ResonatorConfig, theta) -> OutputStateAmplitudes:
    """State of the photon pair after the output coupler."""
    q = pair_amplitude_ratio(cfg, theta)
    quarter = 1j * math.sqrt(2) / 4
    return OutputStateAmplitudes(
        pair_port_a=quarter * (q - 1),
        pair_port_b=quarter * (1 - q),
        coincidence=0.5 * (q + 1),
        one_lost_port_a=-1j * q / math.sqrt(2),
        one_lost_port_b=-q / math.sqrt(2),
        both_lost=0.5j * q,
    )


def mid_state_norm(cfg: ResonatorConfig, theta):
    """
    Total norm of the mid state; equals 1 for every (cfg, theta).

    Loss terms are weighted by the squared environment expectation values
    from `noise_norms`, the accounting under which the closure relation
    and unit norm hold exactly.
    """
    m = mid_state_amplitudes(cfg, theta)
    w1, w2 = noise_norms(classical_wgm_intensity(cfg, theta))
    return (
        np.abs(m.both_resonator_arm) ** 2
        + np.abs(m.both_reference_arm) ** 2
        + np.asarray(w1) ** 2 * np.abs(m.one_lost) ** 2
        + np.asarray(w2) ** 2 * np.abs(m.both_lost) ** 2
    )


def output_state_norm(cfg: ResonatorConfig, theta):
    """Total norm of the output state; equals 1 for every (cfg, theta)."""
    c = output_state_amplitudes(cfg, theta)
    w1, w2 = noise_norms(classical_wgm_intensity(cfg, theta))
    return (
        np.abs(c.pair_port_a) ** 2
        + np.abs(c.pair_port_b) ** 2
        + np.abs(c.coincidence) ** 2
        + np.asarray(w1) ** 2
        * (np.abs(c.one_lost_port_a) ** 2 + np.abs(c.one_lost_port_b) ** 2)
        + np.asarray(w2) ** 2 * np.abs(c.both_lost) ** 2
    )


def normalization_closure(cfg: ResonatorConfig, theta):
    """
    Closure relation fixing the pair renormalization; equals 1/2 exactly.

        A^2 [ 1/(2|t|^4) + <FF^dag>^2/|t|^4 + <F^2F^dag^2>^2/(4|t|^4) ] = 1/2

    Valid for |t|^2 in (0, 1]; used as a numerical identity check.
    """
    x = classical_wgm_intensity(cfg, theta)
    a = _pair_norm_factor(x)
    w1, w2 = noise_norms(x)
    x = np.asarray(x, dtype=float)
    return np.asarray(a) ** 2 * (
        1.0 / (2.0 * x**2)
        + np.asarray(w1) ** 2 / x**2
        + np.asarray(w2) ** 2 / (4.0 * x**2)
    )
