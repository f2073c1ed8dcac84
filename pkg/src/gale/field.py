"""Spatio-temporal turbulence fields by directional random-phase superposition.

A :class:`FieldRealization` freezes one component: frequencies on a uniform
bin-centred grid, propagation angles on a midpoint grid over (-pi/2, pi/2),
amplitudes ``sqrt(2 D(theta_j) S(omega_i) dw dtheta)``, wavenumbers
``omega / u_ref`` and counter-based phases.  Queries rotate the point into the
wind frame and sum the cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from gale import kernels, rng
from gale.errors import ConfigurationError, DomainError
from gale.spectra import TWO_PI, SpectrumModel, eval_psd

# Amplitude convention: a_i = sqrt(ENERGY_FACTOR * S_i * dw) so the variance of
# the synthesized signal equals the integral of S.
ENERGY_FACTOR = 2.0

DEFAULT_F_MIN = 0.01
DEFAULT_F_MAX = 8.0
DEFAULT_N_FREQ = 256
DEFAULT_M_ANGLE = 37


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def cos_power_integral(p):
    """Exact integral of ``cos(theta)**p`` over ``[-pi/2, pi/2]`` for integer ``p >= 0``.

    Returned as ``(rational, has_pi)`` so callers can keep the rational part exact.
    """
    frac = Fraction(_double_factorial(p - 1), _double_factorial(p))
    if p % 2 == 0:
        return frac, True
    return 2 * frac, False


@dataclass(frozen=True)
class SpreadingSpec:
    """``cos^(2s)`` directional spreading; ``s`` must be an integer or half-integer."""

    s: float = 1.0

    def __post_init__(self):
        if self.s < 0 or float(2 * self.s) != int(2 * self.s):
            raise ConfigurationError(f"spreading exponent must be a non-negative integer "
                                     f"or half-integer, got {self.s!r}")

    @property
    def D0(self):
        frac, has_pi = cos_power_integral(int(2 * self.s))
        inv = 1 / frac
        return float(inv) / math.pi if has_pi else float(inv)


def spreading(theta, spec: SpreadingSpec):
    """Directional density ``D0 cos^(2s) theta`` inside ``|theta| < pi/2``, zero elsewhere."""
    th = np.asarray(theta, dtype=np.float64)
    d = np.where(np.abs(th) < math.pi / 2, spec.D0 * np.abs(np.cos(th)) ** (2 * spec.s), 0.0)
    return float(d) if d.ndim == 0 else d


def directional_spectrum(S, theta, spec: SpreadingSpec):
    """Two-dimensional spectrum ``S(omega) D(theta)``."""
    if np.any(np.asarray(S) < 0):
        raise DomainError("spectral density must be non-negative")
    return S * spreading(theta, spec)


@dataclass(frozen=True)
class GridSpec:
    """Discretisation of a field: frequency bins, angle nodes and the seed.

    ``m_angle`` must be odd so that the mean wind direction is a node.
    """

    n_freq: int = DEFAULT_N_FREQ
    m_angle: int = DEFAULT_M_ANGLE
    omega_min: float = TWO_PI * DEFAULT_F_MIN
    omega_max: float = TWO_PI * DEFAULT_F_MAX
    seed: int = 0

    def __post_init__(self):
        if self.n_freq < 1 or self.m_angle < 1:
            raise ConfigurationError("grid needs at least one frequency and one angle")
        if self.m_angle % 2 == 0:
            raise ConfigurationError(f"m_angle must be odd, got {self.m_angle}")
        if not 0 < self.omega_min < self.omega_max:
            raise ConfigurationError("need 0 < omega_min < omega_max")

    @property
    def d_omega(self):
        return (self.omega_max - self.omega_min) / self.n_freq

    @property
    def d_theta(self):
        return math.pi / self.m_angle

    def frequencies(self):
        return self.omega_min + (np.arange(self.n_freq) + 0.5) * self.d_omega

    def angles(self):
        return -math.pi / 2 + (np.arange(self.m_angle) + 0.5) * self.d_theta


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FieldRealization:
    amplitudes: np.ndarray
    wavenumbers: np.ndarray
    frequencies: np.ndarray
    angles: np.ndarray
    phases: np.ndarray
    theta_w: float
    u_ref: float

    def __post_init__(self):
        for name in ("amplitudes", "wavenumbers", "frequencies", "angles", "phases"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        object.__setattr__(self, "_cos_t", _frozen(np.cos(self.angles)))
        object.__setattr__(self, "_sin_t", _frozen(np.sin(self.angles)))

    def identical_to(self, other: "FieldRealization"):
        """Bit-for-bit equality of every stored array and scalar."""
        return (self.theta_w == other.theta_w and self.u_ref == other.u_ref
                and all(np.array_equal(getattr(self, n), getattr(other, n))
                        for n in ("amplitudes", "wavenumbers", "frequencies", "angles", "phases")))

    @property
    def variance(self):
        """Ensemble variance of the field at any point: ``sum(a^2) / 2``."""
        return 0.5 * float(np.sum(self.amplitudes**2))

    def to_wind_frame(self, x, y):
        c, s = math.cos(self.theta_w), math.sin(self.theta_w)
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return x * c + y * s, -x * s + y * c

    def sample_points(self, x, y, t, backend=None):
        """Vectorised :func:`sample_scalar` over arrays of horizontal coordinates."""
        xw, yw = self.to_wind_frame(x, y)
        return kernels.field_sum(self.amplitudes, self.wavenumbers, self._cos_t, self._sin_t,
                                 self.frequencies, self.phases, np.ravel(xw), np.ravel(yw), t,
                                 backend=backend).reshape(np.shape(xw))


def build_field(model: SpectrumModel, grid: GridSpec, spread: SpreadingSpec,
                theta_w: float, u_ref: float, stream: int = rng.STREAM_LON) -> FieldRealization:
    """Freeze one turbulence component on ``grid``.

    Phases come from the counter-based generator keyed by
    ``(grid.seed, stream, i, j)``; components that must be correlated are built
    with the same ``stream``.
    """
    if not u_ref > 0:
        raise ConfigurationError(f"reference wind speed must be positive, got {u_ref!r}")
    omega = grid.frequencies()
    theta = grid.angles()
    S = np.asarray(eval_psd(model, omega), dtype=np.float64)
    D = spreading(theta, spread)
    amp = np.sqrt(ENERGY_FACTOR * np.outer(S, D) * grid.d_omega * grid.d_theta)
    return FieldRealization(amplitudes=amp, wavenumbers=omega / u_ref, frequencies=omega,
                            angles=theta, phases=rng.phases(grid.seed, stream, grid.n_freq,
                                                             grid.m_angle),
                            theta_w=float(theta_w), u_ref=float(u_ref))


def sample_scalar(field: FieldRealization, p, t, backend=None) -> float:
    """Turbulence value (m/s, or rad/s for rotations) at position ``p`` and time ``t``.

    Only the horizontal coordinates enter the phase; the field has no vertical
    structure.
    """
    p = np.asarray(p, dtype=np.float64)
    return float(field.sample_points(p[0:1], p[1:2], t, backend=backend)[0])


def synthesize_timeseries(model: SpectrumModel, t_grid, n_freq=DEFAULT_N_FREQ, seed=0,
                          omega_min=TWO_PI * DEFAULT_F_MIN, omega_max=TWO_PI * DEFAULT_F_MAX,
                          stream=rng.STREAM_SERIES, backend=None):
    """Single-point random-phase series ``sum_i sqrt(2 S_i dw) cos(w_i t + psi_i)``."""
    if n_freq < 1:
        raise ConfigurationError("n_freq must be at least 1")
    if not 0 < omega_min < omega_max:
        raise ConfigurationError("need 0 < omega_min < omega_max")
    dw = (omega_max - omega_min) / n_freq
    omega = omega_min + (np.arange(n_freq) + 0.5) * dw
    S = np.asarray(eval_psd(model, omega), dtype=np.float64)
    amp = np.sqrt(ENERGY_FACTOR * S * dw)
    return kernels.series_sum(amp, omega, rng.phases(seed, stream, n_freq),
                              np.asarray(t_grid, dtype=np.float64), backend=backend)
