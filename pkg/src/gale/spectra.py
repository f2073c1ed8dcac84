"""Closed-form turbulence power spectral densities.

All public evaluation is in SI with the angular frequency ``omega`` in rad/s
as the independent variable, and every PSD is one-sided: integrating over
``(0, inf)`` in ``omega`` gives the variance.  Models published per Hz are
converted with ``S_omega(omega) = S_f(omega / 2pi) / 2pi``.

The low-altitude Von Karman forms are tabulated in imperial units, so
:class:`VonKarmanParams` stores feet and ft/s and the translational outputs
are converted back to m^2/s^2 per rad/s.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from gale.errors import ConfigurationError, DomainError, OutOfBandWarning

FT_PER_M = 3.28084
TWO_PI = 2.0 * math.pi
# validated band of every model, 0 - 8 Hz
OMEGA_MAX_VALID = TWO_PI * 8.0
# low-altitude Von Karman model ceiling, ft
VK_MAX_ALTITUDE_FT = 2000.0
_VK_GAIN = 1.339


class Family(enum.Enum):
    VK_LON = "vk-lon"
    VK_LAT = "vk-lat"
    VK_VERT = "vk-vert"
    VK_ROLL = "vk-roll"
    VK_PITCH = "vk-pitch"
    VK_YAW = "vk-yaw"
    HARRIS = "harris"
    FORRISTALL = "forristall"
    OCHI_SHIN = "ochi-shin"


class Component(enum.Enum):
    """Turbulence components other than the longitudinal one."""

    LAT = "lat"
    VERT = "vert"
    ROLL = "roll"
    PITCH = "pitch"
    YAW = "yaw"


VK_FAMILIES = (Family.VK_LON, Family.VK_LAT, Family.VK_VERT,
               Family.VK_ROLL, Family.VK_PITCH, Family.VK_YAW)
_COMPONENT_FAMILY = {
    Component.LAT: Family.VK_LAT,
    Component.VERT: Family.VK_VERT,
    Component.ROLL: Family.VK_ROLL,
    Component.PITCH: Family.VK_PITCH,
    Component.YAW: Family.VK_YAW,
}
_ROTATIONAL = (Family.VK_ROLL, Family.VK_PITCH, Family.VK_YAW)


def _require_positive(**values):
    for name, v in values.items():
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v!r}")


# -- Von Karman -------------------------------------------------------------

def vk_scaling_lengths(z):
    """Longitudinal, lateral and vertical scale lengths (ft) at altitude ``z`` (ft)."""
    _require_positive(z=z)
    lu = z / (0.177 + 0.000823 * z) ** 1.2
    return lu, lu, z


def vk_intensities(u20, z):
    """Turbulence intensities ``(sigma_u, sigma_v, sigma_w)`` in ft/s.

    Parameters
    ----------
    u20 : float
        Mean wind speed at 20 ft, ft/s.
    z : float
        Altitude, ft.
    """
    _require_positive(u20=u20, z=z)
    sigma_w = 0.1 * u20
    sigma_u = sigma_w / (0.177 + 0.000823 * z) ** 0.4
    return sigma_u, sigma_u, sigma_w


@dataclass(frozen=True)
class VonKarmanParams:
    """Inputs of the low-altitude Von Karman model, in imperial units.

    ``u20`` is in ft/s, ``z`` and ``b`` (wingspan) in ft.  Use :meth:`from_si`
    to build from metric values.
    """

    u20: float
    z: float
    b: float

    def __post_init__(self):
        _require_positive(u20=self.u20, z=self.z, b=self.b)
        if self.z >= VK_MAX_ALTITUDE_FT:
            warnings.warn(f"altitude {self.z:.1f} ft is outside the low-altitude "
                          f"Von Karman model (< {VK_MAX_ALTITUDE_FT:.0f} ft)",
                          OutOfBandWarning, stacklevel=3)

    @classmethod
    def from_si(cls, u20, z, b):
        return cls(u20 * FT_PER_M, z * FT_PER_M, b * FT_PER_M)

    @property
    def lengths(self):
        return vk_scaling_lengths(self.z)

    @property
    def intensities(self):
        return vk_intensities(self.u20, self.z)


def _vk_imperial(family, p: VonKarmanParams, omega):
    """Table forms in ft^2/s (translational) or 1/s (rotational) per rad/s."""
    lu, lv, lw = p.lengths
    su, sv, sw = p.intensities
    u = p.u20

    def transverse(sigma, length):
        x2 = (_VK_GAIN * length * omega / u) ** 2
        return sigma**2 * length / (math.pi * u) * (1.0 + 8.0 / 3.0 * x2) / (1.0 + x2) ** (11.0 / 6.0)

    if family is Family.VK_LON:
        x2 = (_VK_GAIN * lu * omega / u) ** 2
        return 2.0 * su**2 * lu / (math.pi * u) / (1.0 + x2) ** (5.0 / 6.0)
    if family is Family.VK_LAT:
        return transverse(sv, lv)
    if family is Family.VK_VERT:
        return transverse(sw, lw)
    if family is Family.VK_ROLL:
        return (sw**2 / (lw * u) * 0.8 * (math.pi * lw / (4.0 * p.b)) ** (1.0 / 3.0)
                / (1.0 + (4.0 * p.b * omega / (math.pi * u)) ** 2))
    # the table's +/- is a cross-spectral sign; the auto-spectrum takes +
    if family is Family.VK_PITCH:
        return ((omega / u) ** 2 / (1.0 + (4.0 * p.b * omega / (math.pi * u)) ** 2)
                * transverse(sw, lw))
    if family is Family.VK_YAW:
        return ((omega / u) ** 2 / (1.0 + (3.0 * p.b * omega / (math.pi * u)) ** 2)
                * transverse(sv, lv))
    raise ValueError(f"{family} is not a Von Karman family")


def vk_psd(family, params: VonKarmanParams, omega):
    """Von Karman PSD in SI: m^2/s^2 per rad/s, or rad^2/s^2 per rad/s for rotations."""
    s = _vk_imperial(family, params, omega)
    if family in _ROTATIONAL:
        return s
    return s / FT_PER_M**2


# -- over-water models ------------------------------------------------------

@dataclass(frozen=True)
class HarrisParams:
    """Harris model: 10 m wind ``u10`` (m/s), scale length ``L`` (m), drag ``C``."""

    u10: float
    L: float = 60.0
    C: float = 0.002

    def __post_init__(self):
        _require_positive(u10=self.u10, L=self.L, C=self.C)
        if not 50.0 <= self.L <= 400.0:
            warnings.warn(f"Harris scale length {self.L} m is outside the 50-400 m "
                          "range the model was fitted over", OutOfBandWarning, stacklevel=3)


@dataclass(frozen=True)
class ForristallParams:
    """Forristall model inputs; ``u_z`` is the wind speed at altitude ``z``."""

    z: float
    u_z: float
    u_star: Optional[float] = None
    A_f: float = 42.0
    B_f: float = 63.0

    def __post_init__(self):
        _require_positive(z=self.z, u_z=self.u_z, A_f=self.A_f, B_f=self.B_f)
        if self.u_star is not None:
            _require_positive(u_star=self.u_star)


@dataclass(frozen=True)
class OchiShinParams:
    z: float
    u_z: float
    u_star: Optional[float] = None

    def __post_init__(self):
        _require_positive(z=self.z, u_z=self.u_z)
        if self.u_star is not None:
            _require_positive(u_star=self.u_star)


def harris_reduced_frequency(f, L, u10):
    return f * L / u10


def forristall_reduced_frequency(f, z, u_z):
    return f * z / u_z


def ochi_shin_nondimensional(fr):
    """Non-dimensional Ochi-Shin spectrum as a function of reduced frequency ``f z / u(z)``.

    The three branches are used exactly as printed, including the jump at 0.1.
    """
    fr = np.asarray(fr, dtype=np.float64)
    low = 583.0 * fr
    mid = 420.0 * fr**0.7 / (1.0 + fr**0.35) ** 11.5
    high = 838.0 * fr / (1.0 + fr**0.3) ** 11.5
    out = np.where(fr <= 0.003, low, np.where(fr <= 0.1, mid, high))
    return out[()] if out.ndim == 0 else out


def _needs_u_star(params):
    if params.u_star is None:
        raise ConfigurationError(
            f"{type(params).__name__} needs a friction velocity (u_star) to be evaluated")
    return params.u_star


def harris_psd_hz(params: HarrisParams, f):
    fh = harris_reduced_frequency(f, params.L, params.u10)
    return 4.0 * params.C * params.u10**2 * fh / (f * (2.0 + fh**2) ** (5.0 / 6.0))


def forristall_psd_hz(params: ForristallParams, f):
    u_star = _needs_u_star(params)
    ff = forristall_reduced_frequency(f, params.z, params.u_z)
    sigma = 1.92 * u_star
    return params.A_f * ff * sigma**2 / (f * (1.0 + params.B_f * ff) ** (5.0 / 3.0))


def ochi_shin_psd_hz(params: OchiShinParams, f):
    u_star = _needs_u_star(params)
    ff = forristall_reduced_frequency(f, params.z, params.u_z)
    return ochi_shin_nondimensional(ff) * u_star**2 / f


_PER_HZ = {
    Family.HARRIS: (HarrisParams, harris_psd_hz),
    Family.FORRISTALL: (ForristallParams, forristall_psd_hz),
    Family.OCHI_SHIN: (OchiShinParams, ochi_shin_psd_hz),
}


# -- the evaluator ----------------------------------------------------------

@dataclass(frozen=True)
class ComponentRatio:
    """Frequency-dependent Von Karman ratio used to derive a component from Ochi-Shin."""

    component: Component
    params: VonKarmanParams

    def __call__(self, omega):
        return _component_ratio(self.component, self.params, omega)


Params = Union[VonKarmanParams, HarrisParams, ForristallParams, OchiShinParams]


@dataclass(frozen=True)
class SpectrumModel:
    """A one-sided PSD: a model family, its parameters and a multiplier.

    ``ratio`` optionally multiplies the spectrum by a per-frequency Von Karman
    component ratio; it is how the lateral, vertical and rotational over-water
    components are built from the single Ochi-Shin spectrum.
    """

    family: Family
    params: Params
    scale: float = 1.0
    ratio: Optional[ComponentRatio] = field(default=None)

    def __post_init__(self):
        if not self.scale >= 0:
            raise ConfigurationError(f"scale must be non-negative, got {self.scale!r}")
        expected = VonKarmanParams if self.family in VK_FAMILIES else _PER_HZ[self.family][0]
        if not isinstance(self.params, expected):
            raise ConfigurationError(
                f"{self.family.value} expects {expected.__name__}, got {type(self.params).__name__}")

    def __call__(self, omega):
        return eval_psd(self, omega)


def eval_psd(model: SpectrumModel, omega):
    """Evaluate ``model`` at angular frequency ``omega`` (rad/s, scalar or array).

    Frequencies above 8 Hz are evaluated but raise an :class:`OutOfBandWarning`.
    """
    w = np.asarray(omega, dtype=np.float64)
    if np.any(~(w > 0)):
        raise DomainError("PSD frequencies must be positive")
    if np.any(w > OMEGA_MAX_VALID * (1.0 + 1e-12)):
        warnings.warn("PSD evaluated above the validated 0-8 Hz band",
                      OutOfBandWarning, stacklevel=2)
    if model.family in VK_FAMILIES:
        s = vk_psd(model.family, model.params, w)
    else:
        s = _PER_HZ[model.family][1](model.params, w / TWO_PI) / TWO_PI
    s = model.scale * s
    if model.ratio is not None:
        s = s * model.ratio(w)
    s = np.asarray(s, dtype=np.float64)
    return float(s) if s.ndim == 0 else s


def _component_ratio(component, params, omega):
    w = np.asarray(omega, dtype=np.float64)
    if np.any(~(w > 0)):
        raise DomainError("ratio frequencies must be positive")
    return vk_psd(_COMPONENT_FAMILY[component], params, w) / vk_psd(Family.VK_LON, params, w)


def os_component_ratio(component, v_air, z, b, omega):
    """Von Karman ``Phi_component / Phi_u`` at matched conditions, SI inputs.

    Translational ratios are dimensionless; rotational ratios carry 1/m^2 so that
    multiplying an over-water longitudinal PSD (m^2/s^2 per rad/s) yields
    rad^2/s^2 per rad/s.
    """
    _require_positive(v_air=v_air, z=z, b=b)
    params = VonKarmanParams.from_si(v_air, z, b)
    r = _component_ratio(Component(component), params, omega)
    return float(r) if np.ndim(r) == 0 else r
