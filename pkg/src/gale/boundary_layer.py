"""Mean-wind profile and the coupled friction-velocity / sea-roughness solve."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

from gale.errors import ConvergenceError, DivergenceError, DomainError

GRAVITY = 9.81
# Von Karman constant of the log profile, and the one used in the 10 m
# rearrangement that drives the friction-velocity solve.  Both are kept as
# published.
KARMAN_PROFILE = 0.42
KARMAN_SOLVER = 0.4
CHARNOCK_ALPHA = 0.0144
REFERENCE_HEIGHT = 10.0


class Closure(enum.Enum):
    CHARNOCK = "charnock"
    VOLKOV = "volkov"


def log_wind_profile(z, u_star, z0):
    """Mean wind speed (m/s) at altitude ``z`` from the logarithmic profile."""
    if not (u_star > 0 and z0 > 0):
        raise DomainError("u_star and z0 must be positive")
    if not z > z0:
        raise DomainError(f"altitude {z} m must exceed the roughness length {z0} m")
    return u_star / KARMAN_PROFILE * math.log(z / z0)


def friction_velocity_from_stress(tau, rho):
    """Friction velocity ``sqrt(tau / rho)`` from surface shear stress (Pa) and density."""
    if tau < 0 or not rho > 0:
        raise DomainError("need tau >= 0 and rho > 0")
    return math.sqrt(tau / rho)


def charnock_roughness(u_star):
    """Charnock sea roughness length, ``0.0144 u*^2 / g``."""
    if not u_star > 0:
        raise DomainError(f"u_star must be positive, got {u_star!r}")
    return CHARNOCK_ALPHA * u_star**2 / GRAVITY


def volkov_nondimensional_roughness(wave_age):
    if wave_age <= 0.35:
        return 0.0185
    if wave_age < 35.0:
        return 0.03 * wave_age * math.exp(-0.14 * wave_age)
    return 0.008


def volkov_roughness(u_star, c_p):
    """Wave-age dependent sea roughness length (m).

    Parameters
    ----------
    u_star : float
        Friction velocity, m/s.
    c_p : float
        Phase speed of the wind waves, m/s.
    """
    if not (u_star > 0 and c_p > 0):
        raise DomainError("u_star and c_p must be positive")
    return volkov_nondimensional_roughness(c_p / u_star) * u_star**2 / GRAVITY


def drag_coefficient_estimate(u10):
    """Initial drag coefficient guess ``(0.65 + 0.067 u10) * 1e-3``."""
    if not u10 > 0:
        raise DomainError(f"u10 must be positive, got {u10!r}")
    return (0.65 + 0.067 * u10) * 1e-3


@dataclass(frozen=True)
class SeaStateInput:
    """Inputs of the friction-velocity solve.

    ``c_p`` defaults to half of ``u10``; ``epsilon`` is the absolute tolerance on
    successive friction-velocity iterates (m/s).
    """

    u10: float
    c_p: Optional[float] = None
    closure: Closure = Closure.VOLKOV
    epsilon: float = 0.001
    max_iter: int = 100

    def __post_init__(self):
        if not self.u10 > 0:
            raise DomainError(f"u10 must be positive, got {self.u10!r}")
        if self.c_p is None:
            object.__setattr__(self, "c_p", 0.5 * self.u10)
        if not self.c_p > 0:
            raise DomainError(f"c_p must be positive, got {self.c_p!r}")
        object.__setattr__(self, "closure", Closure(self.closure))
        if not self.epsilon > 0:
            raise DomainError("epsilon must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        ratio = self.c_p / self.u10
        if not 0.03 <= ratio <= 1.0:
            warnings.warn(f"c_p/u10 = {ratio:.3g} is outside the realistic 0.03-1.0 range",
                          RuntimeWarning, stacklevel=3)


@dataclass(frozen=True)
class SeaStateSolution:
    u_star: float
    z0: float
    C: float
    iterations: int
    wave_age: float


def roughness(u_star, inp: SeaStateInput):
    if inp.closure is Closure.CHARNOCK:
        return charnock_roughness(u_star)
    return volkov_roughness(u_star, inp.c_p)


def fixed_point_map(u_star, inp: SeaStateInput):
    """One substitution step: ``0.4 u10 / ln(10 / z0(u*))``."""
    z0 = roughness(u_star, inp)
    if z0 >= REFERENCE_HEIGHT:
        raise DivergenceError(f"roughness length {z0:.3g} m reached the 10 m reference height",
                              [u_star])
    return KARMAN_SOLVER * inp.u10 / math.log(REFERENCE_HEIGHT / z0), z0


def solve_friction_velocity(inp: SeaStateInput) -> SeaStateSolution:
    """Successive substitution for the friction velocity over water.

    Starts from ``u* = sqrt(C) u10`` with the drag estimate, alternates roughness
    and friction velocity until successive iterates differ by at most
    ``epsilon``.  The returned ``z0`` is the roughness that produced the final
    ``u_star``, so ``(u_star, z0)`` satisfy the 10 m rearrangement exactly.
    """
    u = math.sqrt(drag_coefficient_estimate(inp.u10)) * inp.u10
    history = [u]
    for it in range(1, inp.max_iter + 1):
        try:
            u_next, z0 = fixed_point_map(u, inp)
        except DivergenceError as exc:
            raise DivergenceError(str(exc), history) from None
        history.append(u_next)
        if abs(u_next - u) <= inp.epsilon:
            return SeaStateSolution(u_star=u_next, z0=z0, C=u_next**2 / inp.u10**2,
                                    iterations=it, wave_age=inp.c_p / u_next)
        u = u_next
    raise ConvergenceError(
        f"friction velocity did not converge in {inp.max_iter} iterations", history)


def profile_through_u10(z, u10, z0):
    """Log profile anchored so that it passes through ``u10`` at 10 m."""
    if not z > z0:
        raise DomainError(f"altitude {z} m must exceed the roughness length {z0} m")
    return u10 * math.log(z / z0) / math.log(REFERENCE_HEIGHT / z0)
