"""Seedable spatio-temporal wind for vehicle simulation.

Typical use::

    from gale import EnvironmentConfig, build_engine
    engine = build_engine(EnvironmentConfig(v_air=6.0, theta_w=0.3))
    sample = engine.sample((0.0, 0.0, 10.0), t=1.5)
"""

from gale.boundary_layer import (Closure, SeaStateInput, SeaStateSolution, charnock_roughness,
                                 drag_coefficient_estimate, friction_velocity_from_stress,
                                 log_wind_profile, solve_friction_velocity, volkov_roughness)
from gale.engine import (EnvironmentConfig, GridSettings, GustSettings, Terrain, WindEngine,
                         WindSample, build_engine, sample_many, sample_wind)
from gale.errors import (ConfigurationError, ConvergenceError, DivergenceError, DomainError,
                         GaleError, OutOfBandWarning)
from gale.field import (FieldRealization, GridSpec, SpreadingSpec, build_field,
                        directional_spectrum, sample_scalar, spreading, synthesize_timeseries)
from gale.gusts import (GustEvent, GustSchedule, GustShapeParams, gust_amplitude, gust_duration,
                        gust_shape, gust_spread_probability, gust_velocity, schedule_gusts)
from gale.kernels import BACKEND
from gale.spectra import (Component, Family, ForristallParams, HarrisParams, OchiShinParams,
                          SpectrumModel, VonKarmanParams, eval_psd, os_component_ratio,
                          vk_intensities, vk_scaling_lengths)

__version__ = "0.1.0"

__all__ = [
    "Closure", "SeaStateInput", "SeaStateSolution", "charnock_roughness",
    "drag_coefficient_estimate", "friction_velocity_from_stress", "log_wind_profile",
    "solve_friction_velocity", "volkov_roughness", "EnvironmentConfig", "GridSettings",
    "GustSettings", "Terrain", "WindEngine", "WindSample", "build_engine", "sample_many",
    "sample_wind", "ConfigurationError", "ConvergenceError", "DivergenceError", "DomainError",
    "GaleError", "OutOfBandWarning", "FieldRealization", "GridSpec", "SpreadingSpec",
    "build_field", "directional_spectrum", "sample_scalar", "spreading",
    "synthesize_timeseries", "GustEvent", "GustSchedule", "GustShapeParams", "gust_amplitude",
    "gust_duration", "gust_shape", "gust_spread_probability", "gust_velocity",
    "schedule_gusts", "BACKEND", "Component", "Family", "ForristallParams", "HarrisParams",
    "OchiShinParams", "SpectrumModel", "VonKarmanParams", "eval_psd", "os_component_ratio",
    "vk_intensities", "vk_scaling_lengths",
]
