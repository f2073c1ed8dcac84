"""Wind engine: mean wind, six turbulence components and gusts at any point.

Positions are inertial ``(x, y, z)`` in metres with ``z`` the altitude.  The
turbulence spectra depend on altitude, so the engine keeps one frozen set of
component fields per distinct query altitude; all of them share the same
counter-based phases, which keeps the realization independent of which
altitudes happen to be queried first.
"""

from __future__ import annotations

import enum
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from gale import rng
from gale.boundary_layer import (Closure, SeaStateInput, SeaStateSolution, profile_through_u10,
                                 solve_friction_velocity)
from gale.errors import ConfigurationError, DomainError
from gale.field import (DEFAULT_F_MAX, DEFAULT_F_MIN, DEFAULT_M_ANGLE, DEFAULT_N_FREQ,
                        GridSpec, SpreadingSpec, build_field)
from gale.gusts import (DEFAULT_LX, DEFAULT_LY, DEFAULT_RATE, GustSchedule, read_schedule,
                        schedule_gusts)
from gale.spectra import (FT_PER_M, TWO_PI, Component, ComponentRatio, Family, OchiShinParams,
                          SpectrumModel, VonKarmanParams)

TWENTY_FT = 20.0 / FT_PER_M
COMPONENTS = ("lon", "lat", "vert", "roll", "pitch", "yaw")

# Pitch shares its phases with vertical and yaw with lateral.
_STREAMS = {
    "lon": rng.STREAM_LON,
    "lat": rng.STREAM_LAT,
    "vert": rng.STREAM_VERT,
    "roll": rng.STREAM_ROLL,
    "pitch": rng.STREAM_VERT,
    "yaw": rng.STREAM_LAT,
}
_VK_FAMILY = dict(zip(COMPONENTS, (Family.VK_LON, Family.VK_LAT, Family.VK_VERT,
                                   Family.VK_ROLL, Family.VK_PITCH, Family.VK_YAW)))
_MAX_CACHED_ALTITUDES = 64


class Terrain(enum.Enum):
    OVER_LAND = "over_land"
    OVER_WATER = "over_water"


@dataclass(frozen=True)
class GridSettings:
    n_freq: int = DEFAULT_N_FREQ
    m_angle: int = DEFAULT_M_ANGLE
    f_min: float = DEFAULT_F_MIN
    f_max: float = DEFAULT_F_MAX
    spreading_s: float = 1.0
    seed: int = 0

    def spec(self) -> GridSpec:
        return GridSpec(self.n_freq, self.m_angle, TWO_PI * self.f_min, TWO_PI * self.f_max,
                        self.seed)


@dataclass(frozen=True)
class GustSettings:
    enable: bool = True
    rate: float = DEFAULT_RATE
    l_x: float = DEFAULT_LX
    l_y: float = DEFAULT_LY
    horizon: float = 3600.0
    upwind_distance: float = 100.0
    centroid: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    schedule_file: Optional[str] = None


@dataclass(frozen=True)
class EnvironmentConfig:
    """Everything needed to build a :class:`WindEngine`.

    ``v_air`` is the mean wind at ``z_ref`` (default 20 ft over land, 10 m over
    water).  Over land it is carried to 20 ft with a log profile of roughness
    ``land_z0``; over water it must be given at 10 m.
    """

    terrain: Terrain = Terrain.OVER_LAND
    v_air: float = 6.0
    theta_w: float = 0.0
    z_ref: Optional[float] = None
    wingspan: float = 0.34
    cp_ratio: float = 0.5
    closure: Closure = Closure.VOLKOV
    land_z0: float = 0.03
    turbulence: bool = True
    grid: GridSettings = field(default_factory=GridSettings)
    gust: GustSettings = field(default_factory=GustSettings)

    def __post_init__(self):
        object.__setattr__(self, "terrain", Terrain(self.terrain))
        object.__setattr__(self, "closure", Closure(self.closure))
        if not self.v_air >= 0:
            raise ConfigurationError("v_air must be non-negative")
        if not 0 <= self.theta_w < TWO_PI:
            raise ConfigurationError("theta_w must lie in [0, 2*pi)")
        if not self.wingspan > 0:
            raise ConfigurationError("wingspan must be positive")
        if not self.land_z0 > 0:
            raise ConfigurationError("land_z0 must be positive")
        if self.z_ref is not None and not self.z_ref > 0:
            raise ConfigurationError("z_ref must be positive")
        if self.terrain is Terrain.OVER_WATER:
            if not self.v_air > 0:
                raise ConfigurationError("over-water environments need v_air > 0")
            if not self.cp_ratio > 0:
                raise ConfigurationError("cp_ratio must be positive")
            if self.z_ref is not None and self.z_ref != 10.0:
                raise ConfigurationError("over-water mean wind must be given at z_ref = 10 m")
        if self.gust.enable and self.gust.rate > 0 and self.v_air == 0:
            raise ConfigurationError("gusts cannot propagate with zero mean wind")
        self.grid.spec()  # validates the grid
        SpreadingSpec(self.grid.spreading_s)

    def with_seed(self, seed):
        return replace(self, grid=replace(self.grid, seed=int(seed)))


@dataclass(frozen=True)
class WindSample:
    """Translational wind (m/s, inertial frame) and rotational wind (rad/s)."""

    v_air_vec: Tuple[float, float, float]
    omega_air_vec: Tuple[float, float, float]


class WindEngine:
    """Immutable wind environment; all query methods are thread-safe."""

    def __init__(self, cfg: EnvironmentConfig):
        self.cfg = cfg
        self.sea_state: Optional[SeaStateSolution] = None
        if cfg.terrain is Terrain.OVER_WATER:
            self.sea_state = solve_friction_velocity(
                SeaStateInput(u10=cfg.v_air, c_p=cfg.cp_ratio * cfg.v_air, closure=cfg.closure))
            self.u_ref = cfg.v_air
        else:
            z_ref = TWENTY_FT if cfg.z_ref is None else cfg.z_ref
            if not z_ref > cfg.land_z0:
                raise ConfigurationError("z_ref must exceed land_z0")
            self.u_ref = cfg.v_air * math.log(TWENTY_FT / cfg.land_z0) / math.log(z_ref / cfg.land_z0)
        self._grid = cfg.grid.spec()
        self._spread = SpreadingSpec(cfg.grid.spreading_s)
        self._has_turbulence = cfg.turbulence and cfg.v_air > 0
        self._fields = {}
        self._lock = threading.Lock()
        self.schedule = self._build_schedule()

    def _build_schedule(self) -> GustSchedule:
        g = self.cfg.gust
        if not g.enable or g.rate == 0:
            return GustSchedule(events=(), rate=0.0, seed=self.cfg.grid.seed)
        if g.schedule_file:
            return read_schedule(g.schedule_file, v_air=self.cfg.v_air, theta_w=self.cfg.theta_w,
                                 altitude=g.centroid[2], rate=g.rate, seed=self.cfg.grid.seed)
        return schedule_gusts(g.horizon, g.rate, self.cfg.grid.seed, v_air=self.cfg.v_air,
                              theta_w=self.cfg.theta_w, l_x=g.l_x, l_y=g.l_y,
                              centroid=g.centroid, upwind_distance=g.upwind_distance)

    # -- spectra ------------------------------------------------------------

    def spectrum_models(self, z):
        """The six component spectra at altitude ``z`` (m)."""
        if not z > 0:
            raise DomainError(f"query altitude must be positive, got {z!r}")
        b = self.cfg.wingspan
        if self.cfg.terrain is Terrain.OVER_LAND:
            vk = VonKarmanParams.from_si(self.u_ref, z, b)
            return {c: SpectrumModel(_VK_FAMILY[c], vk) for c in COMPONENTS}
        ss = self.sea_state
        u_z = profile_through_u10(z, self.cfg.v_air, ss.z0)
        base = OchiShinParams(z=z, u_z=u_z, u_star=ss.u_star)
        vk = VonKarmanParams.from_si(self.cfg.v_air, z, b)
        models = {"lon": SpectrumModel(Family.OCHI_SHIN, base)}
        for c in COMPONENTS[1:]:
            models[c] = SpectrumModel(Family.OCHI_SHIN, base,
                                      ratio=ComponentRatio(Component(c), vk))
        return models

    def fields_at(self, z):
        """Frozen component fields at altitude ``z``; ``None`` when turbulence is off."""
        if not self._has_turbulence:
            return None
        key = float(z)
        with self._lock:
            cached = self._fields.get(key)
        if cached is not None:
            return cached
        models = self.spectrum_models(key)
        built = {c: build_field(models[c], self._grid, self._spread, self.cfg.theta_w,
                                self.u_ref, stream=_STREAMS[c]) for c in COMPONENTS}
        with self._lock:
            if len(self._fields) >= _MAX_CACHED_ALTITUDES:
                self._fields.pop(next(iter(self._fields)))
            return self._fields.setdefault(key, built)

    # -- queries ------------------------------------------------------------

    def turbulence(self, p, t):
        """Wind-frame turbulence ``(lon, lat, vert, roll, pitch, yaw)`` at ``(p, t)``."""
        fields = self.fields_at(p[2])
        if fields is None:
            return (0.0,) * 6
        x = np.array([p[0]], dtype=np.float64)
        y = np.array([p[1]], dtype=np.float64)
        return tuple(float(fields[c].sample_points(x, y, t)[0]) for c in COMPONENTS)

    def gust(self, p, t):
        return self.schedule.velocity(p, t)

    def gust_active(self, p, t):
        return self.schedule.active(p, t)

    def wind_frame(self, p, t):
        """``(v_lon, v_lat, v_vert, roll, pitch, yaw)`` with mean wind and gusts included."""
        lon, lat, vert, roll, pitch, yaw = self.turbulence(p, t)
        return (lon + self.cfg.v_air + self.gust(p, t), lat, vert, roll, pitch, yaw)

    def sample(self, p, t) -> WindSample:
        if t < 0:
            raise DomainError("query time must be non-negative")
        v_lon, v_lat, v_vert, roll, pitch, yaw = self.wind_frame(p, t)
        c, s = math.cos(self.cfg.theta_w), math.sin(self.cfg.theta_w)
        return WindSample((v_lon * c - v_lat * s, v_lon * s + v_lat * c, v_vert),
                          (roll, pitch, yaw))

    def sample_many(self, positions, t, workers=1):
        """:meth:`sample` at every position, in order; ``workers > 1`` uses threads."""
        positions = [tuple(float(c) for c in p) for p in positions]
        if workers <= 1 or len(positions) < 2:
            return [self.sample(p, t) for p in positions]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: self.sample(p, t), positions))


def build_engine(cfg: EnvironmentConfig) -> WindEngine:
    return WindEngine(cfg)


def sample_wind(engine: WindEngine, p, t) -> WindSample:
    return engine.sample(p, t)


def sample_many(engine: WindEngine, positions, t, workers=1):
    return engine.sample_many(positions, t, workers=workers)
