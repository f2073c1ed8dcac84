"""Discrete propagating gusts.

A gust is a generalised bump in time (rise, hold, fall) scheduled by a
homogeneous Poisson process, carried downwind at the mean wind speed and
attenuated laterally by an exponential spread factor.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from gale import rng
from gale.errors import ConfigurationError, DomainError

DEFAULT_RATE = 13.5  # gusts per hour
DEFAULT_LX = 200.0
DEFAULT_LY = 250.0
# fraction of the gust duration given to each of rise (t_g1), hold and fall (t_g2)
RISE_FRACTION = 0.8
HOLD_FRACTION = 0.2

SCHEDULE_COLUMNS = ("t_start", "x", "y", "g1", "t_g1", "t_h", "t_g2", "l_x", "l_y")


def gust_amplitude(v_air):
    """Peak wind speed reached during a gust at mean wind ``v_air`` (m/s)."""
    if v_air < 0:
        raise DomainError(f"mean wind must be non-negative, got {v_air!r}")
    return max(52.0 / 43.0 * v_air - 1.0 / 8.0, 0.0)


def gust_duration(v_gust, v_air):
    """Gust time span (s) from the peak speed and the mean wind."""
    if v_gust < v_air:
        raise DomainError(f"gust speed {v_gust} is below the mean wind {v_air}")
    return 0.71 * (v_gust - v_air) + 3.51


@dataclass(frozen=True)
class GustShapeParams:
    """Parameters of the rise / hold / fall gust curve.

    The rise occupies ``0 < t < t_g1/2``, the plateau at ``g1`` lasts ``t_h``,
    and the fall takes ``t_g2/2``.  ``g4`` and ``g5`` control the dips before
    and after the gust; ``g3`` is where the base curve is cut off.
    """

    g1: float
    t_g1: float
    t_g2: float
    t_h: float = 0.0
    g3: float = 6.0
    g4: float = 2.0
    g5: float = 2.0

    def __post_init__(self):
        if not self.g1 >= 0:
            raise ConfigurationError("g1 must be non-negative")
        if not (self.t_g1 > 0 and self.t_g2 > 0):
            raise ConfigurationError("t_g1 and t_g2 must be positive")
        if not self.t_h >= 0:
            raise ConfigurationError("t_h must be non-negative")
        if not (self.g3 > 0 and self.g4 > 0 and self.g5 > 0):
            raise ConfigurationError("g3, g4 and g5 must be positive")

    @property
    def g2r(self):
        return 2.0 * self.g3 / self.t_g1

    @property
    def g2f(self):
        return 2.0 * self.g3 / self.t_g2

    @property
    def support(self):
        """Length of the time window on which the gust is non-zero."""
        return 0.5 * self.t_g1 + self.t_h + 0.5 * self.t_g2

    @classmethod
    def from_duration(cls, g1, tau, **kw):
        """Split a total duration ``tau`` into rise, hold and fall spans."""
        return cls(g1=g1, t_g1=RISE_FRACTION * tau, t_g2=RISE_FRACTION * tau,
                   t_h=HOLD_FRACTION * tau, **kw)


def gust_shape(t, p: GustShapeParams):
    """Nominal gust speed increment at time ``t`` since gust start."""
    if t <= 0.0 or t >= p.support:
        return 0.0
    rise_end = 0.5 * p.t_g1
    hold_end = rise_end + p.t_h
    if t < rise_end:
        a = p.g2r * t - p.g3
        return p.g1 * (1.0 - a * a) * math.exp(-a * a / p.g4)
    if t <= hold_end:
        return p.g1
    t_star = t + 0.5 * (p.t_g2 - p.t_g1) - p.t_h
    a = p.g2f * t_star - p.g3
    return p.g1 * (1.0 - a * a) * math.exp(-a * a / p.g5)


def gust_spread_probability(dx, dy, l_x, l_y):
    """Detection probability at offset ``(dx, dy)`` from the gust centre, used as a gain.

    ``dx`` is measured along the wind; queries upwind of the centre (``dx < 0``)
    get a longitudinal factor of 1.
    """
    if not (l_x > 0 and l_y > 0):
        raise DomainError("l_x and l_y must be positive")
    return math.exp(-max(dx, 0.0) / l_x) * math.exp(-abs(dy) / l_y)


@dataclass(frozen=True)
class GustEvent:
    t_start: float
    origin: Tuple[float, float, float]
    shape: GustShapeParams
    l_x: float = DEFAULT_LX
    l_y: float = DEFAULT_LY
    theta_w: float = 0.0
    v_air: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "origin", tuple(float(c) for c in self.origin))
        if len(self.origin) != 3:
            raise ConfigurationError("gust origin must be a 3-vector")
        if not (self.l_x > 0 and self.l_y > 0):
            raise ConfigurationError("l_x and l_y must be positive")
        if not self.v_air > 0:
            raise ConfigurationError("a gust needs a positive mean wind to propagate")

    def local_time(self, p, t):
        """Retarded time and wind-frame offsets ``(t*, dx, dy)`` of point ``p`` at ``t``.

        The gust centre leaves ``origin`` at ``t_start`` and travels at ``v_air``
        along ``theta_w``; ``dx, dy`` are measured from that moving centre.
        """
        c, s = math.cos(self.theta_w), math.sin(self.theta_w)
        ex = p[0] - self.origin[0]
        ey = p[1] - self.origin[1]
        along = ex * c + ey * s
        across = -ex * s + ey * c
        elapsed = t - self.t_start
        t_local = elapsed - along / self.v_air
        return t_local, along - self.v_air * elapsed, across


def gust_velocity(e: GustEvent, p, t):
    """Gust speed increment along the prevailing wind at point ``p`` and time ``t``."""
    t_local, dx, dy = e.local_time(p, t)
    nominal = gust_shape(t_local, e.shape)
    if nominal == 0.0:
        return 0.0
    return gust_spread_probability(dx, dy, e.l_x, e.l_y) * nominal


def is_active(e: GustEvent, p, t):
    t_local, _, _ = e.local_time(p, t)
    return 0.0 < t_local < e.shape.support


@dataclass(frozen=True)
class GustSchedule:
    events: Tuple[GustEvent, ...]
    rate: float
    seed: int

    def __len__(self):
        return len(self.events)

    def velocity(self, p, t):
        """Sum of all gusts at ``(p, t)``; overlapping gusts superpose."""
        return sum(gust_velocity(e, p, t) for e in self.events)

    def active(self, p, t):
        return any(is_active(e, p, t) for e in self.events)

    def inter_arrivals(self):
        starts = np.array([e.t_start for e in self.events])
        return np.diff(np.concatenate(([0.0], starts)))


def make_event(t_start, origin, v_air, theta_w=0.0, l_x=DEFAULT_LX, l_y=DEFAULT_LY):
    """A gust with amplitude and duration from the mean-wind fits.

    The shape amplitude ``g1`` is the increment of the peak speed over the mean
    wind, and the same increment sets the duration.
    """
    v_gust = gust_amplitude(v_air)
    increment = max(v_gust - v_air, 0.0)
    tau = gust_duration(v_air + increment, v_air)
    return GustEvent(t_start=t_start, origin=origin,
                     shape=GustShapeParams.from_duration(increment, tau),
                     l_x=l_x, l_y=l_y, theta_w=theta_w, v_air=v_air)


def schedule_gusts(horizon, rate=DEFAULT_RATE, seed=0, *, v_air, theta_w=0.0,
                   l_x=DEFAULT_LX, l_y=DEFAULT_LY, centroid=(0.0, 0.0, 0.0),
                   upwind_distance=100.0) -> GustSchedule:
    """Poisson gust arrivals on ``[0, horizon]`` seconds at ``rate`` gusts per hour.

    Inter-arrival times are exponential, drawn from the counter-based generator
    so the k-th arrival depends only on ``(seed, k)``.  Every gust starts
    ``upwind_distance`` metres upwind of ``centroid``.
    """
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    if rate < 0:
        raise DomainError("rate must be non-negative")
    if rate == 0:
        return GustSchedule(events=(), rate=rate, seed=seed)
    mean_gap = 3600.0 / rate
    c, s = math.cos(theta_w), math.sin(theta_w)
    origin = (centroid[0] - upwind_distance * c, centroid[1] - upwind_distance * s,
              centroid[2])
    events = []
    t = 0.0
    k = 0
    while True:
        u = float(rng.uniform(seed, rng.STREAM_GUST, k)[0])
        t += -math.log1p(-u) * mean_gap
        if t > horizon:
            break
        events.append(make_event(t, origin, v_air, theta_w, l_x, l_y))
        k += 1
    return GustSchedule(events=tuple(events), rate=rate, seed=seed)


# -- replay files -----------------------------------------------------------

def write_schedule(schedule: GustSchedule, path):
    """Write ``schedule`` to a file path or an open text stream."""
    if hasattr(path, "write"):
        _write_rows(schedule, path)
        return
    with open(path, "w", newline="") as fh:
        _write_rows(schedule, fh)


def _write_rows(schedule, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SCHEDULE_COLUMNS)
    for e in schedule.events:
        row = (e.t_start, e.origin[0], e.origin[1], e.shape.g1, e.shape.t_g1,
               e.shape.t_h, e.shape.t_g2, e.l_x, e.l_y)
        w.writerow([format(v, ".17g") for v in row])


def read_schedule(path, *, v_air, theta_w=0.0, altitude=0.0, rate=float("nan"), seed=0):
    """Load a schedule written by :func:`write_schedule` for replay."""
    events = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(SCHEDULE_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ConfigurationError(f"gust schedule {path} lacks columns {sorted(missing)}")
        for row in reader:
            r = {k: float(row[k]) for k in SCHEDULE_COLUMNS}
            shape = GustShapeParams(g1=r["g1"], t_g1=r["t_g1"], t_g2=r["t_g2"], t_h=r["t_h"])
            events.append(GustEvent(t_start=r["t_start"], origin=(r["x"], r["y"], altitude),
                                    shape=shape, l_x=r["l_x"], l_y=r["l_y"],
                                    theta_w=theta_w, v_air=v_air))
    events.sort(key=lambda e: e.t_start)
    return GustSchedule(events=tuple(events), rate=rate, seed=seed)
