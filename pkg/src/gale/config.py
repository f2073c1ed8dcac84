"""Run configuration files.

A run file is INI-style text whose sections give the dotted key prefixes::

    [environment]
    terrain = over_water
    v_air = 12.8

    [grid]
    seed = 7

    [output]
    vehicles = [[0, 0, 10], [20, 0, 10]]

Values are parsed as JSON when possible (numbers, ``true``/``false``, lists,
``null``) and as bare strings otherwise.  Unknown sections or keys are errors.
"""

from __future__ import annotations

import configparser
import dataclasses
import io
import json
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Tuple

from gale.boundary_layer import Closure
from gale.engine import EnvironmentConfig, GridSettings, GustSettings, Terrain
from gale.errors import ConfigurationError

FIELD_COMPONENTS = ("lon", "lat", "vert", "roll", "pitch", "yaw")


@dataclass(frozen=True)
class OutputSettings:
    dir: str = "."
    sample_rate: float = 50.0
    duration: float = 60.0
    position: Tuple[float, float, float] = (0.0, 0.0, 10.0)
    vehicles: Tuple[Tuple[float, float, float], ...] = ((0.0, 0.0, 10.0), (20.0, 0.0, 10.0))
    trajectory: Optional[str] = None
    field_extent: float = 100.0
    field_spacing: float = 1.0
    field_time: float = 0.0
    field_altitude: float = 10.0
    field_component: str = "lon"

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ConfigurationError("output.sample_rate must be positive")
        if not self.duration > 0:
            raise ConfigurationError("output.duration must be positive")
        if not (self.field_extent > 0 and self.field_spacing > 0):
            raise ConfigurationError("output.field_extent and output.field_spacing must be positive")
        if self.field_component not in FIELD_COMPONENTS:
            raise ConfigurationError(f"output.field_component must be one of {FIELD_COMPONENTS}")


@dataclass(frozen=True)
class RunConfig:
    environment: EnvironmentConfig = field(default_factory=EnvironmentConfig)
    output: OutputSettings = field(default_factory=OutputSettings)


# section name -> (path into RunConfig, dataclass type)
_SECTIONS = {
    "environment": (("environment",), EnvironmentConfig),
    "grid": (("environment", "grid"), GridSettings),
    "gust": (("environment", "gust"), GustSettings),
    "output": (("output",), OutputSettings),
}
_NESTED = {"grid", "gust"}


def _scalar_keys(cls, section):
    return [f.name for f in fields(cls) if not (section == "environment" and f.name in _NESTED)]


def _coerce(name, value, default):
    """Coerce a parsed value to the type of the field's default."""
    try:
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise TypeError
            return value
        if isinstance(default, enum_types()):
            return type(default)(value)
        if isinstance(default, int):
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise TypeError
            return float(value)
        if isinstance(default, tuple):
            return _tuplify(value)
        if default is None:
            # optional fields: floats for z_ref, strings for paths
            if value is None:
                return None
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                return float(value)
            return str(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"bad value for {name}: {value!r}") from None


def enum_types():
    return (Terrain, Closure)


def _tuplify(v):
    if isinstance(v, (list, tuple)):
        return tuple(_tuplify(x) for x in v)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise TypeError
    return float(v)


def _parse_value(raw):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw.strip()


def loads(text) -> RunConfig:
    """Parse and validate a run configuration."""
    parser = configparser.ConfigParser(interpolation=None, default_section="__defaults__")
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse configuration: {exc}") from None
    values = {name: {} for name in _SECTIONS}
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigurationError(f"unknown configuration section '{section}'")
        cls = _SECTIONS[section][1]
        allowed = _scalar_keys(cls, section)
        defaults = {f.name: _field_default(f) for f in fields(cls)}
        for key, raw in parser.items(section):
            if key not in allowed:
                raise ConfigurationError(f"unknown configuration key '{section}.{key}'")
            values[section][key] = _coerce(f"{section}.{key}", _parse_value(raw), defaults[key])
    try:
        grid = GridSettings(**values["grid"])
        gust = GustSettings(**values["gust"])
        env = EnvironmentConfig(grid=grid, gust=gust, **values["environment"])
        out = OutputSettings(**values["output"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(str(exc)) from None
    return RunConfig(environment=env, output=out)


def load(path) -> RunConfig:
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read configuration {path}: {exc}") from None


def _field_default(f):
    if f.default is not dataclasses.MISSING:
        return f.default
    return f.default_factory()


def _format_value(v):
    if isinstance(v, enum_types()):
        return v.value
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return json.dumps(_listify(v))
    if isinstance(v, float):
        return repr(v)
    return json.dumps(v)


def _listify(v):
    return [_listify(x) for x in v] if isinstance(v, tuple) else v


def dumps(cfg: RunConfig) -> str:
    """Serialise every setting; :func:`loads` reproduces ``cfg`` exactly."""
    buf = io.StringIO()
    for section, (path, cls) in _SECTIONS.items():
        obj = cfg
        for attr in path:
            obj = getattr(obj, attr)
        buf.write(f"[{section}]\n")
        for key in _scalar_keys(cls, section):
            buf.write(f"{key} = {_format_value(getattr(obj, key))}\n")
        buf.write("\n")
    return buf.getvalue()


def with_seed(cfg: RunConfig, seed) -> RunConfig:
    return replace(cfg, environment=cfg.environment.with_seed(seed))
