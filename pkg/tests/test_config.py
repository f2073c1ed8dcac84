import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gale import config
from gale.boundary_layer import Closure
from gale.engine import COMPONENTS, Terrain, WindEngine
from gale.errors import ConfigurationError

EXAMPLE = """
[environment]
terrain = over_water
v_air = 12.8
theta_w = 0.5
cp_ratio = 0.6

[grid]
n_freq = 128
seed = 7

[gust]
rate = 20
centroid = [10, 0, 0]

[output]
vehicles = [[0, 0, 10], [20, 0, 10], [40, 5, 12]]
duration = 30
"""


def test_parse_example():
    cfg = config.loads(EXAMPLE)
    env = cfg.environment
    assert env.terrain is Terrain.OVER_WATER and env.v_air == 12.8 and env.theta_w == 0.5
    assert env.grid.n_freq == 128 and env.grid.seed == 7
    assert env.gust.rate == 20.0 and env.gust.centroid == (10.0, 0.0, 0.0)
    assert cfg.output.vehicles[2] == (40.0, 5.0, 12.0)
    assert cfg.output.sample_rate == 50.0


def test_defaults_when_empty():
    assert config.loads("") == config.RunConfig()


def test_unknown_key_names_the_key():
    with pytest.raises(ConfigurationError, match=r"'grid\.n_freqs'"):
        config.loads("[grid]\nn_freqs = 3\n")
    with pytest.raises(ConfigurationError, match="section 'wind'"):
        config.loads("[wind]\nv = 3\n")
    # nested settings are not keys of the environment section
    with pytest.raises(ConfigurationError):
        config.loads("[environment]\ngrid = 3\n")


@pytest.mark.parametrize("text", [
    "[grid]\nn_freq = 2.5\n",
    "[grid]\nn_freq = many\n",
    "[environment]\nterrain = lunar\n",
    "[environment]\nturbulence = 1\n",
    "[environment]\nv_air = -2\n",
    "[output]\nfield_component = speed\n",
    "[output]\nvehicles = [[0, 0, \"x\"]]\n",
    "not ini at all",
])
def test_bad_values_are_config_errors(text):
    with pytest.raises(ConfigurationError):
        config.loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        config.load(tmp_path / "nope.ini")


def test_dump_round_trip_is_exact():
    cfg = config.loads(EXAMPLE)
    text = config.dumps(cfg)
    assert config.loads(text) == cfg
    assert config.dumps(config.loads(text)) == text


def test_round_trip_gives_identical_engine():
    cfg = config.loads(EXAMPLE)
    a = WindEngine(cfg.environment)
    b = WindEngine(config.loads(config.dumps(cfg)).environment)
    fa, fb = a.fields_at(2.5), b.fields_at(2.5)
    assert all(fa[c].identical_to(fb[c]) for c in COMPONENTS)
    assert a.schedule == b.schedule


@settings(max_examples=40, deadline=None)
@given(v=st.floats(0.5, 40.0), theta=st.floats(0.0, 6.28), seed=st.integers(0, 2**64 - 1),
       closure=st.sampled_from(list(Closure)), s=st.sampled_from([0.5, 1.0, 2.0, 5.0]))
def test_round_trip_property(v, theta, seed, closure, s):
    text = (f"[environment]\nv_air = {v!r}\ntheta_w = {theta!r}\nclosure = {closure.value}\n"
            f"[grid]\nseed = {seed}\nspreading_s = {s!r}\n")
    cfg = config.loads(text)
    assert config.loads(config.dumps(cfg)) == cfg
    assert cfg.environment.grid.seed == seed


def test_with_seed():
    cfg = config.with_seed(config.loads(EXAMPLE), 99)
    assert cfg.environment.grid.seed == 99 and cfg.environment.v_air == 12.8


def test_theta_range_enforced():
    with pytest.raises(ConfigurationError):
        config.loads(f"[environment]\ntheta_w = {2 * math.pi!r}\n")
