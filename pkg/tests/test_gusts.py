import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gale.errors import ConfigurationError, DomainError
from gale.gusts import (GustEvent, GustSchedule, GustShapeParams, gust_amplitude, gust_duration,
                        gust_shape, gust_spread_probability, gust_velocity, is_active, make_event,
                        read_schedule, schedule_gusts, write_schedule)


def test_amplitude_fit():
    assert gust_amplitude(10.0) == pytest.approx(52 / 43 * 10 - 0.125, rel=1e-15)
    assert gust_amplitude(4.3) == pytest.approx(5.075, rel=1e-14)
    assert gust_amplitude(43 / 52 * 0.125) == 0.0
    assert gust_amplitude(0.05) == 0.0
    with pytest.raises(DomainError):
        gust_amplitude(-1.0)


def test_duration_fit(oracles):
    assert gust_duration(5.0, 5.0) == 3.51
    assert gust_duration(15.0, 10.0) == pytest.approx(7.06)
    assert gust_duration(20.0, 10.0) == pytest.approx(10.61)
    o = oracles["gust_fits"]
    assert gust_duration(gust_amplitude(o["v_air"]), o["v_air"]) == pytest.approx(o["duration"],
                                                                                  rel=1e-14)
    with pytest.raises(DomainError):
        gust_duration(4.0, 5.0)


def test_shape_matches_oracle(oracles):
    o = oracles["gust_shape"]
    p = GustShapeParams(g1=o["g1"], t_g1=o["t_g1"], t_g2=o["t_g2"], t_h=o["t_h"])
    got = [gust_shape(t, p) for t in o["t"]]
    np.testing.assert_allclose(got, o["values"], rtol=1e-12, atol=1e-15)


def test_shape_exact_points():
    p = GustShapeParams(g1=2.0, t_g1=4.0, t_g2=6.0, t_h=1.0)
    assert gust_shape(2.0, p) == 2.0
    assert gust_shape(3.0, p) == 2.0
    assert gust_shape(0.0, p) == 0.0
    assert gust_shape(p.support, p) == 0.0
    assert gust_shape(p.support + 1, p) == 0.0
    assert p.support == 2.0 + 1.0 + 3.0
    assert p.g2r == 3.0 and p.g2f == 2.0


def test_edge_values_within_one_percent():
    p = GustShapeParams(g1=3.0, t_g1=4.0, t_g2=4.0)
    assert abs(gust_shape(1e-12, p)) <= 0.01 * 3.0
    assert abs(gust_shape(p.support - 1e-12, p)) <= 0.01 * 3.0


def test_pre_dip_is_negative():
    p = GustShapeParams(g1=1.0, t_g1=4.0, t_g2=4.0)
    t = np.linspace(0.01, 1.99, 500)
    assert min(gust_shape(x, p) for x in t) < 0


def test_shape_params_validation():
    for bad in (dict(g1=-1.0, t_g1=1.0, t_g2=1.0), dict(g1=1.0, t_g1=0.0, t_g2=1.0),
                dict(g1=1.0, t_g1=1.0, t_g2=1.0, t_h=-1.0), dict(g1=1.0, t_g1=1.0, t_g2=1.0, g4=0)):
        with pytest.raises(ConfigurationError):
            GustShapeParams(**bad)


def test_duration_split():
    p = GustShapeParams.from_duration(1.0, 5.0)
    assert p.support == pytest.approx(5.0)
    assert p.t_g1 == p.t_g2 == 4.0 and p.t_h == 1.0


@settings(max_examples=80, deadline=None)
@given(g1=st.floats(0.1, 10), c=st.floats(0.0, 5.0), t=st.floats(0.0, 20.0))
def test_shape_scale_equivariance(g1, c, t):
    p = GustShapeParams(g1=g1, t_g1=5.0, t_g2=7.0, t_h=2.0)
    q = GustShapeParams(g1=c * g1, t_g1=5.0, t_g2=7.0, t_h=2.0)
    assert gust_shape(t, q) == pytest.approx(c * gust_shape(t, p), rel=1e-12, abs=1e-15)


@settings(max_examples=80, deadline=None)
@given(t=st.floats(0.0, 20.0))
def test_shape_never_exceeds_g1(t):
    p = GustShapeParams(g1=1.3, t_g1=5.0, t_g2=7.0, t_h=2.0)
    assert gust_shape(t, p) <= 1.3


def test_spread_probability():
    assert gust_spread_probability(0, 0, 200, 250) == 1.0
    assert gust_spread_probability(200, 0, 200, 250) == pytest.approx(math.exp(-1))
    assert gust_spread_probability(0, 30, 200, 250) == gust_spread_probability(0, -30, 200, 250)
    assert gust_spread_probability(-50, 0, 200, 250) == 1.0
    with pytest.raises(DomainError):
        gust_spread_probability(0, 0, 0, 250)


@settings(max_examples=80, deadline=None)
@given(dx=st.floats(-1e4, 1e4), dy=st.floats(-1e4, 1e4), lx=st.floats(1, 1e3),
       ly=st.floats(1, 1e3))
def test_spread_probability_range(dx, dy, lx, ly):
    p = gust_spread_probability(dx, dy, lx, ly)
    assert 0 <= p <= 1
    if dx <= 0 and dy == 0:
        assert p == 1
    if max(dx / lx, abs(dy) / ly) > 1e-12:
        assert p < 1


def test_event_requires_positive_wind():
    shape = GustShapeParams(g1=1.0, t_g1=2.0, t_g2=2.0)
    with pytest.raises(ConfigurationError):
        GustEvent(t_start=0.0, origin=(0, 0, 0), shape=shape, v_air=0.0)


def test_peak_at_gust_centre():
    e = make_event(10.0, (0.0, 0.0, 0.0), 8.0, theta_w=0.9)
    t_peak = 10.0 + e.shape.t_g1 / 2
    assert gust_velocity(e, (0.0, 0.0, 0.0), t_peak) == e.shape.g1


def test_increment_used_as_g1():
    e = make_event(0.0, (0.0, 0.0, 0.0), 8.0)
    assert e.shape.g1 == pytest.approx(gust_amplitude(8.0) - 8.0)
    assert e.shape.support == pytest.approx(gust_duration(gust_amplitude(8.0), 8.0))


def test_stationary_probe_sees_delayed_gust():
    e = make_event(4.0, (0.0, 0.0, 0.0), 8.0)
    for t in (5.0, 8.5, 9.0, 11.0):
        # 16 m downwind: arrives 2 s later, 16 m behind... the centre has passed
        val = gust_velocity(e, (16.0, 0.0, 0.0), t)
        assert val == gust_shape(t - 4.0 - 2.0, e.shape)


def test_is_active_window():
    e = make_event(0.0, (0.0, 0.0, 0.0), 8.0)
    assert not is_active(e, (0.0, 0.0, 0.0), 0.0)
    assert is_active(e, (0.0, 0.0, 0.0), 1.0)
    assert not is_active(e, (0.0, 0.0, 0.0), e.shape.support + 0.1)


def test_schedule_basics():
    assert len(schedule_gusts(3600.0, 0.0, 1, v_air=5.0)) == 0
    a = schedule_gusts(36000.0, 13.5, 3, v_air=5.0)
    b = schedule_gusts(36000.0, 13.5, 3, v_air=5.0)
    assert a == b
    starts = [e.t_start for e in a.events]
    assert starts == sorted(starts) and 0 < starts[0] and starts[-1] <= 36000.0
    with pytest.raises(DomainError):
        schedule_gusts(0.0, 13.5, 0, v_air=5.0)
    with pytest.raises(DomainError):
        schedule_gusts(10.0, -1.0, 0, v_air=5.0)


def test_schedule_prefix_stable_under_longer_horizon():
    short = schedule_gusts(3600.0, 13.5, 9, v_air=5.0)
    long = schedule_gusts(7200.0, 13.5, 9, v_air=5.0)
    assert long.events[:len(short)] == short.events


def test_origin_upwind_of_centroid():
    s = schedule_gusts(36000.0, 13.5, 0, v_air=5.0, theta_w=math.pi / 2,
                       centroid=(10.0, 20.0, 3.0), upwind_distance=50.0)
    o = s.events[0].origin
    assert o[0] == pytest.approx(10.0) and o[1] == pytest.approx(-30.0) and o[2] == 3.0


def test_superposition():
    e1 = make_event(0.0, (0.0, 0.0, 0.0), 8.0)
    e2 = make_event(0.5, (0.0, 0.0, 0.0), 8.0)
    sched = GustSchedule(events=(e1, e2), rate=1.0, seed=0)
    p, t = (1.0, 2.0, 0.0), 1.7
    assert sched.velocity(p, t) == gust_velocity(e1, p, t) + gust_velocity(e2, p, t)


def test_schedule_round_trip(tmp_path):
    s = schedule_gusts(36000.0, 13.5, 2, v_air=7.0, theta_w=0.4, centroid=(5.0, 6.0, 0.0))
    path = tmp_path / "gusts.csv"
    write_schedule(s, path)
    back = read_schedule(path, v_air=7.0, theta_w=0.4, rate=13.5, seed=2)
    assert back.events == s.events
    assert path.read_bytes().count(b"\r") == 0


def test_read_schedule_rejects_missing_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t_start,x\n1,2\n")
    with pytest.raises(ConfigurationError):
        read_schedule(path, v_air=5.0)
