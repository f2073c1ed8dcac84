import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gale.boundary_layer import (GRAVITY, KARMAN_PROFILE, KARMAN_SOLVER, Closure, SeaStateInput,
                                 charnock_roughness, drag_coefficient_estimate,
                                 fixed_point_map, friction_velocity_from_stress,
                                 log_wind_profile, profile_through_u10,
                                 solve_friction_velocity, volkov_nondimensional_roughness,
                                 volkov_roughness)
from gale.errors import ConvergenceError, DivergenceError, DomainError


def test_volkov_reference_case(oracles):
    sol = solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0, closure=Closure.VOLKOV))
    assert sol.u_star == pytest.approx(0.45, abs=0.01)
    assert sol.iterations <= 20
    # iterates stop within epsilon of the true fixed point
    assert abs(sol.u_star - oracles["friction"]["volkov_u10_10_cp_5"]) < 1e-3
    assert sol.wave_age == pytest.approx(5.0 / sol.u_star)
    assert sol.C == pytest.approx(sol.u_star**2 / 100.0)


def test_charnock_reference_case(oracles):
    sol = solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0, closure=Closure.CHARNOCK))
    assert abs(sol.u_star - oracles["friction"]["charnock_u10_10"]) < 1e-3
    volkov = solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0))
    assert sol.z0 < volkov.z0


def test_returned_pair_satisfies_log_law():
    sol = solve_friction_velocity(SeaStateInput(u10=12.0, c_p=6.0))
    assert KARMAN_SOLVER * 12.0 / math.log(10.0 / sol.z0) == pytest.approx(sol.u_star, rel=1e-15)


def test_tighter_tolerance_converges_closer(oracles):
    sol = solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0, epsilon=1e-12))
    assert sol.u_star == pytest.approx(oracles["friction"]["volkov_u10_10_cp_5"], abs=1e-11)


def test_c_p_default_is_half_u10():
    assert SeaStateInput(u10=8.0).c_p == 4.0


def test_input_validation():
    with pytest.raises(DomainError):
        SeaStateInput(u10=0.0)
    with pytest.raises(DomainError):
        SeaStateInput(u10=10.0, c_p=0.0)
    with pytest.raises(DomainError):
        SeaStateInput(u10=10.0, epsilon=0.0)
    with pytest.warns(RuntimeWarning):
        SeaStateInput(u10=10.0, c_p=20.0)


def test_iteration_cap_raises_with_history():
    with pytest.raises(ConvergenceError) as exc:
        solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0, epsilon=1e-300, max_iter=3))
    assert len(exc.value.history) == 4


def test_divergence_guard():
    inp = SeaStateInput(u10=10.0, closure=Closure.CHARNOCK)
    with pytest.raises(DivergenceError):
        fixed_point_map(1e3, inp)


def test_charnock_formula():
    assert charnock_roughness(0.5) == pytest.approx(0.0144 * 0.25 / GRAVITY, rel=1e-15)


def test_volkov_branches():
    assert volkov_nondimensional_roughness(0.2) == 0.0185
    assert volkov_nondimensional_roughness(40.0) == 0.008
    x = 10.0
    assert volkov_nondimensional_roughness(x) == pytest.approx(0.03 * x * math.exp(-0.14 * x))
    assert volkov_roughness(0.4, 4.0) == pytest.approx(
        volkov_nondimensional_roughness(10.0) * 0.16 / GRAVITY)


def test_drag_estimate():
    assert drag_coefficient_estimate(10.0) == pytest.approx(1.32e-3, rel=1e-14)


def test_log_profile_and_solver_constants():
    # the profile uses 0.42, the 10 m rearrangement 0.4
    sol = solve_friction_velocity(SeaStateInput(u10=10.0, c_p=5.0))
    u = log_wind_profile(10.0, sol.u_star, sol.z0)
    assert u == pytest.approx(KARMAN_SOLVER / KARMAN_PROFILE * 10.0, rel=1e-14)
    assert profile_through_u10(10.0, 10.0, sol.z0) == pytest.approx(10.0, rel=1e-15)


def test_profile_domain():
    with pytest.raises(DomainError):
        log_wind_profile(0.001, 0.4, 0.01)
    with pytest.raises(DomainError):
        profile_through_u10(0.001, 10.0, 0.01)


def test_stress_conversion():
    assert friction_velocity_from_stress(0.245, 1.225) == pytest.approx(math.sqrt(0.2))
    with pytest.raises(DomainError):
        friction_velocity_from_stress(-1.0, 1.2)


@settings(max_examples=80, deadline=None)
@given(u10=st.floats(3.0, 30.0), ratio=st.floats(0.05, 1.0),
       closure=st.sampled_from(list(Closure)))
def test_solver_converges_over_realistic_range(u10, ratio, closure):
    sol = solve_friction_velocity(SeaStateInput(u10=u10, c_p=ratio * u10, closure=closure))
    assert sol.iterations <= 20
    assert 0 < sol.z0 < 10
    assert 0 < sol.u_star < u10
    residual = KARMAN_SOLVER * u10 / math.log(10.0 / sol.z0) - sol.u_star
    assert abs(residual) < 1e-12


@settings(max_examples=60, deadline=None)
@given(u_star=st.floats(0.05, 2.0), z0=st.floats(1e-6, 0.1), z1=st.floats(0.5, 50.0),
       dz=st.floats(0.1, 50.0))
def test_log_profile_increases_with_height(u_star, z0, z1, dz):
    assert log_wind_profile(z1 + dz, u_star, z0) > log_wind_profile(z1, u_star, z0)
