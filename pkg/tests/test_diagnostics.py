from dataclasses import replace

import numpy as np
import pytest

from fracflux.diagnostics import (
    DiagnosticTrace,
    equivariance_test,
    max_principle_check,
    steady_state_time,
    total_mass,
)
from fracflux.flux import FluxKind
from fracflux.scenarios import make_scenario, triangular_pulse
from fracflux.solver import BoundarySpec, Field, Grid, InitialSpec, SimConfig, run


def _trace(mins, maxs, changes=None, dt=0.1, masses=None):
    k = len(mins)
    t = np.arange(k) * dt
    if changes is None:
        changes = np.ones(k - 1)
    if masses is None:
        masses = np.zeros(k)
    return DiagnosticTrace(
        t=t,
        mass=np.asarray(masses, dtype=float),
        u_min=np.asarray(mins, dtype=float),
        u_max=np.asarray(maxs, dtype=float),
        step_change=np.asarray(changes, dtype=float),
    )


# ------------------------------------------------------------ total mass


def test_total_mass_of_unit_field():
    grid = Grid(100)
    assert total_mass(np.ones(101), grid) == 1.0


def test_total_mass_of_zero_field():
    assert total_mass(np.zeros(11), Grid(10)) == 0.0


def test_total_mass_of_pulse():
    grid = Grid(100)
    assert total_mass(triangular_pulse(grid.x), grid) == pytest.approx(1.0, abs=1e-12)


def test_total_mass_accepts_field():
    grid = Grid(4)
    assert total_mass(Field(u=np.ones(5), t=0.0), grid) == pytest.approx(1.0)


def test_total_mass_halves_end_nodes():
    grid = Grid(2)  # dx = 0.5
    assert total_mass(np.array([4.0, 0.0, 0.0]), grid) == 1.0


# --------------------------------------------------------- steady state


def test_steady_state_time_first_quiet_step():
    trace = _trace([0] * 5, [1] * 5, changes=[1.0, 0.5, 1e-12, 1e-13], dt=0.1)
    assert steady_state_time(trace, eps=1e-10) == pytest.approx(0.3)


def test_steady_state_time_none_when_never_quiet():
    trace = _trace([0] * 4, [1] * 4, changes=[1.0, 1.0, 1.0])
    assert steady_state_time(trace, eps=1e-10) is None


def test_steady_state_time_rejects_bad_eps():
    trace = _trace([0] * 3, [1] * 3)
    with pytest.raises(ValueError):
        steady_state_time(trace, eps=0.0)


def test_constant_field_is_steady_after_one_step():
    cfg = SimConfig(
        alpha=0.5,
        n=50,
        dt=0.001,
        t_end=0.01,
        snapshot_times=(0.01,),
        flux=FluxKind.CAPUTO,
        bc=BoundarySpec.reflective(),
        initial=InitialSpec("constant", {"value": 3.0}),
    )
    grid = Grid(50)
    result = run(cfg, grid, Field(u=np.full(51, 3.0), t=0.0))
    assert steady_state_time(result.trace, eps=1e-10) == pytest.approx(cfg.dt)


# ------------------------------------------------------- max principle


def test_max_principle_clean_trace():
    g = np.array([0.0, 1.0, 0.0])
    report = max_principle_check(_trace([0, 0, 0], [1.0, 0.9, 0.8]), g)
    assert not report.violated
    assert report.first_step is None
    assert report.lower == 0.0 and report.upper == 1.0


def test_max_principle_flags_first_dip():
    g = np.array([0.0, 1.0, 0.0])
    report = max_principle_check(
        _trace([0, -1e-9, -1e-3, -2e-3], [1, 1, 1, 1], dt=0.5), g, tol=1e-6
    )
    assert report.violated
    assert report.first_step == 2
    assert report.first_time == pytest.approx(1.0)


def test_max_principle_flags_overshoot():
    g = np.array([0.0, 2.0])
    report = max_principle_check(_trace([0, 0], [2.0, 2.1], dt=1.0), g, tol=1e-6)
    assert report.violated and report.first_step == 1


def test_max_principle_respects_shifted_lower_bound():
    # data bounded below by 5: dipping under 5 is a violation even though
    # the values stay positive
    g = np.full(4, 5.0)
    g[1] = 9.0
    report = max_principle_check(_trace([5.0, 4.9], [9.0, 8.0], dt=1.0), g, tol=1e-6)
    assert report.violated


def test_max_principle_on_real_runs():
    grid = Grid(100)
    zero = make_scenario("fig7-zero")
    res = run(replace(zero.cfg, flux=FluxKind.CAPUTO), grid, zero.initial_field(grid))
    assert not max_principle_check(res.trace, zero.initial_field(grid).u).violated

    shifted = make_scenario("fig7-shifted")
    res = run(
        replace(shifted.cfg, flux=FluxKind.RIEMANN_LIOUVILLE),
        grid,
        shifted.initial_field(grid),
    )
    report = max_principle_check(res.trace, shifted.initial_field(grid).u)
    assert report.violated
    assert report.lower == 5.0


# -------------------------------------------------------- equivariance


def test_caputo_shift_equivariance_on_bump():
    report = equivariance_test(make_scenario("fig7-zero"), FluxKind.CAPUTO, 1.0, 5.0)
    assert report.max_deviation <= 1e-12
    assert len(report.deviations) == len(report.snapshot_times) == 3


def test_rl_pure_scaling_equivariance():
    report = equivariance_test(
        make_scenario("pulse-reflective"),
        FluxKind.RIEMANN_LIOUVILLE,
        2.0,
        0.0,
        t_end=0.5,
        snapshot_times=(0.25, 0.5),
    )
    assert report.max_deviation <= 1e-12


def test_rl_shift_equivariance_fails_measurably():
    report = equivariance_test(
        make_scenario("ice-warsaw"),
        FluxKind.RIEMANN_LIOUVILLE,
        1.0,
        32.0,
        t_end=0.05,
        snapshot_times=(0.01, 0.05),
    )
    assert report.max_deviation > 1e-6
    assert report.deviations[0] < report.deviations[1]


def test_affine_equivariance_of_gradient_built_laws():
    for law in (FluxKind.CAPUTO, FluxKind.PARSIMONIOUS):
        report = equivariance_test(
            make_scenario("fig7-zero"), law, -1.5, 2.0, t_end=0.04,
            snapshot_times=(0.02, 0.04),
        )
        assert report.max_deviation <= 1e-12
