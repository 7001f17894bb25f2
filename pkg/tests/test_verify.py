#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from rotating_dirac import DIRECTIONS
from rotating_dirac.characteristic import characteristic_roots
from rotating_dirac.characteristic import detuning
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.errors import StepSizeError
from rotating_dirac.frame import Event
from rotating_dirac.spinor import rot_phase_diagonal
from rotating_dirac.states import excited_state
from rotating_dirac.states import ground_state
from rotating_dirac.states import massless_state
from rotating_dirac.states import to_resting_wavefunction
from rotating_dirac.verify import MONOMIALS
from rotating_dirac.verify import coordinate_scale
from rotating_dirac.verify import default_step
from rotating_dirac.verify import derivative
from rotating_dirac.verify import dirac_residual
from rotating_dirac.verify import residual_coefficients
from rotating_dirac.verify import residual_report
from rotating_dirac.verify import rotating_residual
from rotating_dirac.verify import sample_events

P = 0.4


@pytest.fixture
def massless_wf(massless_cfg, resting_frame):
    return to_resting_wavefunction(massless_state(massless_cfg, resting_frame, 2.0, 2.0), resting_frame)


@pytest.fixture
def off_root_excited(massive_cfg, resting_frame):
    root = characteristic_roots(massive_cfg.h, massive_cfg.E0, detuning(P, massive_cfg, 1))[0]
    return excited_state(massive_cfg, resting_frame, root.value + 0.05, P, validate=False)


def monomial_values(xr, yr):
    return {'1': 1.0, 'x': xr, 'y': yr, 'xx': xr * xr, 'xy': xr * yr, 'yy': yr * yr}


@pytest.mark.parametrize('scheme, tol', [('fd2', 1e-6), ('fd4', 1e-8), ('richardson', 1e-8)])
@pytest.mark.parametrize('direction', DIRECTIONS)
def test_finite_differences_match_analytic(massless_wf, scheme, tol, direction):
    events = sample_events(massless_wf, 20, seed=2)
    exact = derivative(massless_wf, events, direction)
    approx = derivative(massless_wf, events, direction, scheme)
    np.testing.assert_allclose(approx, exact, rtol=0, atol=tol * np.abs(exact).max())


def test_step_underflow_raises(massless_wf):
    event = Event(0.1, 0.5, 1.0, 1e20)
    with pytest.raises(StepSizeError):
        derivative(massless_wf, event, 't', 'fd2', step=1e-6)
    with pytest.raises(StepSizeError):
        derivative(massless_wf, event, 'x', 'fd4', step=0.0)


def test_unknown_scheme_and_direction(massless_wf):
    event = Event(0.1, 0.5, 1.0, 1.0)
    with pytest.raises(ConfigurationError):
        derivative(massless_wf, event, 't', 'spline')
    with pytest.raises(ConfigurationError):
        derivative(massless_wf, event, 'r')


def test_residual_needs_resting_model(massless_cfg, resting_frame):
    wf = massless_state(massless_cfg, resting_frame, 2.0, 2.0)
    with pytest.raises(ConfigurationError):
        dirac_residual(wf, massless_cfg, Event(0.0, 1.0, 0.0, 0.0))


@pytest.mark.parametrize('scheme', ['fd4', 'richardson'])
def test_numerical_schemes_confirm_massless_state(massless_cfg, massless_wf, scheme):
    report = residual_report(massless_wf, massless_cfg, count=100, seed=5, scheme=scheme)
    assert report.max_rel_residual <= 1e-6
    assert report.step is not None


def test_report_is_deterministic(massless_cfg, massless_wf):
    first = residual_report(massless_wf, massless_cfg, count=500, seed=11).to_dict()
    second = residual_report(massless_wf, massless_cfg, count=500, seed=11).to_dict()
    assert first == second
    single = residual_report(massless_wf, massless_cfg, count=500, seed=11, workers=1)
    assert single.max_rel_residual == pytest.approx(first['max_rel_residual'], rel=1e-12, abs=1e-300)
    assert first['seed'] == 11
    assert set(first['worst_point']) == {'phi', 'r', 'z', 't'}


def test_report_keeps_records(massless_cfg, massless_wf):
    events = sample_events(massless_wf, 30, seed=1)
    report = residual_report(massless_wf, massless_cfg, events=events, keep_records=True)
    assert report.seed is None
    assert len(report.records) == report.points_evaluated == 30
    assert max(report.records) == report.max_rel_residual


def test_sample_events_surround_the_envelope(massless_wf):
    events = sample_events(massless_wf, 2000, seed=0)
    x, y = events.r * np.cos(events.phi), events.r * np.sin(events.phi)
    density = np.sum(np.abs(massless_wf(x, y, events.z, events.t)) ** 2, axis=-1)
    assert density.max() > 0.1 * np.sum(np.abs(massless_wf.u0 * massless_wf.norm) ** 2)


def test_coefficients_reproduce_the_rotating_residual(massive_cfg, off_root_excited, rng):
    coefficients = residual_coefficients(off_root_excited, massive_cfg)
    assert set(coefficients) == set(MONOMIALS)
    for xr, yr in rng.uniform(-2.0, 2.0, (10, 2)):
        monomials = monomial_values(xr, yr)
        expected = sum(coefficients[key] * monomials[key] for key in MONOMIALS)
        np.testing.assert_allclose(rotating_residual(off_root_excited, massive_cfg, xr, yr), expected, atol=1e-12)


def test_off_root_model_has_a_defect(massive_cfg, off_root_excited):
    coefficients = residual_coefficients(off_root_excited, massive_cfg)
    assert max(np.linalg.norm(c) for c in coefficients.values()) > 1e-6


def test_resting_residual_is_the_rotated_bracket(massive_cfg, resting_frame, rng):
    root = characteristic_roots(massive_cfg.h, massive_cfg.E0, detuning(P, massive_cfg))[1]
    wf = to_resting_wavefunction(ground_state(massive_cfg, resting_frame, root.value + 0.02, P, validate=False),
                                 resting_frame)
    events = Event(rng.uniform(-np.pi, np.pi, 20), rng.uniform(0.0, 1.5, 20),
                   rng.uniform(-2.0, 2.0, 20), rng.uniform(-2.0, 2.0, 20))
    x, y = events.r * np.cos(events.phi), events.r * np.sin(events.phi)
    theta, xr, yr = wf.rotated_coordinates(x, y, events.z, events.t)
    plane = np.exp(1j * (-wf.mode.E * events.t + wf.mode.p * events.z))
    envelope = np.exp(wf.exponent(xr, yr))
    bracket = np.array([rotating_residual(wf, massive_cfg, a, b) for a, b in zip(xr, yr)])
    expected = -(wf.norm * plane * envelope)[:, None] * rot_phase_diagonal(-theta) * bracket
    np.testing.assert_allclose(dirac_residual(wf, massive_cfg, events), expected, rtol=1e-9, atol=1e-13)


@pytest.mark.parametrize('factor', [2.0 - 0.5j, -3.0, 1e-3j])
def test_residual_is_linear(massive_cfg, resting_frame, off_root_excited, rng, factor):
    wf = to_resting_wavefunction(off_root_excited, resting_frame, validate=False)
    events = Event(rng.uniform(-np.pi, np.pi, 15), rng.uniform(0.0, 1.5, 15),
                   rng.uniform(-2.0, 2.0, 15), rng.uniform(-2.0, 2.0, 15))
    base = dirac_residual(wf, massive_cfg, events)
    assert np.abs(base).max() > 1e-6
    np.testing.assert_allclose(dirac_residual(wf.scaled(factor), massive_cfg, events), factor * base,
                               rtol=1e-12, atol=1e-12 * abs(factor) * np.abs(base).max())


@pytest.mark.parametrize('direction', ['x', 't'])
def test_central_difference_error_is_second_order(massless_wf, direction):
    events = sample_events(massless_wf, 20, seed=4)
    exact = derivative(massless_wf, events, direction)
    h = 0.05 * coordinate_scale(massless_wf, direction)
    coarse = np.abs(derivative(massless_wf, events, direction, 'fd2', step=h) - exact).max()
    fine = np.abs(derivative(massless_wf, events, direction, 'fd2', step=0.5 * h) - exact).max()
    assert 3.8 <= coarse / fine <= 4.2


def test_report_records_the_step_of_every_direction(massless_cfg, massless_wf):
    report = residual_report(massless_wf, massless_cfg, count=50, seed=3, scheme='fd4')
    assert set(report.step) == set(DIRECTIONS)
    for direction in DIRECTIONS:
        assert report.step[direction] == default_step(massless_wf, direction)
    assert report.step['x'] != report.step['t']
    fixed = residual_report(massless_wf, massless_cfg, count=50, seed=3, scheme='fd4', step=1e-4)
    assert fixed.step == {d: 1e-4 for d in DIRECTIONS}
    assert residual_report(massless_wf, massless_cfg, count=50, seed=3).step is None
