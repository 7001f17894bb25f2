#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from rotating_dirac.characteristic import characteristic_roots
from rotating_dirac.characteristic import detuning
from rotating_dirac.errors import StateConstructionError
from rotating_dirac.expectations import Expectations
from rotating_dirac.expectations import closed_form_expectations
from rotating_dirac.expectations import expectation_table
from rotating_dirac.expectations import literal_massless_expectations
from rotating_dirac.expectations import quadrature_expectations
from rotating_dirac.field import FieldConfig
from rotating_dirac.states import excited_state
from rotating_dirac.states import ground_state
from rotating_dirac.states import massless_state


@pytest.fixture
def massless_wf(massless_cfg, resting_frame):
    return massless_state(massless_cfg, resting_frame, 2.0, 2.0)


@pytest.mark.parametrize('z, t', [(0.0, 0.0), (0.4, 1.1), (-2.0, 0.3)])
def test_quadrature_matches_closed_form(massless_wf, z, t):
    quad = quadrature_expectations(massless_wf, z, t).as_array()
    closed = closed_form_expectations(massless_wf, z, t).as_array()
    np.testing.assert_allclose(quad, closed, rtol=0, atol=1e-8)


def test_massless_spin_is_constant(massless_wf):
    for t in (0.0, 0.7, 2.5):
        assert quadrature_expectations(massless_wf, 0.0, t).s3 == pytest.approx(-0.5, abs=1e-8)


def test_transverse_momentum_at_origin(massless_cfg, massless_wf):
    quad = quadrature_expectations(massless_wf)
    assert quad.p_xa == pytest.approx(massless_cfg.propagation * massless_cfg.eH / 2.0, abs=1e-8)
    assert quad.p_ya == pytest.approx(0.0, abs=1e-8)


def test_transverse_momentum_rotates(massless_wf):
    theta = 0.9
    closed = closed_form_expectations(massless_wf, 0.0, theta)
    d2 = massless_wf.d2
    assert closed.p_xa == pytest.approx(-d2 * np.cos(theta))
    assert closed.p_ya == pytest.approx(-d2 * np.sin(theta))


def test_energy_and_momentum_shifts(massless_cfg, massless_wf):
    closed = closed_form_expectations(massless_wf)
    shift = massless_wf.d2 ** 2 / massless_wf.d
    pol, k = massless_cfg.polarization, massless_cfg.propagation
    assert closed.E_a == pytest.approx(2.0 - pol / 2.0 + pol * shift)
    assert closed.p_za == pytest.approx(2.0 - k / 2.0 + k * shift)


def test_no_wave_no_transverse_momentum(resting_frame):
    cfg = FieldConfig(H=0.0, H3=-2.0, mass=0.0)
    quad = quadrature_expectations(massless_state(cfg, resting_frame, 1.0, 1.0), 0.3, 0.6)
    assert quad.p_xa == pytest.approx(0.0, abs=1e-10)
    assert quad.p_ya == pytest.approx(0.0, abs=1e-10)


def test_ground_state_closed_form(massive_cfg, resting_frame):
    p = 0.4
    root = characteristic_roots(massive_cfg.h, massive_cfg.E0, detuning(p, massive_cfg))[0]
    wf = ground_state(massive_cfg, resting_frame, root.value, p)
    np.testing.assert_allclose(quadrature_expectations(wf, 0.2, 0.5).as_array(),
                               closed_form_expectations(wf, 0.2, 0.5).as_array(), rtol=0, atol=1e-8)


def test_closed_form_needs_constant_spinor(massive_cfg, resting_frame):
    p = 0.4
    root = characteristic_roots(massive_cfg.h, massive_cfg.E0, detuning(p, massive_cfg, 1))[0]
    wf = excited_state(massive_cfg, resting_frame, root.value, p)
    with pytest.raises(StateConstructionError):
        closed_form_expectations(wf)
    table = expectation_table(wf, massive_cfg)
    assert table['closed_form'].isna().all()
    assert table['literal'].isna().all()
    assert np.isfinite(table['quadrature']).all()


def test_literal_values(massless_cfg, massless_wf):
    literal = literal_massless_expectations(massless_wf, massless_cfg)
    assert literal.s3 == 0.5
    assert literal.p_xa == pytest.approx(massless_cfg.eH / 2.0)
    assert literal.E_a == pytest.approx(2.0 - 1.0 + massless_cfg.eH ** 2 / (2.0 * massless_cfg.eH3))


def test_expectation_table(massless_cfg, massless_wf):
    table = expectation_table(massless_wf, massless_cfg, 0.1, 0.2)
    assert list(table.index) == Expectations.names()
    assert list(table.columns) == ['quadrature', 'closed_form', 'literal', 'abs_diff', 'literal_diff']
    assert table['abs_diff'].max() <= 1e-8
    assert table.loc['s3', 'literal_diff'] == pytest.approx(1.0)
