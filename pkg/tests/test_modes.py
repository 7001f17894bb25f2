#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotating_dirac.errors import QuantizationError
from rotating_dirac.frame import Event
from rotating_dirac.frame import FrameParams
from rotating_dirac.frame import to_rotating
from rotating_dirac.modes import ModeParams
from rotating_dirac.modes import check_winding
from rotating_dirac.modes import frame_duality
from rotating_dirac.modes import frame_duality_inverse
from rotating_dirac.modes import quantization_gap
from rotating_dirac.modes import quantization_gap_approx
from rotating_dirac.modes import resting_gap
from rotating_dirac.modes import resting_phase
from rotating_dirac.modes import rotating_phase

values = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False)
signs = st.sampled_from([-1, 1])
windings = st.integers(min_value=-3, max_value=3)


def frame(tau_omega, polarization=1, propagation=1, omega_sign=1, light_sign=1):
    return FrameParams.natural(tau_omega, polarization=polarization, propagation=propagation,
                               omega_sign=omega_sign, light_sign=light_sign)


@given(values, values, windings, st.floats(min_value=0.0, max_value=2.0), signs, signs, signs)
def test_duality_round_trip(E_rot, p_rot, n, tau_omega, polarization, propagation, omega_sign):
    fp = frame(tau_omega, polarization, propagation, omega_sign)
    E, p = frame_duality(E_rot, p_rot, n, fp)
    back = frame_duality_inverse(E, p, n, fp)
    np.testing.assert_allclose(back, (E_rot, p_rot), rtol=0, atol=1e-10)


def test_duality_at_rest_only_shifts_by_winding():
    fp = frame(0.0, polarization=-1, propagation=1)
    assert frame_duality(2.5, 1.0, 2, fp) == pytest.approx((4.5, -1.0))


@pytest.mark.parametrize('n', [0, 1, -1])
def test_plain_frame_has_no_winding_condition(n):
    fp = frame(0.0)
    if n == 0:
        assert quantization_gap(n, fp) == 0.0
    else:
        with pytest.raises(QuantizationError):
            quantization_gap(n, fp)


def test_gap_is_linear_in_winding():
    fp = frame(1e-3, polarization=-1, omega_sign=-1)
    gaps = np.array([quantization_gap(n, fp) for n in range(-2, 3)])
    np.testing.assert_allclose(np.diff(gaps), gaps[3], rtol=1e-12)
    assert gaps[2] == 0.0


@given(values, windings, st.floats(min_value=1e-3, max_value=2.0), signs, signs, signs, signs)
def test_resting_gap_of_single_valued_modes(p_rot, n, tau_omega, polarization, propagation, omega_sign, light_sign):
    fp = frame(tau_omega, polarization, propagation, omega_sign, light_sign)
    E_rot = light_sign * p_rot + quantization_gap(n, fp)
    mode = ModeParams.from_rotating(E_rot, p_rot, n, fp)
    assert mode.winding_defect(fp) < 1e-10
    gap = polarization * (mode.E - light_sign * mode.p)
    assert gap == pytest.approx(resting_gap(n, fp), rel=1e-9, abs=1e-9)


def test_small_tau_gap_approximation():
    comparison = quantization_gap_approx(1, frame(1e-4))
    assert comparison.approximate == pytest.approx(1e8)
    assert comparison.relative < 1e-3


def test_winding_violation_is_reported():
    fp = frame(0.5)
    mode = ModeParams.from_rotating(1.0, 0.3, 1, fp)
    with pytest.raises(QuantizationError) as info:
        check_winding(mode, fp)
    assert info.value.signs == fp.signs


@pytest.mark.parametrize('n', [-2, -1, 0, 1, 2])
def test_phases_agree_across_frames(rng, n):
    fp = frame(0.5, polarization=-1, propagation=1, omega_sign=1, light_sign=-1)
    p_rot = 0.7
    mode = ModeParams.from_rotating(fp.light_sign * p_rot + quantization_gap(n, fp), p_rot, n, fp)
    events = Event(rng.uniform(-np.pi, np.pi, 200), rng.uniform(0.0, 2.0, 200),
                   rng.uniform(-10.0, 10.0, 200), rng.uniform(-10.0, 10.0, 200))
    np.testing.assert_allclose(rotating_phase(mode, to_rotating(events, fp)), resting_phase(mode, events),
                               rtol=0, atol=1e-10)


@pytest.mark.parametrize('n', [-1, 0, 2])
def test_half_integer_winding_breaks_the_phase_identity(rng, n):
    fp = frame(0.5, polarization=-1, propagation=1, omega_sign=1, light_sign=-1)
    p_rot = 0.7
    mode = ModeParams.from_rotating(fp.light_sign * p_rot + quantization_gap(n, fp), p_rot, n, fp)
    half = ModeParams(mode.E_rot, mode.p_rot, mode.E, mode.p, n + 0.5)
    events = Event(rng.uniform(-np.pi, np.pi, 200), rng.uniform(0.0, 2.0, 200),
                   rng.uniform(-10.0, 10.0, 200), rng.uniform(-10.0, 10.0, 200))
    mismatch = np.exp(1j * (rotating_phase(half, to_rotating(events, fp)) - resting_phase(half, events))) - 1.0
    assert np.abs(mismatch).max() > 0.1
    check_winding(mode, fp)
    with pytest.raises(QuantizationError):
        check_winding(half, fp)
