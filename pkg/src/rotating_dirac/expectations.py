#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Cross-section averages of energy, momentum and spin.

The average of an operator ``P`` at fixed ``(z, t)`` is ``int Psi^dagger P Psi dx dy`` divided by the norm, with
``P`` one of ``i d/dt``, ``-i d/dx_k`` or ``Sigma_k / 2``.
"""

from __future__ import annotations

from dataclasses import astuple
from dataclasses import dataclass
from dataclasses import fields

import numpy as np
import pandas as pd

from rotating_dirac.errors import StateConstructionError
from rotating_dirac.quadrature import QUAD_TOL
from rotating_dirac.quadrature import integrate_cross_section
from rotating_dirac.spinor import ROTATION_GENERATOR
from rotating_dirac.spinor import SIGMA
from rotating_dirac.spinor import rot_phase_diagonal
from rotating_dirac.spinor import spin_expectation


@dataclass(frozen=True)
class Expectations:
    E_a: float
    p_xa: float
    p_ya: float
    p_za: float
    s1: float
    s2: float
    s3: float

    @classmethod
    def names(cls):
        return [f.name for f in fields(cls)]

    def as_array(self):
        return np.array(astuple(self), dtype=float)


def quadrature_expectations(wf, z=0.0, t=0.0, tol=QUAD_TOL):
    """Averages by 2D quadrature, using the analytic derivatives of the model.

    Raises
    ------
    rotating_dirac.errors.QuadratureError
        If the quadrature does not converge.
    """
    def integrand(x, y):
        psi = wf(x, y, z, t)
        der = wf.derivatives(x, y, z, t)
        conj = np.conj(psi)
        values = [
            np.sum(conj * psi, axis=-1),
            np.sum(conj * 1j * der['t'], axis=-1),
            np.sum(conj * -1j * der['x'], axis=-1),
            np.sum(conj * -1j * der['y'], axis=-1),
            np.sum(conj * -1j * der['z'], axis=-1),
        ]
        values += [0.5 * np.einsum('...i,ij,...j->...', conj, s, psi) for s in SIGMA]
        return np.stack(values, axis=-1)

    result = integrate_cross_section(wf, integrand, z, t, tol)
    est = result.estimate
    return Expectations(*np.real(est[1:] / est[0]))


def closed_form_expectations(wf, z=0.0, t=0.0):
    """Exact averages of a model with a constant spinor, from the moments of its Gaussian envelope.

    Raises
    ------
    rotating_dirac.errors.StateConstructionError
        For models whose spinor depends on the transverse position.
    """
    if wf.is_affine:
        raise StateConstructionError("closed-form averages are available for constant-spinor models only")
    u = wf.u0
    rate_t, rate_z = wf.theta_rates
    theta = rate_t * t + rate_z * z
    c, s = np.cos(theta), np.sin(theta)
    mx, my = wf.envelope_mean
    j_mean = np.vdot(u, ROTATION_GENERATOR @ u) / np.vdot(u, u).real
    angular = my * wf.d1 - mx * wf.d2
    gx = -wf.d * mx + wf.d1
    gy = -wf.d * my + wf.d2
    E_a = wf.mode.E - 0.5j * rate_t * j_mean + 1j * rate_t * angular
    p_za = wf.mode.p + 0.5j * rate_z * j_mean - 1j * rate_z * angular
    p_xa = -1j * (c * gx - s * gy)
    p_ya = -1j * (s * gx + c * gy)
    spins = spin_expectation(rot_phase_diagonal(-theta) * u)
    return Expectations(float(np.real(E_a)), float(np.real(p_xa)), float(np.real(p_ya)), float(np.real(p_za)), *spins)


def literal_massless_expectations(wf, cfg, z=0.0, t=0.0):
    """Massless averages as printed in the source formulas.

    ``pol E_a = pol E - 1 + (charge H)**2 / (2 charge H3) = k p_za``, ``p_xa = (k charge H / 2) cos(theta)``,
    ``p_ya = (k charge H / 2) sin(theta)`` and spin ``(0, 0, 1/2)``.
    """
    pol, k = cfg.polarization, cfg.propagation
    theta = pol * t - k * z
    e_pol = pol * wf.mode.E - 1.0 + cfg.eH ** 2 / (2.0 * cfg.eH3)
    amplitude = 0.5 * k * cfg.eH
    return Expectations(pol * e_pol, amplitude * np.cos(theta), amplitude * np.sin(theta), k * e_pol, 0.0, 0.0, 0.5)


def expectation_table(wf, cfg, z=0.0, t=0.0, tol=QUAD_TOL):
    """Quadrature, closed-form and literal averages side by side.

    Returns
    -------
    pandas.DataFrame
        Indexed by quantity, with the columns ``quadrature``, ``closed_form``, ``literal``, ``abs_diff``
        (quadrature minus closed form) and ``literal_diff`` (literal minus closed form).
        Columns that do not apply to the model hold ``NaN``.
    """
    names = Expectations.names()
    quad = quadrature_expectations(wf, z, t, tol).as_array()
    nan = np.full(len(names), np.nan)
    closed = nan if wf.is_affine else closed_form_expectations(wf, z, t).as_array()
    literal = literal_massless_expectations(wf, cfg, z, t).as_array() if wf.family.startswith('massless') else nan
    df = pd.DataFrame({
        'quadrature': quad,
        'closed_form': closed,
        'literal': literal,
        'abs_diff': np.abs(quad - closed),
        'literal_diff': literal - closed,
    }, index=pd.Index(names, name='quantity'))
    return df
