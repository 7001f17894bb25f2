#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Exact states of the Dirac equation in the rotating field.

Every state is a `WaveFunctionModel`: a spinor polynomial of degree at most one in the rotating transverse
coordinates ``(xr, yr)``, times the Gaussian envelope ``exp(-d (xr**2 + yr**2) / 2 + d1 xr + d2 yr)``, times a plane
wave phase.
In the resting frame the transverse coordinates rotate with the angle ``theta = polarization t - propagation z``
and the spinor picks up the matrix phase ``rot_phase(-theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from logging import getLogger

import numpy as np
import pandas as pd

from rotating_dirac.characteristic import POLE_TOL
from rotating_dirac.characteristic import characteristic_residual
from rotating_dirac.characteristic import characteristic_roots
from rotating_dirac.characteristic import detuning
from rotating_dirac.errors import CharacteristicResidualError
from rotating_dirac.errors import PoleProximityError
from rotating_dirac.errors import RotatingDiracError
from rotating_dirac.errors import StateConstructionError
from rotating_dirac.modes import ModeParams
from rotating_dirac.modes import check_winding
from rotating_dirac.modes import rotating_phase
from rotating_dirac.spinor import ROTATION_GENERATOR
from rotating_dirac.spinor import flip_state
from rotating_dirac.spinor import rot_phase_diagonal

logger = getLogger(__name__)

#: Largest accepted characteristic residual of a root handed to a constructor.
ROOT_TOL = 1e-9

_J = np.diag(ROTATION_GENERATOR)
_ZERO = np.zeros(4, dtype=complex)


@dataclass(frozen=True)
class WaveFunctionModel:
    """Closed-form representation of a candidate solution.

    Attributes
    ----------
    u0, ux, uy : numpy.ndarray
        Spinor coefficients of the polynomial ``u0 + ux xr + uy yr``.
    d : float
        Envelope width parameter, ``d > 0`` for a localized state and ``0`` for a plane wave.
    d1, d2 : complex
        Linear coefficients of the envelope exponent.
    mode : ModeParams
        Energies, momenta and winding number in both frames.
    norm : complex
        Overall normalization constant.
    polarization, propagation : int
        Signs entering the rotation angle.
    rotating : bool
        Whether the transverse coordinates and spinor co-rotate with the field.
    frame : str
        ``'rotating'`` or ``'resting'``.
    family : str
        Name of the state family.
    mass : float
        Particle mass.
    groups : dict
        Dimensionless groups used to build the state, for reporting.
    """
    u0: np.ndarray
    d: float
    d1: complex
    d2: complex
    mode: ModeParams
    norm: complex = 1.0
    ux: np.ndarray = field(default_factory=lambda: _ZERO.copy())
    uy: np.ndarray = field(default_factory=lambda: _ZERO.copy())
    polarization: int = 1
    propagation: int = 1
    rotating: bool = True
    frame: str = 'rotating'
    family: str = ''
    mass: float = 0.0
    groups: dict = field(default_factory=dict)

    @property
    def is_affine(self):
        return bool(np.any(self.ux) or np.any(self.uy))

    @property
    def theta_rates(self):
        """Derivatives ``(d theta / dt, d theta / dz)`` of the rotation angle."""
        if not self.rotating:
            return 0.0, 0.0
        return float(self.polarization), float(-self.propagation)

    @property
    def envelope_mean(self):
        """Centre ``(Re d1, Re d2) / d`` of the probability density in rotating coordinates."""
        return np.real(self.d1) / self.d, np.real(self.d2) / self.d

    def scaled(self, factor):
        """Same state with the normalization constant multiplied by `factor`."""
        return replace(self, norm=self.norm * factor)

    def exponent(self, xr, yr):
        return -0.5 * self.d * (xr * xr + yr * yr) + self.d1 * xr + self.d2 * yr

    def polynomial(self, xr, yr):
        xr, yr = np.asarray(xr)[..., None], np.asarray(yr)[..., None]
        return self.u0 + self.ux * xr + self.uy * yr

    def profile(self, xr, yr):
        """Transverse profile ``exp(G) u`` without phase nor normalization."""
        return np.exp(self.exponent(xr, yr))[..., None] * self.polynomial(xr, yr)

    def profile_gradient(self, xr, yr):
        """Derivatives of `profile` with respect to ``xr`` and ``yr``."""
        env = np.exp(self.exponent(xr, yr))[..., None]
        u = self.polynomial(xr, yr)
        gx = (-self.d * np.asarray(xr) + self.d1)[..., None]
        gy = (-self.d * np.asarray(yr) + self.d2)[..., None]
        return env * (gx * u + self.ux), env * (gy * u + self.uy)

    def rotated_coordinates(self, x, y, z, t):
        """Rotation angle and rotating transverse coordinates of resting-frame points."""
        rate_t, rate_z = self.theta_rates
        theta = rate_t * np.asarray(t, dtype=float) + rate_z * np.asarray(z, dtype=float)
        c, s = np.cos(theta), np.sin(theta)
        return theta, x * c + y * s, y * c - x * s

    def _prefactor(self, theta, z, t):
        phase = np.exp(1j * (-self.mode.E * np.asarray(t) + self.mode.p * np.asarray(z)))
        return self.norm * phase[..., None] * rot_phase_diagonal(-theta)

    def __call__(self, x, y, z, t):
        """Resting-frame value at ``(x, y, z, t)``, with shape ``broadcast(x, y, z, t).shape + (4,)``."""
        theta, xr, yr = self.rotated_coordinates(x, y, z, t)
        return self._prefactor(theta, z, t) * self.profile(xr, yr)

    def derivatives(self, x, y, z, t):
        """Analytic partial derivatives of the resting-frame value.

        Returns
        -------
        dict
            Keys ``'t'``, ``'x'``, ``'y'``, ``'z'``, values shaped like the output of ``__call__``.
        """
        theta, xr, yr = self.rotated_coordinates(x, y, z, t)
        pre = self._prefactor(theta, z, t)
        f = self.profile(xr, yr)
        fx, fy = self.profile_gradient(xr, yr)
        xr_, yr_ = np.asarray(xr)[..., None], np.asarray(yr)[..., None]
        angular = yr_ * fx - xr_ * fy
        rate_t, rate_z = self.theta_rates
        c, s = np.cos(theta)[..., None], np.sin(theta)[..., None]
        return {
            't': pre * (-1j * self.mode.E * f - 0.5 * rate_t * _J * f + rate_t * angular),
            'x': pre * (c * fx - s * fy),
            'y': pre * (s * fx + c * fy),
            'z': pre * (1j * self.mode.p * f - 0.5 * rate_z * _J * f + rate_z * angular),
        }

    def evaluate_rotating(self, event_rot):
        """Rotating-frame value at a rotating-frame `Event`, including the winding phase."""
        xr = event_rot.r * np.cos(event_rot.phi)
        yr = event_rot.r * np.sin(event_rot.phi)
        phase = np.exp(1j * rotating_phase(self.mode, event_rot))
        return self.norm * phase[..., None] * self.profile(xr, yr)


def gaussian_weight_integral(d, d1, d2):
    """Integral of ``|exp(G)|**2`` over the transverse plane, ``(pi / d) exp((Re d1**2 + Re d2**2) / d)``."""
    return np.pi / d * np.exp((np.real(d1) ** 2 + np.real(d2) ** 2) / d)


def polynomial_norm2(u0, ux, uy, d, d1, d2):
    """Closed-form ``int |exp(G) (u0 + ux xr + uy yr)|**2 dxr dyr`` from the first two Gaussian moments."""
    mx, my = np.real(d1) / d, np.real(d2) / d
    centre = np.asarray(u0) + np.asarray(ux) * mx + np.asarray(uy) * my
    spread = (np.vdot(ux, ux).real + np.vdot(uy, uy).real) / (2.0 * d)
    return gaussian_weight_integral(d, d1, d2) * (np.vdot(centre, centre).real + spread)


def model_norm2(wf):
    """Closed-form cross-section integral of ``|Psi|**2`` for a localized model."""
    return abs(wf.norm) ** 2 * polynomial_norm2(wf.u0, wf.ux, wf.uy, wf.d, wf.d1, wf.d2)


def ground_spinor(energy, h, E0, polarization, propagation):
    """Ground-state spinor ``(h E, -k (E + pol) Q, pol k h E, -pol (E - pol) Q)`` with ``Q = E - E0``."""
    q = energy - E0
    return np.array([
        h * energy,
        -propagation * (energy + polarization) * q,
        polarization * propagation * h * energy,
        -polarization * (energy - polarization) * q,
    ], dtype=complex)


def _require_localized(cfg):
    if not cfg.d > 0:
        raise StateConstructionError("a localized state needs a nonzero constant axial field")


def _check_branch(cfg, validate):
    if validate and not cfg.branch_consistent:
        raise StateConstructionError(f"d_branch={cfg.d_branch} does not match the sign of charge*H3={cfg.eH3}")


def _massive_groups(cfg, energy, p, level, validate):
    if not cfg.massive:
        raise StateConstructionError("massive state families need m > 0")
    _require_localized(cfg)
    _check_branch(cfg, validate)
    h, E0 = cfg.h, cfg.E0
    Lambda = detuning(p, cfg, level)
    if abs(energy - E0) <= POLE_TOL:
        raise PoleProximityError(f"normalized energy {energy} sits on the pole E0={E0}", roots=[energy], pole=E0)
    residual = float(characteristic_residual(energy, h, E0, Lambda))
    if validate and residual > ROOT_TOL:
        raise CharacteristicResidualError(f"E={energy} does not solve the characteristic equation "
                                          f"(h={h}, E0={E0}, Lambda={Lambda}): residual {residual:.3e}", residual)
    return dict(energy=energy, h=h, E0=E0, Lambda=Lambda, residual=residual)


def _resting_energy(cfg, energy, p):
    return cfg.polarization * (cfg.mass * energy + cfg.propagation * p)


def ground_state(cfg, fp, energy, p, validate=True):
    """Massive ground state of the selected envelope branch.

    Parameters
    ----------
    cfg : rotating_dirac.field.FieldConfig
        Field and particle; ``cfg.d_branch = -1`` gives the ground state, ``+1`` its flipped partner.
    fp : rotating_dirac.frame.FrameParams
        Frame used to express the mode in rotating-frame variables.
    energy : float
        Normalized energy, a root of the characteristic equation.
    p : float
        Momentum parameter of the stationary equation; the resting-frame energy follows from `energy`.
    validate : bool, optional
        Check the branch and the characteristic residual.

    Returns
    -------
    WaveFunctionModel
        Unit-normalized in the transverse plane.

    Raises
    ------
    rotating_dirac.errors.CharacteristicResidualError
        If `energy` is not a root.
    rotating_dirac.errors.PoleProximityError
        If `energy` equals ``E0``.
    """
    groups = _massive_groups(cfg, energy, p, 0, validate)
    h, E0 = groups['h'], groups['E0']
    d = cfg.d
    q = energy - E0
    d2 = d * h / q
    d1 = cfg.d_branch * 1j * d2
    u0 = ground_spinor(energy, h, E0, cfg.polarization, cfg.propagation)
    if cfg.d_branch > 0:
        u0 = flip_state(u0, cfg.propagation)
    spin2 = h * h * energy * energy + (energy * energy + 1.0) * q * q
    norm = np.sqrt(d) * np.exp(-d2 * d2 / (2.0 * d)) / (np.sqrt(2.0 * np.pi) * np.sqrt(spin2))
    mode = ModeParams.from_resting(_resting_energy(cfg, energy, p), p, 0, fp)
    family = 'ground' if cfg.d_branch < 0 else 'flipped'
    logger.debug(f"Built {family} state: E={energy}, d2={d2}, N={norm}")
    return WaveFunctionModel(u0=u0, d=d, d1=d1, d2=d2, mode=mode, norm=norm,
                             polarization=cfg.polarization, propagation=cfg.propagation,
                             family=family, mass=cfg.mass, groups=groups)


def flipped_state(cfg, fp, energy, p, validate=True, literal=False):
    """Partner of the ground state on the other envelope branch, ``propagation * alpha1 alpha3 beta psi0``.

    `cfg` is taken on the ``d_branch = +1`` family, where ``E0`` changes sign.
    The exact partner also has ``d1 = +i d2`` and the detuning shifted by ``+2 / m``.
    With ``literal=True`` only the spinor and ``E0`` change while ``d1 = -i d2`` and the ground-state detuning are
    kept; that model is not a solution and is meant for the residual report.
    """
    cfg = replace(cfg, d_branch=1)
    if not literal:
        return ground_state(cfg, fp, energy, p, validate=validate)
    wf = ground_state(replace(cfg, d_branch=-1), fp, energy, p, validate=False)
    E0 = cfg.E0
    q = energy - E0
    d2 = cfg.d * wf.groups['h'] / q
    u0 = flip_state(ground_spinor(energy, wf.groups['h'], E0, cfg.polarization, cfg.propagation), cfg.propagation)
    groups = dict(wf.groups, E0=E0)
    wf = replace(wf, u0=u0, d2=d2, d1=-1j * d2, norm=1.0, family='flipped-literal', groups=groups)
    return wf.scaled(1.0 / np.sqrt(model_norm2(wf)))


def excited_state(cfg, fp, energy, p, validate=True):
    """First excited state ``psi0 (1 - i (d / d2) xr - (d / d2) yr)`` on the ``d_branch = -1`` family.

    `energy` solves the characteristic equation with the detuning lowered by ``2 / m``.
    The normalization constant comes from the Gaussian moments of the polynomial.

    Raises
    ------
    rotating_dirac.errors.StateConstructionError
        If ``d2 = 0``, where the polynomial factor is undefined, or on the other branch.
    """
    if cfg.d_branch > 0:
        raise StateConstructionError("excited states are built on the d_branch = -1 family")
    groups = _massive_groups(cfg, energy, p, 1, validate)
    h, E0 = groups['h'], groups['E0']
    d = cfg.d
    q = energy - E0
    d2 = d * h / q
    if d2 == 0:
        raise StateConstructionError("excited state needs d2 != 0, i.e. a nonzero wave amplitude")
    kappa = d / d2
    psi0 = ground_spinor(energy, h, E0, cfg.polarization, cfg.propagation)
    mode = ModeParams.from_resting(_resting_energy(cfg, energy, p), p, 0, fp)
    wf = WaveFunctionModel(u0=psi0, ux=-1j * kappa * psi0, uy=-kappa * psi0, d=d, d1=-1j * d2, d2=d2, mode=mode,
                           polarization=cfg.polarization, propagation=cfg.propagation,
                           family='excited', mass=cfg.mass, groups=groups)
    return wf.scaled(1.0 / np.sqrt(model_norm2(wf)))


def massless_spinor(cfg):
    """Constant spinor of the massless family on the branch of `cfg`."""
    u0 = np.array([0.0, cfg.polarization * cfg.propagation, 0.0, -1.0], dtype=complex)
    if cfg.d_branch > 0:
        u0 = flip_state(u0, cfg.propagation)
    return u0


def massless_state(cfg, fp, E, p, strict_prefactor=False, validate=True):
    """Localized massless state travelling along the rotation axis.

    Parameters
    ----------
    cfg : rotating_dirac.field.FieldConfig
        Field and particle, with ``mass = 0``.
    fp : rotating_dirac.frame.FrameParams
        Frame; its light sign must equal ``polarization * propagation``.
    E, p : float
        Resting-frame energy and momentum, with ``polarization * E = propagation * p``.
    strict_prefactor : bool, optional
        Use the bare factor ``-d2**2 / (2 d)`` instead of ``exp(-d2**2 / (2 d))`` in the normalization.
    validate : bool, optional
        Check mass, branch, light sign and the dispersion constraint.

    Returns
    -------
    WaveFunctionModel
        Envelope ``d = |charge H3| / 2``, ``d2 = d_branch * k * charge * H / 2`` and ``d1 = d_branch * i * d2``.
    """
    _require_localized(cfg)
    if validate:
        if cfg.mass != 0:
            raise StateConstructionError(f"massless family needs m = 0, got {cfg.mass}")
        _check_branch(cfg, validate)
        if fp.light_sign != cfg.polarization * cfg.propagation:
            raise StateConstructionError("massless family needs light_sign = polarization * propagation")
        if not np.isclose(cfg.polarization * E, cfg.propagation * p, rtol=1e-12, atol=1e-12):
            raise StateConstructionError(f"massless family needs polarization*E = propagation*p, got E={E}, p={p}")
    d = cfg.d
    d2 = cfg.d_branch * cfg.propagation * cfg.eH / 2.0
    d1 = cfg.d_branch * 1j * d2
    factor = -d2 * d2 / (2.0 * d) if strict_prefactor else np.exp(-d2 * d2 / (2.0 * d))
    norm = factor * np.sqrt(d / (2.0 * np.pi))
    mode = ModeParams.from_resting(E, p, 0, fp)
    family = 'massless-zero' if E == 0 and p == 0 else 'massless'
    groups = dict(eH=cfg.eH, eH3=cfg.eH3, strict_prefactor=strict_prefactor)
    return WaveFunctionModel(u0=massless_spinor(cfg), d=d, d1=d1, d2=d2, mode=mode, norm=norm,
                             polarization=cfg.polarization, propagation=cfg.propagation,
                             family=family, mass=cfg.mass, groups=groups)


def massless_zero_state(cfg, fp, strict_prefactor=False, validate=True):
    """Massless state with ``E = p = 0``, fixed by the field parameters alone."""
    return massless_state(cfg, fp, 0.0, 0.0, strict_prefactor=strict_prefactor, validate=validate)


def massless_from_rotating(cfg, fp, p_rot, strict_prefactor=False, validate=True):
    """Massless state from its rotating-frame momentum, with ``n = 0`` and ``E_rot = light_sign * p_rot``."""
    mode = ModeParams.from_rotating(fp.light_sign * p_rot, p_rot, 0, fp)
    return massless_state(cfg, fp, mode.E, mode.p, strict_prefactor=strict_prefactor, validate=validate)


def free_plane_wave(p, mass, spin_up=True):
    """Positive-energy plane wave ``exp(-i E t + i p z) u`` of a free particle moving along the axis."""
    E = float(np.sqrt(p * p + mass * mass))
    chi = np.array([1.0, 0.0]) if spin_up else np.array([0.0, 1.0])
    sigma3_chi = chi * np.array([1.0, -1.0])
    lower = p * sigma3_chi / (E + mass) if E + mass > 0 else sigma3_chi
    u0 = np.concatenate([chi, lower]).astype(complex)
    mode = ModeParams(E, p, E, p, 0)
    return WaveFunctionModel(u0=u0, d=0.0, d1=0.0, d2=0.0, mode=mode, rotating=False, frame='resting',
                             family='plane-wave', mass=mass)


def to_resting_wavefunction(wf, fp, validate=True):
    """Express a rotating-frame model in the resting frame.

    The scalar phase ``-E_rot t_rot + p_rot z_rot - n phi_rot`` equals ``-E t + p z`` for every event once the
    winding condition holds; the transverse coordinates become
    ``xr = x cos(theta) + y sin(theta)``, ``yr = y cos(theta) - x sin(theta)``.

    Raises
    ------
    rotating_dirac.errors.QuantizationError
        If the mode violates the winding condition.
    """
    if wf.frame == 'resting':
        return wf
    if validate:
        check_winding(wf.mode, fp)
    return replace(wf, frame='resting')


def relativistic_ratio(psi):
    """Ratio of the lower to the upper two-component norms of a spinor."""
    psi = np.asarray(psi)
    return float(np.linalg.norm(psi[2:]) / np.linalg.norm(psi[:2]))


def relativistic_sweep(h_values, E0_values, Lambda=0.0, polarization=1, propagation=1, threshold=0.1):
    """Lower/upper spinor norm ratio of every ground-state root over an ``(h, E0)`` grid.

    Points where the ratio does not exceed `threshold` are logged as counterexamples, never raised.

    Returns
    -------
    pandas.DataFrame
        One row per root, with columns ``h``, ``E0``, ``Lambda``, ``energy`` and ``ratio``.
    """
    rows = []
    for h in h_values:
        for E0 in E0_values:
            try:
                roots = characteristic_roots(h, E0, Lambda)
            except RotatingDiracError as err:
                logger.info(f"Skipping h={h}, E0={E0}: {err}")
                continue
            for root in roots:
                ratio = relativistic_ratio(ground_spinor(root.value, h, E0, polarization, propagation))
                rows.append(dict(h=h, E0=E0, Lambda=Lambda, energy=root.value, ratio=ratio))
    df = pd.DataFrame(rows, columns=['h', 'E0', 'Lambda', 'energy', 'ratio'])
    small = df[df['ratio'] <= threshold]
    for _, row in small.iterrows():
        logger.warning(f"Weakly relativistic root: h={row.h}, E0={row.E0}, E={row.energy}, ratio={row.ratio:.3e}")
    return df
