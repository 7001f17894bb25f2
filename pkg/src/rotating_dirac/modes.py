#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Bookkeeping of mode parameters between the rotating and the resting frame.

A mode of the rotating frame is labelled by its energy, axial momentum and integer winding number ``n``.
Single-valuedness of the wave function under ``phi -> phi + 2 pi`` imposes the winding condition
``b (E_rot - light_sign * p_rot) = n`` in units where ``hbar = c = Omega = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger
from typing import NamedTuple

import numpy as np

from rotating_dirac.errors import QuantizationError

logger = getLogger(__name__)

#: Tolerance of the winding condition, relative to the magnitude of its terms.
WINDING_TOL = 1e-10


@dataclass(frozen=True)
class ModeParams:
    """Energies and momenta of a mode in both frames.

    Attributes
    ----------
    E_rot, p_rot : float
        Rotating-frame energy and axial momentum.
    E, p : float
        Resting-frame energy and momentum parameters.
    n : int
        Winding number.
    """
    E_rot: float
    p_rot: float
    E: float
    p: float
    n: int = 0

    @classmethod
    def from_rotating(cls, E_rot, p_rot, n, fp):
        E, p = frame_duality(E_rot, p_rot, n, fp)
        return cls(E_rot, p_rot, E, p, n)

    @classmethod
    def from_resting(cls, E, p, n, fp):
        E_rot, p_rot = frame_duality_inverse(E, p, n, fp)
        return cls(E_rot, p_rot, E, p, n)

    def winding_defect(self, fp):
        """Relative violation of the winding condition, zero for a single-valued mode."""
        return quantization_defect(self.E_rot, self.p_rot, self.n, fp)


def _duality_matrix(fp):
    s = fp.stretch
    mix = fp.omega_sign * fp.propagation * fp.tau_omega
    return s, mix


def frame_duality(E_rot, p_rot, n, fp):
    """Resting-frame parameters ``(E, p)`` of a rotating-frame mode.

    ``E = S E_rot - omega_sign k T p_rot - polarization n`` and ``p = S p_rot - omega_sign k T E_rot - k n``
    with ``S = sqrt(1 + T**2)``, ``T = tau * Omega`` and ``k`` the propagation sign.

    Examples
    --------
    >>> from rotating_dirac.frame import FrameParams
    >>> from rotating_dirac.modes import frame_duality
    >>> frame_duality(2.0, 1.0, 1, FrameParams.natural(0.0))
    (1.0, 0.0)
    """
    s, mix = _duality_matrix(fp)
    E = s * E_rot - mix * p_rot - fp.polarization * n
    p = s * p_rot - mix * E_rot - fp.propagation * n
    return E, p


def frame_duality_inverse(E, p, n, fp):
    """Inverse of `frame_duality`; the 2x2 map has unit determinant."""
    s, mix = _duality_matrix(fp)
    e_shift = E + fp.polarization * n
    p_shift = p + fp.propagation * n
    return s * e_shift + mix * p_shift, mix * e_shift + s * p_shift


def quantization_bracket(fp):
    """Coefficient ``b * Omega = T [polarization T + omega_sign (S - 1)]`` of the winding condition."""
    return fp.b_natural


def quantization_gap(n, fp):
    """Exact rotating-frame gap ``E_rot - light_sign * p_rot = n / b``.

    Raises
    ------
    rotating_dirac.errors.QuantizationError
        If ``n != 0`` and the bracket vanishes, which happens for ``tau = 0``.
    """
    if n == 0:
        return 0.0
    bracket = quantization_bracket(fp)
    if bracket == 0:
        logger.error(f"Winding condition bracket vanishes for {fp.signs} at tau*Omega={fp.tau_omega}")
        raise QuantizationError(f"winding condition has no solution for n={n}: bracket vanishes", signs=fp.signs)
    return n / bracket


def resting_gap(n, fp):
    """Exact resting-frame gap ``polarization * (E - light_sign * p)`` of a mode obeying the winding condition."""
    g = quantization_gap(n, fp)
    tw = fp.tau_omega
    mix = fp.omega_sign * fp.propagation * fp.light_sign * tw
    return fp.polarization * (g * (fp.stretch + mix) - n * (fp.polarization - fp.propagation * fp.light_sign))


class GapComparison(NamedTuple):
    exact: float
    approximate: float
    relative: float


def quantization_gap_approx(n, fp):
    """Compare the exact resting-frame gap with its small ``tau * Omega`` form ``n / (tau * Omega)**2``.

    Returns
    -------
    GapComparison
        Exact and approximate gaps with their relative difference.
    """
    exact = resting_gap(n, fp)
    if n == 0:
        return GapComparison(exact, 0.0, 0.0)
    approx = n / fp.tau_omega ** 2
    return GapComparison(exact, approx, abs(exact - approx) / abs(exact))


def quantization_defect(E_rot, p_rot, n, fp):
    """Relative violation of ``b (E_rot - light_sign * p_rot) = n``."""
    bracket = quantization_bracket(fp)
    lhs = bracket * (E_rot - fp.light_sign * p_rot)
    scale = abs(bracket) * (abs(E_rot) + abs(p_rot)) + abs(n) + 1.0
    return abs(lhs - n) / scale


def check_winding(mode, fp, tol=WINDING_TOL):
    """Raise a `QuantizationError` when `mode` violates the winding condition by more than `tol`."""
    defect = mode.winding_defect(fp)
    if not np.isfinite(defect) or defect > tol:
        raise QuantizationError(f"mode (E_rot={mode.E_rot}, p_rot={mode.p_rot}, n={mode.n}) violates the "
                                f"winding condition: relative defect {defect:.3e}", signs=fp.signs)
    return defect


def rotating_phase(mode, event_rot):
    """Scalar phase ``-E_rot t_rot + p_rot z_rot - n phi_rot`` at a rotating-frame event."""
    return -mode.E_rot * event_rot.t + mode.p_rot * event_rot.z - mode.n * event_rot.phi


def resting_phase(mode, event):
    """Scalar phase ``-E t + p z`` at a resting-frame event."""
    return -mode.E * event.t + mode.p * event.z
