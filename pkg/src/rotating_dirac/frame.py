#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Non-Galilean transformation between the resting frame and a point rotating frame.

Coordinates are dimensionless: time in units of ``1/Omega`` and lengths in units of ``c/Omega``.
The transformation is linear in ``(phi, z, t)`` and leaves the cylindrical radius unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger
from typing import NamedTuple
from typing import Optional

import numpy as np

from rotating_dirac.errors import ConfigurationError
from rotating_dirac.errors import SingularTransformError

logger = getLogger(__name__)

#: Smallest accepted absolute determinant of the transformation matrix.
SINGULAR_DET = 1e-14


def check_sign(value, name):
    """Raise a `ConfigurationError` unless `value` is ``-1`` or ``+1``; return it as an ``int``."""
    if value not in (-1, 1):
        raise ConfigurationError(f"'{name}' must be -1 or +1, got {value!r}")
    return int(value)


class Event(NamedTuple):
    """Point of space-time in cylindrical coordinates, scalar or array valued."""
    phi: float
    r: float
    z: float
    t: float


def time_mixing(tau, omega, polarization, omega_sign):
    """Time-mixing coefficient ``b`` of the transformation, in the units of `tau`.

    ``b = omega_sign * tau * [omega_sign * polarization * tau * omega - (1 - sqrt(1 + (tau * omega)**2))]``

    `omega` is taken as a formal signed argument so that the parity of both terms can be inspected.
    """
    tw = tau * omega
    return omega_sign * tau * (omega_sign * polarization * tw - (1.0 - np.sqrt(1.0 + tw * tw)))


@dataclass(frozen=True)
class FrameParams:
    """Constants of a point rotating frame.

    Parameters
    ----------
    tau : float
        Fundamental time constant, in the time unit of `omega`.
    omega : float
        Angular frequency of the rotating field, must be positive.
    polarization : int
        Polarization sign of the field rotation.
    propagation : int
        Propagation sign along the rotation axis.
    omega_sign : int
        Sign of the preserved angular rate ``phi / t = omega_sign / tau``.
    light_sign : int
        Direction ``z = light_sign * c * t`` of the preserved light ray.
    """
    tau: float
    omega: float = 1.0
    polarization: int = 1
    propagation: int = 1
    omega_sign: int = 1
    light_sign: int = 1

    def __post_init__(self):
        for name in ('polarization', 'propagation', 'omega_sign', 'light_sign'):
            check_sign(getattr(self, name), name)
        if not self.omega > 0:
            raise ConfigurationError(f"the angular frequency must remain positive, got {self.omega!r}")
        if not (np.isfinite(self.tau) and self.tau >= 0):
            raise ConfigurationError(f"'tau' must be finite and non-negative, got {self.tau!r}")

    @classmethod
    def natural(cls, tau_omega, **signs):
        """Frame with ``omega = 1`` so that `tau` is the dimensionless group ``tau * omega``."""
        return cls(tau=tau_omega, omega=1.0, **signs)

    @property
    def tau_omega(self):
        return self.tau * self.omega

    @property
    def stretch(self):
        """Diagonal coefficient ``sqrt(1 + (tau * omega)**2)``."""
        return float(np.sqrt(1.0 + self.tau_omega ** 2))

    @property
    def velocity(self):
        """Dimensionless velocity ``v``, always ``|v| < 1``."""
        return self.omega_sign * self.propagation * self.tau_omega / self.stretch

    @property
    def b(self):
        """Time-mixing coefficient, in the time unit of `tau`."""
        return float(time_mixing(self.tau, self.omega, self.polarization, self.omega_sign))

    @property
    def b_natural(self):
        """Time-mixing coefficient ``b * omega``."""
        return self.b * self.omega

    @property
    def a_natural(self):
        """Length-mixing coefficient ``a = light_sign * c * b``, in units of ``c / omega``."""
        return self.light_sign * self.b_natural

    @property
    def signs(self):
        return dict(polarization=self.polarization, propagation=self.propagation,
                    omega_sign=self.omega_sign, light_sign=self.light_sign)

    def matrix(self):
        """Coefficient matrix of the transformation acting on ``(phi, z, t)``."""
        s = self.stretch
        mix = self.omega_sign * self.propagation * self.tau_omega
        b = self.b_natural
        return np.array([
            [1.0, self.propagation, -self.polarization],
            [-self.a_natural, s, mix],
            [-b, mix, s],
        ])


def derive_params(tau, omega, polarization, propagation, omega_sign, light_sign):
    """Build the `FrameParams` of a rotating frame, see `FrameParams` for the meaning of the arguments.

    Examples
    --------
    >>> from rotating_dirac.frame import derive_params
    >>> fp = derive_params(1.0, 1.0, 1, 1, 1, 1)
    >>> round(fp.velocity ** 2, 12), round(fp.b ** 2, 12)
    (0.5, 2.0)
    """
    return FrameParams(tau=tau, omega=omega, polarization=polarization, propagation=propagation,
                       omega_sign=omega_sign, light_sign=light_sign)


def _apply(matrix, event):
    x = np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (event.phi, event.z, event.t))))
    y = np.tensordot(matrix, x, axes=1)
    return y


def to_rotating(event, fp, matrix=None):
    """Map a resting-frame `Event` to the rotating frame.

    Parameters
    ----------
    event : Event
        Resting-frame coordinates, scalars or broadcastable arrays.
    fp : FrameParams
        Frame constants.
    matrix : numpy.ndarray, optional
        Replacement coefficient matrix, defaults to ``fp.matrix()``.

    Returns
    -------
    Event
        ``(phi_rot, r, z_rot, t_rot)``.
    """
    m = fp.matrix() if matrix is None else matrix
    phi, z, t = _apply(m, event)
    return Event(phi, event.r, z, t)


def to_resting(event, fp):
    """Inverse of `to_rotating`.

    Raises
    ------
    rotating_dirac.errors.SingularTransformError
        If the coefficient matrix cannot be inverted.
    """
    m = fp.matrix()
    det = np.linalg.det(m)
    if abs(det) < SINGULAR_DET:
        logger.error(f"Singular transformation for {fp}: det={det}")
        raise SingularTransformError(f"transformation determinant {det:.3e} vanishes for {fp.signs}")
    phi, z, t = _apply(np.linalg.inv(m), event)
    return Event(phi, event.r, z, t)


@dataclass(frozen=True)
class ConstancyReport:
    """Largest relative deviations from the two constancy principles over random cone events."""
    light_deviation: float
    frequency_deviation: Optional[float]
    samples: int
    seed: int
    note: str = ""


def _term_scale(matrix, x):
    return np.tensordot(np.abs(matrix), np.abs(x), axes=1)


def light_cone_deviation(fp, events, matrix=None):
    """Relative deviation of ``z_rot - light_sign * t_rot`` for events on the light cone."""
    m = fp.matrix() if matrix is None else matrix
    x = np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (events.phi, events.z, events.t))))
    y = np.tensordot(m, x, axes=1)
    scale = _term_scale(m, x)
    return np.abs(y[1] - fp.light_sign * y[2]) / (scale[1] + scale[2])


def frequency_cone_deviation(fp, events, matrix=None):
    """Relative deviation of ``tau * phi_rot - omega_sign * t_rot`` for events on the frequency cone."""
    m = fp.matrix() if matrix is None else matrix
    x = np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (events.phi, events.z, events.t))))
    y = np.tensordot(m, x, axes=1)
    scale = _term_scale(m, x)
    tw = fp.tau_omega
    return np.abs(tw * y[0] - fp.omega_sign * y[2]) / (tw * scale[0] + scale[2])


def check_constancy(fp, samples, seed=0, matrix=None):
    """Sample both constancy principles on random events.

    Light-cone events satisfy ``z = light_sign * t``, frequency-cone events ``phi = omega_sign * t / tau``.

    Parameters
    ----------
    fp : FrameParams
        Frame constants.
    samples : int
        Number of random events per cone, at least one.
    seed : int, optional
        Seed of the ``numpy`` random generator.
    matrix : numpy.ndarray, optional
        Replacement coefficient matrix, used to check that a broken transformation is detected.

    Returns
    -------
    ConstancyReport
        The frequency deviation is ``None`` when ``tau = 0``, where that cone is undefined.
    """
    if samples < 1:
        raise ConfigurationError(f"'samples' must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    phi = rng.uniform(-np.pi, np.pi, samples)
    r = rng.uniform(0.0, 2.0, samples)
    z = rng.uniform(-10.0, 10.0, samples)
    t = rng.uniform(-10.0, 10.0, samples)

    light = light_cone_deviation(fp, Event(phi, r, fp.light_sign * t, t), matrix)
    tw = fp.tau_omega
    if tw == 0:
        logger.info("Frequency-cone check skipped: tau = 0")
        return ConstancyReport(float(light.max()), None, samples, seed, "frequency cone undefined for tau = 0")
    freq = frequency_cone_deviation(fp, Event(fp.omega_sign * t / tw, r, z, t), matrix)
    return ConstancyReport(float(light.max()), float(freq.max()), samples, seed)
