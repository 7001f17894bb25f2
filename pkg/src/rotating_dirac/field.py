#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Circularly polarized travelling wave on top of a constant axial magnetic field.

All quantities are dimensionless with ``hbar = c = Omega = 1``.
Field amplitudes are expressed so that ``charge * H`` is the coupling entering the Dirac equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import replace
from typing import NamedTuple

import numpy as np

from rotating_dirac.errors import ConfigurationError
from rotating_dirac.frame import check_sign


class PotentialValue(NamedTuple):
    A1: float
    A2: float
    A3: float


@dataclass(frozen=True)
class FieldConfig:
    """Rotating field seen by a particle of given charge and mass.

    Parameters
    ----------
    H : float
        Magnetic amplitude of the travelling wave.
    H3 : float
        Constant magnetic field along the rotation axis.
    charge : float
        Signed particle charge.
    mass : float
        Particle mass, zero for the massless family.
    polarization : int
        Polarization sign of the wave.
    propagation : int
        Propagation sign of the wave along the axis.
    d_branch : int
        Sign selecting the envelope family, ``d = -d_branch * charge * H3 / 2`` is positive on a consistent branch.
    """
    H: float = 0.0
    H3: float = -1.0
    charge: float = 1.0
    mass: float = 1.0
    polarization: int = 1
    propagation: int = 1
    d_branch: int = -1

    def __post_init__(self):
        for name in ('polarization', 'propagation', 'd_branch'):
            check_sign(getattr(self, name), name)
        if not self.mass >= 0:
            raise ConfigurationError(f"'mass' must be non-negative, got {self.mass!r}")
        for name in ('H', 'H3', 'charge', 'mass'):
            if not np.isfinite(getattr(self, name)):
                raise ConfigurationError(f"'{name}' must be finite")

    @property
    def k(self):
        """Propagation constant ``propagation * Omega / c``."""
        return float(self.propagation)

    @property
    def eH(self):
        return self.charge * self.H

    @property
    def eH3(self):
        return self.charge * self.H3

    @property
    def d(self):
        """Envelope width parameter ``|charge * H3| / 2``."""
        return 0.5 * abs(self.eH3)

    @property
    def branch_consistent(self):
        """Whether the selected branch matches the sign of ``charge * H3``."""
        return self.d_branch * self.eH3 > 0

    @property
    def localization_length(self):
        """Transverse Gaussian width ``1 / sqrt(d)``."""
        return 1.0 / np.sqrt(self.d) if self.d > 0 else np.inf

    @property
    def massive(self):
        return self.mass > 0

    def _require_mass(self, name):
        if not self.massive:
            raise ConfigurationError(f"the group '{name}' is not defined for a massless particle")

    @property
    def h(self):
        """Dimensionless wave amplitude ``charge * H / (k * m)``."""
        self._require_mass('h')
        return self.eH / (self.k * self.mass)

    @property
    def E0(self):
        """Dimensionless constant-field group, ``2 d / m`` on the ``d_branch = -1`` family, ``-2 d / m`` otherwise."""
        self._require_mass('E0')
        return -self.d_branch * 2.0 * self.d / self.mass

    def with_charge_sign(self, sign):
        return replace(self, charge=sign * abs(self.charge))

    def with_groups(self, h, E0):
        """Field giving the groups `h` and `E0` to the same particle on the same branch.

        Raises
        ------
        rotating_dirac.errors.ConfigurationError
            If the particle is massless or neutral, or if `E0` has the wrong sign for a localized state on the branch.
        """
        self._require_mass('h')
        d = -self.d_branch * E0 * self.mass / 2.0
        if self.charge == 0 or not d > 0:
            raise ConfigurationError(f"no localized field gives E0={E0} on d_branch={self.d_branch}")
        return replace(self, H=h * self.k * self.mass / self.charge, H3=2.0 * self.d_branch * d / self.charge)


def potential(cfg, x, y, z, t):
    """Vector potential of the field at a resting-frame point.

    ``A1 = -H3 y / 2 + (H / k) cos(pol t - k z)``, ``A2 = H3 x / 2 + (H / k) sin(pol t - k z)``, ``A3 = 0``.

    Examples
    --------
    >>> from rotating_dirac.field import FieldConfig, potential
    >>> a = potential(FieldConfig(H=2.0, H3=1.0), 0.0, 0.0, 0.0, 0.0)
    >>> float(a.A1), float(a.A2)
    (2.0, 0.0)
    """
    phase = cfg.polarization * t - cfg.k * z
    wave = cfg.H / cfg.k
    a1 = -0.5 * cfg.H3 * y + wave * np.cos(phase)
    a2 = 0.5 * cfg.H3 * x + wave * np.sin(phase)
    return PotentialValue(a1, a2, np.zeros_like(a1))


def field_strengths(cfg, x, y, z, t):
    """Electric and magnetic fields derived analytically from `potential`.

    Returns
    -------
    tuple of numpy.ndarray
        ``(E, B)``, each stacked on the first axis as ``(3, ...)``.
    """
    phase = cfg.polarization * t - cfg.k * z
    cos, sin = np.cos(phase), np.sin(phase)
    zero = np.zeros_like(cos)
    sign = cfg.polarization * cfg.propagation
    e_field = np.stack([sign * cfg.H * sin, -sign * cfg.H * cos, zero])
    b_field = np.stack([cfg.H * cos, cfg.H * sin, zero + cfg.H3])
    return e_field, b_field
