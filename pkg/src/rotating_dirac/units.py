#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Conversion between SI quantities and the natural units of the library.

The natural units set ``hbar = c = Omega = 1``: time is measured in ``1 / Omega``, length in ``c / Omega`` and
energy in ``hbar * Omega``.
A magnetic induction ``B`` (tesla) acting on a charge ``q e`` enters as the dimensionless product
``q e B c**2 / (hbar Omega**2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy import constants

from rotating_dirac import DEFAULT_TAU
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.frame import FrameParams
from rotating_dirac.modes import resting_gap

HBAR = constants.hbar
C = constants.c
E_CHARGE = constants.e
EV = constants.electron_volt
PROTON_REST_ENERGY = constants.m_p * constants.c ** 2


@dataclass(frozen=True)
class UnitSystem:
    """Natural units attached to an angular frequency `omega` in rad/s."""
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigurationError(f"the angular frequency must remain positive, got {self.omega!r}")

    @property
    def energy_unit(self):
        """``hbar * omega`` in joules."""
        return HBAR * self.omega

    def energy(self, value_ev):
        """Energy in eV to natural units."""
        return value_ev * EV / self.energy_unit

    def energy_to_ev(self, value):
        return value * self.energy_unit / EV

    def mass(self, value_ev):
        """Rest energy ``m c**2`` in eV to natural units."""
        return self.energy(value_ev)

    def momentum(self, value_ev):
        """Momentum ``p c`` in eV to natural units."""
        return self.energy(value_ev)

    def time(self, seconds):
        return seconds * self.omega

    def length(self, metres):
        return metres * self.omega / C

    def field(self, tesla):
        """Magnetic induction per unit charge ``e B c**2 / (hbar omega**2)``."""
        return E_CHARGE * tesla * C ** 2 / (HBAR * self.omega ** 2)

    def frame(self, tau=DEFAULT_TAU, **signs):
        """`FrameParams` in natural units for a time constant `tau` in seconds."""
        return FrameParams.natural(tau * self.omega, **signs)


@dataclass(frozen=True)
class MagnitudeCheck:
    velocity: float
    gap_joule: float
    gap_proton: float


def magnitude_check(tau=DEFAULT_TAU, tau_omega=1e-6, n=1, **signs):
    """Velocity ``|v| c`` in m/s and the resting-frame gap of winding `n`, in joules and proton rest energies."""
    units = UnitSystem(tau_omega / tau)
    fp = units.frame(tau, **signs)
    gap = abs(resting_gap(n, fp)) * units.energy_unit
    return MagnitudeCheck(abs(fp.velocity) * C, gap, gap / PROTON_REST_ENERGY)
