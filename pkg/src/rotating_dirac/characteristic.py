#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Characteristic equation of the massive bound modes.

The normalized energy ``E`` of a mode solves ``E (E + L) - 1 - E h**2 / (E - E0) = 0``, where ``L`` is the detuning
and ``h``, ``E0`` the dimensionless field groups.
Clearing the denominator gives the cubic ``E**3 + (L - E0) E**2 - (1 + L E0 + h**2) E + E0 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger

import numpy as np

from rotating_dirac.errors import PoleProximityError

logger = getLogger(__name__)

EPS = np.finfo(float).eps

#: Default distance to the pole below which a root is rejected.
POLE_TOL = 1e-8
#: Roots closer than this many ulps are one double root.
MERGE_ULPS = 64


@dataclass(frozen=True)
class CharacteristicRoot:
    """Real root of the characteristic equation with its scaled residual and distance to the pole."""
    value: float
    residual: float
    pole_distance: float


def characteristic_function(energy, h, E0, Lambda):
    """Rational form ``E (E + L) - 1 - E h**2 / (E - E0)``."""
    energy = np.asarray(energy, dtype=float)
    if h == 0:
        return energy * (energy + Lambda) - 1.0
    return energy * (energy + Lambda) - 1.0 - energy * h * h / (energy - E0)


def characteristic_residual(energy, h, E0, Lambda):
    """Rational-form residual divided by the magnitude of its terms."""
    energy = np.asarray(energy, dtype=float)
    scale = np.abs(energy * (energy + Lambda)) + 1.0
    if h != 0:
        scale = scale + np.abs(energy * h * h / (energy - E0))
    return np.abs(characteristic_function(energy, h, E0, Lambda)) / scale


def cubic_coefficients(h, E0, Lambda):
    """Coefficients ``(1, a, b, c)`` of the cleared characteristic cubic, highest degree first."""
    return 1.0, Lambda - E0, -(1.0 + Lambda * E0 + h * h), E0


def cubic_discriminant(a, b, c):
    """Discriminant-like quantity of ``x**3 + a x**2 + b x + c``: three distinct real roots when it is negative,
    a double root when it vanishes.
    """
    a13 = a / 3.0
    f = b / 3.0 - a13 * a13
    g = a13 * (2.0 * a13 * a13 - b) + c
    return 0.25 * g * g + f * f * f


def _polish(x, a, b, c):
    p = ((x + a) * x + b) * x + c
    dp = (3.0 * x + 2.0 * a) * x + b
    if dp == 0:
        return x
    y = x - p / dp
    q = ((y + a) * y + b) * y + c
    return y if abs(q) <= abs(p) else x


def solve_cubic(a, b, c):
    """Real roots of the monic cubic ``x**3 + a x**2 + b x + c = 0``, in ascending order.

    Closed form: trigonometric branch when three real roots exist, Cardano's formula otherwise.
    Each root gets one Newton step. A double root is listed once.

    Examples
    --------
    >>> from rotating_dirac.characteristic import solve_cubic
    >>> [round(x, 12) for x in solve_cubic(-6.0, 11.0, -6.0)]
    [1.0, 2.0, 3.0]
    """
    third = 1.0 / 3.0
    a13 = a * third
    a2 = a13 * a13
    f = third * b - a2
    g = a13 * (2.0 * a2 - b) + c
    h = 0.25 * g * g + f * f * f

    if f == g == h == 0:
        roots = [-a13]
    elif h <= 0:
        j = np.sqrt(-f)
        k = np.arccos(np.clip(-0.5 * g / (j * j * j), -1.0, 1.0))
        roots = [2.0 * j * np.cos(third * (k + 2.0 * np.pi * i)) - a13 for i in range(3)]
    else:
        sqrt_h = np.sqrt(h)
        roots = [float(np.cbrt(-0.5 * g + sqrt_h) + np.cbrt(-0.5 * g - sqrt_h) - a13)]
    merged = []
    for x in sorted(float(_polish(x, a, b, c)) for x in roots):
        if merged and x - merged[-1] <= MERGE_ULPS * EPS * max(1.0, abs(x)):
            logger.debug(f"Merging the double root {merged[-1]!r}, {x!r}")
            merged[-1] = 0.5 * (merged[-1] + x)
        else:
            merged.append(x)
    return merged


def characteristic_roots(h, E0, Lambda, pole_tol=POLE_TOL):
    """Find every real root of the characteristic equation.

    Parameters
    ----------
    h : float
        Dimensionless wave amplitude group.
    E0 : float
        Dimensionless constant-field group, the pole of the rational form.
    Lambda : float
        Normalized detuning.
    pole_tol : float, optional
        Roots closer than this to `E0` are rejected.

    Returns
    -------
    list of CharacteristicRoot
        Sorted by increasing value.

    Raises
    ------
    rotating_dirac.errors.PoleProximityError
        If a root of the cubic sits within `pole_tol` of `E0` while ``h != 0``.

    Notes
    -----
    For ``h = 0`` the pole term vanishes and the roots are ``(-L +/- sqrt(L**2 + 4)) / 2``.

    Examples
    --------
    >>> from rotating_dirac.characteristic import characteristic_roots
    >>> [round(r.value, 12) for r in characteristic_roots(0.0, 0.0, 0.0)]
    [-1.0, 1.0]
    """
    if h == 0:
        disc = np.sqrt(Lambda * Lambda + 4.0)
        # Cancellation-free pair of quadratic roots.
        q = -0.5 * (Lambda + np.copysign(disc, Lambda))
        values = sorted([float(q), float(-1.0 / q)])
    else:
        values = solve_cubic(*cubic_coefficients(h, E0, Lambda)[1:])
        close = [x for x in values if abs(x - E0) <= pole_tol]
        if close:
            logger.warning(f"Root(s) {close} within {pole_tol} of the pole E0={E0}")
            raise PoleProximityError(f"root within {pole_tol:.1e} of the pole E0={E0}", roots=values, pole=E0)

    roots = [CharacteristicRoot(x, float(characteristic_residual(x, h, E0, Lambda)), abs(x - E0)) for x in values]
    logger.debug(f"Characteristic roots for h={h}, E0={E0}, Lambda={Lambda}: {[r.value for r in roots]}")
    return roots


def detuning(p, cfg, level=0):
    """Normalized detuning ``(2 k p + d_branch (1 + 2 level)) / m`` of a massive mode.

    `level` is ``0`` for the ground state and ``1`` for the first excited state; `p` is the momentum parameter
    of the stationary equation.
    """
    return (2.0 * cfg.propagation * p + cfg.d_branch * (1 + 2 * level)) / cfg.mass


def momentum_from_detuning(Lambda, cfg, level=0):
    """Inverse of `detuning`: the momentum parameter giving the normalized detuning `Lambda`."""
    return (Lambda * cfg.mass - cfg.d_branch * (1 + 2 * level)) / (2.0 * cfg.propagation)
