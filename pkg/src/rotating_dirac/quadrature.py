#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Tensor-product Gauss-Legendre quadrature over a transverse cross-section."""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger

import numpy as np
from numpy.polynomial.legendre import leggauss

from rotating_dirac.errors import QuadratureError
from rotating_dirac.errors import StateConstructionError

logger = getLogger(__name__)

#: Absolute tolerance between successive estimates.
QUAD_TOL = 1e-10
#: Box half-width in units of the envelope width ``1 / sqrt(d)``.
BOX_WIDTHS = 8.0
START_NODES = 16
MAX_NODES = 1024


@dataclass(frozen=True)
class QuadratureResult:
    estimate: np.ndarray
    error: float
    nodes: int


def box(wf, z=0.0, t=0.0):
    """Centre ``(x, y)`` and half-width of the integration box of a localized model at fixed ``(z, t)``.

    The box is centred on the envelope mean, rotated back to resting-frame coordinates.
    """
    if not wf.d > 0:
        raise StateConstructionError("cross-section integrals need a localized state (d > 0)")
    mx, my = wf.envelope_mean
    theta, _, _ = wf.rotated_coordinates(0.0, 0.0, z, t)
    c, s = np.cos(theta), np.sin(theta)
    return (float(mx * c - my * s), float(mx * s + my * c)), BOX_WIDTHS / np.sqrt(wf.d)


def integrate_box(integrand, centre, half_width, tol=QUAD_TOL, start=START_NODES, max_nodes=MAX_NODES):
    """Integrate ``integrand(x, y)`` over a square, doubling the nodes per axis until convergence.

    Parameters
    ----------
    integrand : callable
        Takes two ``(n, n)`` coordinate grids and returns values of shape ``(n, n)`` or ``(n, n, k)``.
    centre : tuple of float
        Centre of the square.
    half_width : float
        Half of the side of the square.
    tol : float, optional
        Largest accepted absolute change between two successive estimates.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    rotating_dirac.errors.QuadratureError
        Carries the last estimate and the change that failed the tolerance.
    """
    previous = None
    n = start
    err = np.inf
    while n <= max_nodes:
        nodes, weights = leggauss(n)
        x = centre[0] + half_width * nodes
        y = centre[1] + half_width * nodes
        xx, yy = np.meshgrid(x, y, indexing='ij')
        w2 = np.outer(weights, weights) * half_width ** 2
        values = np.asarray(integrand(xx, yy))
        estimate = np.tensordot(w2, values, axes=([0, 1], [0, 1]))
        if previous is not None:
            err = float(np.max(np.abs(estimate - previous)))
            logger.debug(f"Quadrature with {n} nodes per axis: change {err:.3e}")
            if err < tol:
                return QuadratureResult(estimate, err, n)
        previous = estimate
        n *= 2
    raise QuadratureError(f"cross-section quadrature did not converge to {tol:.1e} with {max_nodes} nodes per axis",
                          estimate=previous, error=err)


def integrate_cross_section(wf, integrand, z=0.0, t=0.0, tol=QUAD_TOL):
    """Integrate ``integrand(x, y)`` over the box of `wf` at fixed ``(z, t)``."""
    centre, half_width = box(wf, z, t)
    return integrate_box(integrand, centre, half_width, tol=tol)


def normalization(wf, z=0.0, t=0.0, tol=QUAD_TOL):
    """Cross-section integral of ``Psi^dagger Psi``.

    Examples
    --------
    >>> from rotating_dirac.field import FieldConfig
    >>> from rotating_dirac.frame import FrameParams
    >>> from rotating_dirac.states import massless_state
    >>> from rotating_dirac.quadrature import normalization
    >>> cfg = FieldConfig(H=0.5, H3=-2.0, charge=1.0, mass=0.0)
    >>> wf = massless_state(cfg, FrameParams.natural(0.0), 1.0, 1.0)
    >>> round(float(normalization(wf).estimate), 8)
    1.0
    """
    def density(x, y):
        psi = wf(x, y, z, t)
        return np.sum(np.abs(psi) ** 2, axis=-1)
    return integrate_cross_section(wf, density, z, t, tol)


def overlap(wf_a, wf_b, z=0.0, t=0.0, tol=QUAD_TOL):
    """Cross-section integral of ``Psi_a^dagger Psi_b``, on the box of `wf_a`."""
    def product(x, y):
        return np.sum(np.conj(wf_a(x, y, z, t)) * wf_b(x, y, z, t), axis=-1)
    return integrate_cross_section(wf_a, product, z, t, tol)
