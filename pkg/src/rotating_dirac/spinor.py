#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Dirac matrices in the Dirac-Pauli representation and the spinor operations built on them.

Spinors are ``numpy`` arrays of shape ``(4,)`` with ``complex128`` entries, matrices are ``(4, 4)`` arrays.
Every function returns a fresh array, nothing is modified in place.
"""

import numpy as np

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

IDENTITY = np.eye(4, dtype=complex)


def _off_diagonal(block):
    m = np.zeros((4, 4), dtype=complex)
    m[:2, 2:] = block
    m[2:, :2] = block
    return m


def _diagonal(block):
    m = np.zeros((4, 4), dtype=complex)
    m[:2, :2] = block
    m[2:, 2:] = block
    return m


def dirac_matrices():
    """Return the Dirac matrices ``(alpha1, alpha2, alpha3, beta)``.

    The ``alpha_k`` carry the Pauli matrix ``sigma_k`` in their off-diagonal blocks and ``beta = diag(1, 1, -1, -1)``.

    Returns
    -------
    tuple of numpy.ndarray
        Four ``(4, 4)`` complex matrices.

    Examples
    --------
    >>> import numpy as np
    >>> from rotating_dirac.spinor import dirac_matrices
    >>> a1, a2, a3, beta = dirac_matrices()
    >>> np.allclose(a1 @ a2, 1j * np.diag([1, -1, 1, -1]))
    True
    """
    alphas = tuple(_off_diagonal(s) for s in PAULI)
    beta = np.diag([1, 1, -1, -1]).astype(complex)
    return alphas + (beta,)


ALPHA1, ALPHA2, ALPHA3, BETA = dirac_matrices()
#: Rotation generator ``alpha1 @ alpha2 = i diag(1, -1, 1, -1)``.
ROTATION_GENERATOR = ALPHA1 @ ALPHA2
#: Spin matrices ``Sigma_k = diag(sigma_k, sigma_k)``.
SIGMA = tuple(_diagonal(s) for s in PAULI)
#: Map relating the two branches of the constant-field envelope, ``alpha1 @ alpha3 @ beta``.
FLIP = ALPHA1 @ ALPHA3 @ BETA


def rot_phase(theta):
    """Closed form of ``exp(theta * alpha1 @ alpha2 / 2)``.

    Parameters
    ----------
    theta : float
        Rotation angle in radians.

    Returns
    -------
    numpy.ndarray
        ``diag(e^{i theta/2}, e^{-i theta/2}, e^{i theta/2}, e^{-i theta/2})``.

    Examples
    --------
    >>> import numpy as np
    >>> from rotating_dirac.spinor import rot_phase
    >>> np.allclose(rot_phase(2 * np.pi), -np.eye(4))
    True
    """
    return np.diag(rot_phase_diagonal(theta))


def rot_phase_diagonal(theta):
    """Diagonal of `rot_phase`, with shape ``numpy.shape(theta) + (4,)``."""
    half = 0.5 * np.asarray(theta, dtype=float)[..., None]
    return np.cos(half) + np.sin(half) * np.diag(ROTATION_GENERATOR)


def flip_state(psi, propagation):
    """Return ``propagation * alpha1 @ alpha3 @ beta @ psi``.

    Maps a spinor of one constant-field branch onto the other one.
    Applying it twice gives ``-psi``.
    """
    return propagation * (FLIP @ np.asarray(psi, dtype=complex))


def spinor_norm(psi):
    """Euclidean norm of a spinor, or of the last axis of a stack of spinors."""
    return np.linalg.norm(np.asarray(psi), axis=-1)


def spin_expectation(psi):
    """Return ``(<Sigma_1>, <Sigma_2>, <Sigma_3>) / 2`` for a nonzero spinor."""
    psi = np.asarray(psi, dtype=complex)
    norm2 = np.vdot(psi, psi).real
    return tuple(0.5 * np.vdot(psi, s @ psi).real / norm2 for s in SIGMA)
