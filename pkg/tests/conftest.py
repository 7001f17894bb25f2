#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from rotating_dirac.characteristic import cubic_coefficients
from rotating_dirac.field import FieldConfig
from rotating_dirac.frame import FrameParams

#: Dimensionless ``tau * Omega`` values of the constancy suite.
TAU_OMEGAS = [0.0, 1e-6, 1e-2, 1.0]


def bisection_roots(h, E0, Lambda, points=200001, iterations=200):
    """Real roots of the cleared characteristic cubic by sign-change scanning and bisection."""
    _, a, b, c = cubic_coefficients(h, E0, Lambda)
    bound = 1.0 + max(abs(a), abs(b), abs(c))

    def cubic(x):
        return ((x + a) * x + b) * x + c

    grid = np.linspace(-bound, bound, points)
    values = cubic(grid)
    roots = []
    for i in np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:])):
        lo, hi = grid[i], grid[i + 1]
        if values[i + 1] == 0:
            continue
        if values[i] == 0:
            roots.append(float(lo))
            continue
        for _ in range(iterations):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if np.sign(cubic(mid)) == np.sign(cubic(lo)):
                lo = mid
            else:
                hi = mid
        roots.append(float(0.5 * (lo + hi)))
    return sorted(roots)


@pytest.fixture
def bisection_oracle():
    return bisection_roots


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def massless_cfg():
    return FieldConfig(H=0.5, H3=-2.0, charge=1.0, mass=0.0)


@pytest.fixture
def massive_cfg():
    return FieldConfig(H=0.8, H3=-2.0, charge=1.0, mass=1.5)


@pytest.fixture
def flipped_cfg():
    return FieldConfig(H=0.8, H3=2.0, charge=1.0, mass=1.5, d_branch=1)


@pytest.fixture
def resting_frame():
    return FrameParams.natural(0.0)


@pytest.fixture(params=TAU_OMEGAS)
def tau_omega(request):
    return request.param
