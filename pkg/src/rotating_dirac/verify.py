#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Residuals of candidate solutions substituted into the Dirac equation.

Two residuals are available:

* `dirac_residual` evaluates ``i dPsi/dt - alpha . (-i grad - e A) Psi - m beta Psi`` in the resting frame, with
  analytic or finite difference derivatives;
* `rotating_residual` evaluates the stationary operator of the rotating frame on the spinor polynomial, with the
  Gaussian envelope factored out, which makes the residual a quadratic polynomial in ``(xr, yr)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field as dc_field
from logging import getLogger
from typing import Optional

import numpy as np

from rotating_dirac import DIRECTIONS
from rotating_dirac import SCHEMES
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.errors import StepSizeError
from rotating_dirac.field import potential
from rotating_dirac.frame import Event
from rotating_dirac.spinor import ALPHA1
from rotating_dirac.spinor import ALPHA2
from rotating_dirac.spinor import ALPHA3
from rotating_dirac.spinor import BETA
from rotating_dirac.spinor import IDENTITY
from rotating_dirac.spinor import ROTATION_GENERATOR

logger = getLogger(__name__)

EPS = np.finfo(float).eps
#: Sampling radius around the envelope centre, in envelope widths.
SAMPLE_WIDTHS = 4.0
#: Half-range of the sampled ``z`` and ``t`` values.
SAMPLE_SPAN = 5.0
#: Monomials of the rotating-frame residual polynomial.
MONOMIALS = ['1', 'x', 'y', 'xx', 'xy', 'yy']

# Ridders' tableau: step reduction, maximum size and early stop factor.
CON = 1.4
NTAB = 10
SAFE = 2.0


def _cartesian(event):
    r = np.asarray(event.r, dtype=float)
    phi = np.asarray(event.phi, dtype=float)
    return r * np.cos(phi), r * np.sin(phi), np.asarray(event.z, dtype=float), np.asarray(event.t, dtype=float)


def _apply(matrix, psi):
    return np.einsum('ij,...j->...i', matrix, psi)


def coordinate_scale(wf, direction):
    """Characteristic length or time over which `wf` varies along `direction`."""
    if direction in ('x', 'y'):
        return 1.0 / np.sqrt(wf.d) if wf.d > 0 else 1.0
    rate = 1.0 + abs(wf.mode.E) + abs(wf.mode.p)
    if wf.d > 0:
        rate += abs(wf.d2) / np.sqrt(wf.d) + abs(wf.d2) ** 2 / wf.d
    return 1.0 / rate


def default_step(wf, direction):
    """Finite difference step ``eps**(1/3) * scale``."""
    return EPS ** (1.0 / 3.0) * coordinate_scale(wf, direction)


def _shifted(wf, coords, direction, delta):
    x, y, z, t = coords
    shifted = dict(x=x, y=y, z=z, t=t)
    shifted[direction] = shifted[direction] + delta
    return wf(shifted['x'], shifted['y'], shifted['z'], shifted['t'])


def _ridders(func, h):
    """Ridders' polynomial extrapolation of central differences, returns ``(derivative, error)``."""
    con2 = CON * CON

    def nrm(v):
        return np.max(np.abs(v))

    a = dict()
    hh = h
    a[0, 0] = (func(hh) - func(-hh)) / (2.0 * hh)
    err = np.inf
    result = a[0, 0]
    for i in range(1, NTAB):
        hh = hh / CON
        a[0, i] = (func(hh) - func(-hh)) / (2.0 * hh)
        fac = con2
        for j in range(1, i + 1):
            a[j, i] = (a[j - 1, i] * fac - a[j - 1, i - 1]) / (fac - 1.0)
            fac = con2 * fac
            errt = max(nrm(a[j, i] - a[j - 1, i]), nrm(a[j, i] - a[j - 1, i - 1]))
            if errt <= err:
                err = errt
                result = a[j, i]
        if nrm(a[i, i] - a[i - 1, i - 1]) >= SAFE * err:
            break
    return result, err


def derivative(wf, event, direction, scheme='analytic', step=None):
    """Partial derivative of the resting-frame value of `wf` at `event`.

    Parameters
    ----------
    wf : rotating_dirac.states.WaveFunctionModel
        Resting-frame model.
    event : rotating_dirac.frame.Event
        Resting-frame event(s).
    direction : {'t', 'x', 'y', 'z'}
        Coordinate to differentiate along.
    scheme : {'analytic', 'fd2', 'fd4', 'richardson'}
        Analytic chain rule, central differences of order 2 or 4, or Ridders' extrapolation.
    step : float, optional
        Finite difference step, defaults to `default_step`; initial step of Ridders' tableau is ``100 * step``.

    Returns
    -------
    numpy.ndarray
        Spinor(s) with a trailing axis of size 4.

    Raises
    ------
    rotating_dirac.errors.StepSizeError
        If the step is not positive or vanishes against the coordinate value.
    """
    if direction not in DIRECTIONS:
        raise ConfigurationError(f"unknown direction '{direction}', expected one of {DIRECTIONS}")
    if scheme not in SCHEMES:
        raise ConfigurationError(f"unknown derivative scheme '{scheme}', expected one of {SCHEMES}")
    coords = _cartesian(event)
    if scheme == 'analytic':
        return wf.derivatives(*coords)[direction]

    h = default_step(wf, direction) if step is None else step
    origin = coords[DIRECTIONS.index(direction)]
    if not (np.isfinite(h) and h > 0) or np.any(origin + h == origin):
        raise StepSizeError(f"step {h!r} underflows along '{direction}'")

    def f(delta):
        return _shifted(wf, coords, direction, delta)

    if scheme == 'fd2':
        return (f(h) - f(-h)) / (2.0 * h)
    if scheme == 'fd4':
        return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h)
    result, err = _ridders(f, 100.0 * h)
    logger.debug(f"Ridders derivative along '{direction}': error estimate {err:.3e}")
    return result


def _all_derivatives(wf, event, scheme, step):
    if scheme == 'analytic':
        return wf.derivatives(*_cartesian(event))
    return {d: derivative(wf, event, d, scheme, step) for d in DIRECTIONS}


def dirac_residual(wf, cfg, event, scheme='analytic', step=None):
    """Residual ``i dPsi/dt - alpha . (-i grad - e A) Psi - m beta Psi`` at resting-frame event(s).

    Examples
    --------
    >>> from rotating_dirac.field import FieldConfig
    >>> from rotating_dirac.frame import Event
    >>> from rotating_dirac.states import free_plane_wave
    >>> from rotating_dirac.verify import dirac_residual
    >>> wf = free_plane_wave(0.7, 1.0)
    >>> cfg = FieldConfig(H=0.0, H3=0.0, mass=1.0)
    >>> bool(abs(dirac_residual(wf, cfg, Event(0.3, 1.0, 0.2, 0.5))).max() < 1e-12)
    True
    """
    if wf.frame != 'resting':
        raise ConfigurationError("dirac_residual needs a resting-frame model, see to_resting_wavefunction")
    x, y, z, t = _cartesian(event)
    psi = wf(x, y, z, t)
    der = _all_derivatives(wf, event, scheme, step)
    a = potential(cfg, x, y, z, t)
    kinetic = (_apply(ALPHA1, -1j * der['x'] - cfg.charge * np.asarray(a.A1)[..., None] * psi)
               + _apply(ALPHA2, -1j * der['y'] - cfg.charge * np.asarray(a.A2)[..., None] * psi)
               + _apply(ALPHA3, -1j * der['z']))
    return 1j * der['t'] - kinetic - cfg.mass * _apply(BETA, psi)


def residual_scale(wf, cfg):
    """Dimensionless scale ``|E| + |p| + m + 1`` of the residual."""
    return abs(wf.mode.E) + abs(wf.mode.p) + cfg.mass + 1.0


def relative_dirac_residual(wf, cfg, event, scheme='analytic', step=None):
    """``|R| / (|Psi| (|E| + |p| + m + 1))``, zero where ``Psi`` vanishes."""
    res = np.linalg.norm(dirac_residual(wf, cfg, event, scheme, step), axis=-1)
    psi = np.linalg.norm(wf(*_cartesian(event)), axis=-1)
    scale = residual_scale(wf, cfg)
    return np.divide(res, psi * scale, out=np.zeros_like(res), where=psi > 0)


def _bracket_parts(wf, cfg):
    pol, k = cfg.polarization, cfg.propagation
    rot = pol * IDENTITY - k * ALPHA3
    d, d1, d2 = wf.d, wf.d1, wf.d2
    half_eh3 = 0.5 * cfg.eH3
    b0 = (-wf.mode.E * IDENTITY + 0.5j * rot @ ROTATION_GENERATOR - 1j * d1 * ALPHA1 - 1j * d2 * ALPHA2
          + wf.mode.p * ALPHA3 - k * cfg.eH * ALPHA1 + cfg.mass * BETA)
    bx = 1j * d2 * rot + 1j * d * ALPHA1 - half_eh3 * ALPHA2
    by = -1j * d1 * rot + 1j * d * ALPHA2 + half_eh3 * ALPHA1
    return rot, b0, bx, by


def rotating_residual(wf, cfg, xr, yr):
    """Stationary rotating-frame operator applied to the spinor polynomial at ``(xr, yr)``.

    The operator is
    ``-E + i (pol - k alpha3) [xr d2 - yr d1 + alpha1 alpha2 / 2] - i alpha1 (-xr d + d1) - i alpha2 (-yr d + d2)
    + alpha3 p - (alpha2 xr - alpha1 yr) e H3 / 2 - alpha1 e H / k + beta m``,
    plus the terms from the derivatives of the polynomial.
    The common factor ``N exp(G)`` is left out.
    """
    pol, k = cfg.polarization, cfg.propagation
    rot = pol * IDENTITY - k * ALPHA3
    d, d1, d2 = wf.d, wf.d1, wf.d2
    u = wf.u0 + wf.ux * xr + wf.uy * yr
    op = (-wf.mode.E * IDENTITY
          + 1j * rot @ ((xr * d2 - yr * d1) * IDENTITY + 0.5 * ROTATION_GENERATOR)
          - 1j * ALPHA1 * (-xr * d + d1)
          - 1j * ALPHA2 * (-yr * d + d2)
          + wf.mode.p * ALPHA3
          - (ALPHA2 * xr - ALPHA1 * yr) * 0.5 * cfg.eH3
          - ALPHA1 * cfg.eH / k
          + cfg.mass * BETA)
    return op @ u + 1j * rot @ (xr * wf.uy - yr * wf.ux) - 1j * (ALPHA1 @ wf.ux + ALPHA2 @ wf.uy)


def residual_coefficients(wf, cfg):
    """Spinor coefficients of the rotating residual polynomial, keyed by `MONOMIALS`.

    Collected independently of `rotating_residual`, from the constant and linear parts of the operator.
    """
    rot, b0, bx, by = _bracket_parts(wf, cfg)
    u0, ux, uy = wf.u0, wf.ux, wf.uy
    return {
        '1': b0 @ u0 - 1j * (ALPHA1 @ ux + ALPHA2 @ uy),
        'x': b0 @ ux + bx @ u0 + 1j * rot @ uy,
        'y': b0 @ uy + by @ u0 - 1j * rot @ ux,
        'xx': bx @ ux,
        'xy': bx @ uy + by @ ux,
        'yy': by @ uy,
    }


def rotating_scale(wf, cfg):
    """Magnitude of the terms of the rotating operator times the size of the spinor polynomial."""
    terms = (abs(wf.mode.E) + abs(wf.mode.p) + cfg.mass + 1.0 + wf.d + abs(wf.d1) + abs(wf.d2)
             + abs(cfg.eH) + abs(cfg.eH3))
    size = max(np.linalg.norm(wf.u0), np.linalg.norm(wf.ux), np.linalg.norm(wf.uy))
    return terms * size


def relative_coefficients(wf, cfg):
    """Norm of each residual coefficient relative to `rotating_scale`."""
    scale = rotating_scale(wf, cfg)
    return {key: float(np.linalg.norm(c) / scale) for key, c in residual_coefficients(wf, cfg).items()}


@dataclass(frozen=True)
class ResidualReport:
    """Aggregate relative residuals of a model over a batch of events.

    `step` maps each direction to its finite difference step, ``None`` for analytic derivatives.
    """
    max_rel_residual: float
    mean_rel_residual: float
    worst_point: Event
    scheme: str
    step: Optional[dict]
    points_evaluated: int
    seed: Optional[int] = None
    scale: str = "|E| + |p| + m + 1 (natural units)"
    records: list = dc_field(default_factory=list)

    def to_dict(self):
        out = asdict(self)
        out['worst_point'] = {k: float(v) for k, v in self.worst_point._asdict().items()}
        return out


def sample_events(wf, count, seed=0, widths=SAMPLE_WIDTHS, span=SAMPLE_SPAN):
    """Random resting-frame events within `widths` envelope widths of the envelope centre.

    Returns
    -------
    rotating_dirac.frame.Event
        Arrays of length `count`.
    """
    rng = np.random.default_rng(seed)
    z = rng.uniform(-span, span, count)
    t = rng.uniform(-span, span, count)
    if wf.d > 0:
        mx, my = wf.envelope_mean
        radius = widths / np.sqrt(wf.d)
    else:
        mx, my, radius = 0.0, 0.0, widths
    xr = mx + rng.uniform(-radius, radius, count)
    yr = my + rng.uniform(-radius, radius, count)
    theta, _, _ = wf.rotated_coordinates(0.0, 0.0, z, t)
    c, s = np.cos(theta), np.sin(theta)
    x, y = xr * c - yr * s, xr * s + yr * c
    return Event(np.arctan2(y, x), np.hypot(x, y), z, t)


def _chunks(events, parts):
    bounds = np.linspace(0, len(events.t), parts + 1).astype(int)
    return [Event(*(np.asarray(c)[lo:hi] for c in events)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def residual_report(wf, cfg, events=None, count=1000, seed=0, scheme='analytic', step=None, workers=4,
                    keep_records=False):
    """Evaluate the relative Dirac residual over a batch of events.

    Chunks of the batch are evaluated in a thread pool and reduced in input order.

    Parameters
    ----------
    wf : rotating_dirac.states.WaveFunctionModel
        Resting-frame model.
    cfg : rotating_dirac.field.FieldConfig
        Field and particle.
    events : rotating_dirac.frame.Event, optional
        Events to use, defaults to `sample_events` with `count` and `seed`.
    scheme, step
        See `derivative`.
    workers : int, optional
        Number of threads.
    keep_records : bool, optional
        Keep the per-event relative residuals in the report.

    Returns
    -------
    ResidualReport
    """
    if events is None:
        events = sample_events(wf, count, seed)
    else:
        seed = None
    chunks = _chunks(events, max(1, workers))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(lambda ev: relative_dirac_residual(wf, cfg, ev, scheme, step), chunks))
    rel = np.concatenate(parts)
    worst = int(np.argmax(rel))
    worst_point = Event(*(float(np.asarray(c)[worst]) for c in events))
    used_step = None
    if scheme != 'analytic':
        used_step = {d: step if step is not None else default_step(wf, d) for d in DIRECTIONS}
    records = [float(r) for r in rel] if keep_records else []
    logger.info(f"Residual of '{wf.family}' over {rel.size} events: max {rel.max():.3e}, mean {rel.mean():.3e}")
    return ResidualReport(float(rel.max()), float(rel.mean()), worst_point, scheme, used_step, int(rel.size), seed,
                          records=records)
