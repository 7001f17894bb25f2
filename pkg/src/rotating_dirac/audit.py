#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Measure which discrete sign conventions make the closed-form states exact.

Each `ConventionChoice` fixes the charge sign, the envelope branch, the polarization and propagation signs, the
frequency-constancy sign and the light sign.
The audit builds the state of a family under every choice, substitutes it into the Dirac equation and ranks the
choices by their largest relative residual.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import replace
from logging import getLogger

import numpy as np
import pandas as pd

from rotating_dirac.characteristic import characteristic_roots
from rotating_dirac.characteristic import detuning
from rotating_dirac.errors import RotatingDiracError
from rotating_dirac.states import ground_state
from rotating_dirac.states import massless_from_rotating
from rotating_dirac.states import to_resting_wavefunction
from rotating_dirac.verify import relative_dirac_residual
from rotating_dirac.verify import sample_events

logger = getLogger(__name__)

SIGNS = (-1, 1)
#: Residual below which a convention is considered exact.
PASS_TOL = 1e-8
#: Families the audit knows how to build.
AUDIT_FAMILIES = ['massless', 'ground']


@dataclass(frozen=True)
class ConventionChoice:
    charge_sign: int
    d_branch: int
    polarization: int
    propagation: int
    omega_sign: int
    light_sign: int
    strict_prefactor: bool = False

    def apply(self, cfg, fp):
        """Field and frame of the templates with this choice of signs."""
        cfg = replace(cfg.with_charge_sign(self.charge_sign), d_branch=self.d_branch,
                      polarization=self.polarization, propagation=self.propagation)
        fp = replace(fp, polarization=self.polarization, propagation=self.propagation,
                     omega_sign=self.omega_sign, light_sign=self.light_sign)
        return cfg, fp


def enumerate_choices(strict_prefactor=False):
    """The 64 sign combinations, with the prefactor flag held fixed."""
    return [ConventionChoice(*signs, strict_prefactor=strict_prefactor) for signs in itertools.product(SIGNS, repeat=6)]


def build_audit_state(family, cfg, fp, momentum, root_index=0, strict_prefactor=False):
    """Resting-frame state of `family` under the signs already applied to `cfg` and `fp`, without validation.

    For the massless family `momentum` is the rotating-frame momentum and the energy follows from
    ``E_rot = light_sign * p_rot`` with ``n = 0``.
    For the ground family it is the momentum parameter of the stationary equation and `root_index` selects the
    characteristic root.
    """
    if family == 'massless':
        wf = massless_from_rotating(cfg, fp, momentum, strict_prefactor=strict_prefactor, validate=False)
    elif family == 'ground':
        roots = characteristic_roots(cfg.h, cfg.E0, detuning(momentum, cfg, 0))
        if not 0 <= root_index < len(roots):
            raise RotatingDiracError(f"root index {root_index} out of range, {len(roots)} root(s) found")
        wf = ground_state(cfg, fp, roots[root_index].value, momentum, validate=False)
    else:
        raise RotatingDiracError(f"unknown audit family '{family}', expected one of {AUDIT_FAMILIES}")
    return to_resting_wavefunction(wf, fp, validate=False)


def convention_audit(family, cfg, fp, momentum, count=200, seed=0, root_index=0, strict_prefactor=False,
                     tol=PASS_TOL):
    """Rank all sign conventions by the largest relative Dirac residual of the family.

    Parameters
    ----------
    family : {'massless', 'ground'}
        State family to build.
    cfg : rotating_dirac.field.FieldConfig
        Template field; only the magnitude of the charge is kept.
    fp : rotating_dirac.frame.FrameParams
        Template frame.
    momentum : float
        See `build_audit_state`.
    count, seed : int
        Size and seed of the event batch.
    tol : float
        Residual below which a row passes.

    Returns
    -------
    pandas.DataFrame
        One row per choice sorted by ``max_rel_residual``; rows that could not be built get ``inf`` and an
        ``error`` message.
        ``DataFrame.attrs['passing']`` holds the number of rows at or below `tol`.
    """
    rows = []
    for choice in enumerate_choices(strict_prefactor):
        row = asdict(choice)
        try:
            c_cfg, c_fp = choice.apply(cfg, fp)
            wf = build_audit_state(family, c_cfg, c_fp, momentum, root_index, strict_prefactor)
            events = sample_events(wf, count, seed)
            rel = relative_dirac_residual(wf, c_cfg, events)
            row.update(max_rel_residual=float(np.max(rel)), mean_rel_residual=float(np.mean(rel)), error='')
        except (RotatingDiracError, ValueError) as err:
            row.update(max_rel_residual=np.inf, mean_rel_residual=np.inf, error=str(err))
        rows.append(row)

    df = pd.DataFrame(rows).sort_values('max_rel_residual', kind='mergesort').reset_index(drop=True)
    passing = int((df['max_rel_residual'] <= tol).sum())
    df.attrs['passing'] = passing
    if passing == 0:
        logger.error(f"No sign convention makes the '{family}' family exact to {tol:.1e}; "
                     f"best residual {df['max_rel_residual'].iloc[0]:.3e}")
    else:
        logger.info(f"{passing} sign convention(s) make the '{family}' family exact to {tol:.1e}")
    return df
