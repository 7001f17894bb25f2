#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Command line front end.

Sub-commands: ``transform``, ``roots``, ``verify``, ``expect``, ``scan`` and ``audit``.
Exit codes: 0 success, 2 configuration error, 3 pole proximity, 4 residual failure, 5 quadrature failure.

Examples
--------
$ rotating-dirac verify --config run.toml --out report.json
$ rotating-dirac roots --set groups.h=1 --set groups.E0=0.5 --set groups.Lambda=0 --format csv
$ rotating-dirac scan --axis tau_omega --start 1e-8 --stop 1e-4 --num 5 --log --format csv
"""

from __future__ import annotations

import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from logging import getLogger

import numpy as np
import pandas as pd
import toml

from rotating_dirac import SCAN_AXES
from rotating_dirac import __version__
from rotating_dirac.audit import convention_audit
from rotating_dirac.characteristic import characteristic_roots
from rotating_dirac.characteristic import cubic_discriminant
from rotating_dirac.characteristic import cubic_coefficients
from rotating_dirac.characteristic import detuning
from rotating_dirac.characteristic import momentum_from_detuning
from rotating_dirac.config import GroupsBlock
from rotating_dirac.config import load_run_config
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.errors import PoleProximityError
from rotating_dirac.errors import QuadratureError
from rotating_dirac.errors import RotatingDiracError
from rotating_dirac.expectations import closed_form_expectations
from rotating_dirac.expectations import expectation_table
from rotating_dirac.expectations import quadrature_expectations
from rotating_dirac.frame import Event
from rotating_dirac.frame import FrameParams
from rotating_dirac.frame import frequency_cone_deviation
from rotating_dirac.frame import light_cone_deviation
from rotating_dirac.frame import to_resting
from rotating_dirac.frame import to_rotating
from rotating_dirac.log import DEFAULT_LOG_LEVEL
from rotating_dirac.log import configure_logging
from rotating_dirac.log import get_file_logger
from rotating_dirac.modes import quantization_gap
from rotating_dirac.modes import resting_gap
from rotating_dirac.quadrature import normalization
from rotating_dirac.states import excited_state
from rotating_dirac.states import flipped_state
from rotating_dirac.states import ground_state
from rotating_dirac.states import massless_from_rotating
from rotating_dirac.states import massless_zero_state
from rotating_dirac.states import model_norm2
from rotating_dirac.states import to_resting_wavefunction
from rotating_dirac.units import C
from rotating_dirac.utils import dumps
from rotating_dirac.utils import read_events_csv
from rotating_dirac.utils import report_document
from rotating_dirac.utils import table_csv
from rotating_dirac.utils import table_document
from rotating_dirac.utils import write_text
from rotating_dirac.verify import relative_coefficients
from rotating_dirac.verify import residual_report

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_POLE = 3
EXIT_RESIDUAL = 4
EXIT_QUADRATURE = 5

#: Tolerance on the cross-section norm reported by ``verify``.
NORM_TOL = 1e-8
#: Tolerance on the rotating-frame residual coefficients reported by ``verify``.
COEFFICIENT_TOL = 1e-10
#: Averages reported per point by ``scan``.
SCAN_EXPECTATIONS = ['E_a', 'p_za', 's3']


def parse_set(values):
    """Parse repeated ``block.key=value`` options, values read as TOML scalars."""
    overrides = {}
    for item in values or []:
        key, sep, raw = item.partition('=')
        if not sep or '.' not in key:
            raise ConfigurationError(f"expected 'block.key=value', got {item!r}")
        try:
            overrides[key] = toml.loads(f"v = {raw}")['v']
        except toml.TomlDecodeError:
            overrides[key] = raw
    return overrides


def run_config(args):
    overrides = parse_set(args.set)
    overrides.update({
        'verify.seed': args.seed,
        'verify.tolerance': args.tolerance,
        'output.format': args.format,
        'output.path': args.out,
    })
    return load_run_config(args.config, overrides)


def emit_table(run, command, df, extra=None):
    text = table_csv(df) if run.output.format == 'csv' else dumps(table_document(command, df, extra))
    write_text(text, run.output.path)


def massive_roots(run, cfg, level=0, groups=None):
    """Characteristic roots and groups of the massive family, `groups` defaulting to the ``groups`` block."""
    g = run.groups if groups is None else groups
    h = g.h if g.h is not None else cfg.h
    E0 = g.E0 if g.E0 is not None else cfg.E0
    Lambda = g.Lambda if g.Lambda is not None else detuning(run.momentum(), cfg, level)
    return characteristic_roots(h, E0, Lambda), dict(h=h, E0=E0, Lambda=Lambda)


def require_zero_winding(run):
    if run.mode.n != 0:
        raise ConfigurationError(f"states are built for the winding number n = 0 only, got 'mode.n' = {run.mode.n}")


def build_state(run, fp=None):
    """Rotating-frame state of the configured family, with its field and frame.

    `fp` replaces the configured frame.
    """
    require_zero_winding(run)
    cfg = run.field_config()
    fp = run.frame_params() if fp is None else fp
    family = run.mode.family
    if family == 'massless':
        wf = massless_from_rotating(cfg, fp, run.rotating_momentum(), strict_prefactor=run.mode.strict_prefactor)
    elif family == 'massless-zero':
        wf = massless_zero_state(cfg, fp, strict_prefactor=run.mode.strict_prefactor)
    else:
        if run.mode.root_index is None:
            raise ConfigurationError(f"the '{family}' family needs an explicit 'mode.root_index'")
        if family == 'flipped':
            cfg = replace(cfg, d_branch=1)
        level = 1 if family == 'excited' else 0
        roots, _ = massive_roots(run, cfg, level, GroupsBlock())
        if not 0 <= run.mode.root_index < len(roots):
            raise ConfigurationError(f"'mode.root_index' {run.mode.root_index} out of range: {len(roots)} root(s)")
        energy = roots[run.mode.root_index].value
        builder = {'ground': ground_state, 'flipped': flipped_state, 'excited': excited_state}[family]
        wf = builder(cfg, fp, energy, run.momentum())
    if run.mode.perturb_energy:
        mode = replace(wf.mode, E=wf.mode.E * (1.0 + run.mode.perturb_energy))
        wf = replace(wf, mode=mode)
    return wf, cfg, fp


def _events(args, seed):
    if args.events:
        df = read_events_csv(args.events)
        return Event(df['phi'].to_numpy(), df['r'].to_numpy(), df['z'].to_numpy(), df['t'].to_numpy())
    rng = np.random.default_rng(seed)
    n = args.random
    return Event(rng.uniform(-np.pi, np.pi, n), rng.uniform(0, 2, n), rng.uniform(-10, 10, n),
                 rng.uniform(-10, 10, n))


def cmd_transform(args, run):
    """Map events to the rotating frame with constancy-check columns."""
    fp = run.frame_params()
    events = _events(args, run.verify.seed)
    rot = to_rotating(events, fp)
    df = pd.DataFrame({
        'phi': events.phi, 'r': events.r, 'z': events.z, 't': events.t,
        'phi_rot': rot.phi, 'z_rot': rot.z, 't_rot': rot.t,
        'light_deviation': light_cone_deviation(fp, events),
    })
    if fp.tau_omega > 0:
        df['frequency_deviation'] = frequency_cone_deviation(fp, events)
    if args.inverse:
        back = to_resting(rot, fp)
        df['phi_back'], df['z_back'], df['t_back'] = back.phi, back.z, back.t
        scale = np.abs(df[['phi', 'z', 't']].to_numpy()).max(axis=1) + 1.0
        diff = np.abs(np.stack([back.phi - events.phi, back.z - events.z, back.t - events.t], axis=1)).max(axis=1)
        df['roundtrip_error'] = diff / scale
    emit_table(run, 'transform', df, {'frame': fp.signs, 'tau_omega': fp.tau_omega})
    return EXIT_OK


def cmd_roots(args, run):
    """List the characteristic roots with their residuals and distances to the pole."""
    cfg = run.field_config()
    level = 1 if run.mode.family == 'excited' else 0
    if run.mode.family == 'flipped':
        cfg = replace(cfg, d_branch=1)
    roots, groups = massive_roots(run, cfg, level)
    df = pd.DataFrame([dict(index=i, energy=r.value, residual=r.residual, pole_distance=r.pole_distance)
                       for i, r in enumerate(roots)], columns=['index', 'energy', 'residual', 'pole_distance'])
    emit_table(run, 'roots', df, {'groups': groups})
    return EXIT_OK


def _state_summary(wf):
    return dict(family=wf.family, E=wf.mode.E, p=wf.mode.p, E_rot=wf.mode.E_rot, p_rot=wf.mode.p_rot, n=wf.mode.n,
                d=wf.d, d1=wf.d1, d2=wf.d2, norm=wf.norm, groups=wf.groups)


def cmd_verify(args, run):
    """Write the residual report of the configured state; fail when the residual exceeds the tolerance."""
    wf_rot, cfg, fp = build_state(run)
    wf = to_resting_wavefunction(wf_rot, fp)
    v = run.verify
    report = residual_report(wf, cfg, count=v.batch_size, seed=v.seed, scheme=v.scheme, workers=v.workers)
    passed = report.max_rel_residual <= v.tolerance

    quad = normalization(wf, run.mode.z, run.mode.t)
    norm_quad = float(np.real(quad.estimate))
    body = {
        'config': run.to_dict(),
        'seed': v.seed,
        'state': _state_summary(wf),
        'residual': dict(report.to_dict(), tolerance=v.tolerance, passed=passed),
        'normalization': dict(quadrature=norm_quad, quadrature_error=quad.error, closed_form=model_norm2(wf),
                              nodes=quad.nodes, tolerance=NORM_TOL, passed=abs(norm_quad - 1.0) <= NORM_TOL),
    }
    if wf.mass > 0:
        coefficients = relative_coefficients(wf, cfg)
        body['rotating'] = dict(coefficients=coefficients, tolerance=COEFFICIENT_TOL,
                                passed=max(coefficients.values()) <= COEFFICIENT_TOL)
    write_text(dumps(report_document('verify', body)), run.output.path)
    if not passed:
        logger.error(f"Residual {report.max_rel_residual:.3e} exceeds the tolerance {v.tolerance:.1e}")
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_expect(args, run):
    """Quadrature and closed-form averages side by side."""
    wf_rot, cfg, fp = build_state(run)
    wf = to_resting_wavefunction(wf_rot, fp)
    df = expectation_table(wf, cfg, run.mode.z, run.mode.t)
    emit_table(run, 'expect', df, {'state': _state_summary(wf)})
    return EXIT_OK


def _scan_values(args):
    if args.axis == 'n':
        return np.arange(int(args.start), int(args.stop) + 1)
    if args.log:
        return np.geomspace(args.start, args.stop, args.num)
    return np.linspace(args.start, args.stop, args.num)


def expectation_columns(wf, z=0.0, t=0.0, suffix=''):
    """Closed-form and quadrature values of ``E_a``, ``p_za`` and ``s3`` for a resting-frame model.

    Without `wf` the columns hold ``NaN``.
    """
    closed = quad = None
    if wf is not None:
        closed = None if wf.is_affine else closed_form_expectations(wf, z, t)
        quad = quadrature_expectations(wf, z, t)
    row = {}
    for name in SCAN_EXPECTATIONS:
        row[f'{name}{suffix}'] = getattr(closed, name) if closed is not None else np.nan
        row[f'{name}_quad{suffix}'] = getattr(quad, name) if quad is not None else np.nan
    return row


def group_state(run, groups, energy):
    """Resting-frame ground state at a root for the groups ``h``, ``E0`` and ``Lambda``.

    The field is rescaled to give the groups to the configured particle; the momentum follows from ``Lambda``.
    """
    cfg = run.field_config().with_groups(groups['h'], groups['E0'])
    fp = run.frame_params()
    p = momentum_from_detuning(groups['Lambda'], cfg)
    return to_resting_wavefunction(ground_state(cfg, fp, energy, p), fp)


def scan_point(run, axis, value):
    """One row of a parameter scan; errors are reported in the ``error`` column.

    Rows of the frame axes carry the averages of the configured state, rows of the group axes those of the ground
    state at every root; ``NaN`` where no state can be built.
    """
    row = {'axis': axis, 'value': value, 'error': ''}
    z, t = run.mode.z, run.mode.t
    try:
        if axis in ('tau_omega', 'n'):
            fp = run.frame_params()
            if axis == 'tau_omega':
                fp = FrameParams.natural(float(value), **fp.signs)
                n = run.mode.n
            else:
                n = int(value)
            row.update(velocity=fp.velocity, velocity_ms=abs(fp.velocity) * C, b=fp.b_natural)
            row.update(expectation_columns(None))
            row.update(gap=quantization_gap(n, fp), resting_gap=resting_gap(n, fp))
            if axis == 'tau_omega':
                wf, _, fp = build_state(run, fp)
                row.update(expectation_columns(to_resting_wavefunction(wf, fp), z, t))
        else:
            cfg = run.field_config()
            groups = replace(run.groups, **{axis: float(value)})
            roots, used = massive_roots(run, cfg, groups=groups)
            _, a, b, c = cubic_coefficients(used['h'], used['E0'], used['Lambda'])
            row.update(used, discriminant=cubic_discriminant(a, b, c), root_count=len(roots))
            notes = []
            for i in range(3):
                row[f'root_{i}'] = roots[i].value if i < len(roots) else np.nan
                row[f'residual_{i}'] = roots[i].residual if i < len(roots) else np.nan
                columns = expectation_columns(None, suffix=f'_{i}')
                if i < len(roots):
                    try:
                        columns = expectation_columns(group_state(run, used, roots[i].value), z, t, f'_{i}')
                    except RotatingDiracError as err:
                        notes.append(f"root {i}: {err}")
                row.update(columns)
            if notes:
                logger.debug(f"No state at {axis}={value}: {'; '.join(notes)}")
    except (RotatingDiracError, ValueError) as err:
        row['error'] = f"{type(err).__name__}: {err}"
    return row


def cmd_scan(args, run):
    """Sweep one axis; rows keep the order of the sweep whatever the completion order."""
    values = _scan_values(args)
    with ThreadPoolExecutor(max_workers=max(1, run.verify.workers)) as pool:
        rows = list(pool.map(lambda v: scan_point(run, args.axis, v), values))
    emit_table(run, 'scan', pd.DataFrame(rows))
    return EXIT_OK


def cmd_audit(args, run):
    """Rank the sign conventions of a family by their residual."""
    require_zero_winding(run)
    family = 'massless' if run.mode.family.startswith('massless') else 'ground'
    cfg, fp = run.field_config(), run.frame_params()
    momentum = run.rotating_momentum() if family == 'massless' else run.momentum()
    df = convention_audit(family, cfg, fp, momentum, count=run.verify.batch_size, seed=run.verify.seed,
                          root_index=run.mode.root_index or 0, strict_prefactor=run.mode.strict_prefactor,
                          tol=run.verify.tolerance)
    emit_table(run, 'audit', df, {'family': family, 'passing': df.attrs['passing']})
    return EXIT_OK if df.attrs['passing'] > 0 else EXIT_RESIDUAL


COMMANDS = {
    'transform': cmd_transform,
    'roots': cmd_roots,
    'verify': cmd_verify,
    'expect': cmd_expect,
    'scan': cmd_scan,
    'audit': cmd_audit,
}


def parsing():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=None, help="TOML or JSON run configuration.")
    common.add_argument('--set', action='append', metavar='BLOCK.KEY=VALUE',
                        help="Override a configuration value, repeatable.")
    common.add_argument('--seed', type=int, default=None, help="Seed of the random event batches.")
    common.add_argument('--tolerance', type=float, default=None, help="Residual tolerance of 'verify' and 'audit'.")
    common.add_argument('--format', choices=['json', 'csv'], default=None, help="Output format.")
    common.add_argument('--out', default=None, help="Output file, standard output if omitted.")
    common.add_argument('--log-level', default=DEFAULT_LOG_LEVEL, help="Logging level.")
    common.add_argument('--log-dir', default=None, help="Also write the log to 'rotating_dirac.log' in this directory.")

    parser = argparse.ArgumentParser(prog='rotating-dirac',
                                     description="Exact Dirac states in a rotating field and their verification.")
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    transform = sub.add_parser('transform', parents=[common], help="Transform events to the rotating frame.")
    src = transform.add_mutually_exclusive_group()
    src.add_argument('--events', default=None, help="CSV file with the columns phi, r, z, t.")
    src.add_argument('--random', type=int, default=10, help="Number of seeded random events.")
    transform.add_argument('--inverse', action='store_true', help="Add the inverse transformation columns.")

    sub.add_parser('roots', parents=[common], help="Roots of the characteristic equation.")
    sub.add_parser('verify', parents=[common], help="Residual report of the configured state.")
    sub.add_parser('expect', parents=[common], help="Averages of energy, momentum and spin.")

    scan = sub.add_parser('scan', parents=[common], help="Sweep one parameter.")
    scan.add_argument('--axis', choices=SCAN_AXES, required=True)
    scan.add_argument('--start', type=float, required=True)
    scan.add_argument('--stop', type=float, required=True)
    scan.add_argument('--num', type=int, default=11)
    scan.add_argument('--log', action='store_true', help="Geometric spacing.")

    sub.add_parser('audit', parents=[common], help="Rank sign conventions by residual.")
    return parser


def main(argv=None):
    parser = parsing()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    if args.log_dir:
        _, fname = get_file_logger('rotating_dirac', args.log_dir, args.log_level)
        logger.info(f"Logging to '{fname}'")
    try:
        run = run_config(args)
        return COMMANDS[args.command](args, run)
    except PoleProximityError as err:
        logger.error(f"{err}; roots: {err.roots}")
        return EXIT_POLE
    except QuadratureError as err:
        logger.error(f"{err}; estimate {err.estimate}, error {err.error}")
        return EXIT_QUADRATURE
    except (RotatingDiracError, ValueError) as err:
        logger.error(str(err))
        return EXIT_CONFIG


if __name__ == '__main__':
    raise SystemExit(main())
