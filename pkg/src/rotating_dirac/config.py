#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Run configuration: a TOML or JSON document merged onto the packaged defaults.

The ``ROTATING_DIRAC_CONFIG_DIR`` environment variable names a directory searched for relative configuration paths
and for a replacement ``default_run.toml``.
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import fields
from logging import getLogger
from pathlib import Path
from typing import Optional

import toml

from rotating_dirac import FAMILIES
from rotating_dirac import SCHEMES
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.field import FieldConfig
from rotating_dirac.frame import FrameParams
from rotating_dirac.units import UnitSystem

logger = getLogger(__name__)

CONFIG_DIR_ENV = "ROTATING_DIRAC_CONFIG_DIR"
DEFAULT_CONFIG_NAME = "default_run.toml"
ASSETS_DIR = Path(__file__).parent / "assets"
UNITS = ["natural", "si"]
FORMATS = ["json", "csv"]


@dataclass(frozen=True)
class FieldBlock:
    units: str = "natural"
    omega: float = 1.0
    H: float = 0.5
    H3: float = -2.0
    charge: float = 1.0
    mass: float = 0.0
    polarization: int = 1
    propagation: int = 1
    d_branch: int = -1


@dataclass(frozen=True)
class FrameBlock:
    tau: float = 0.0
    omega_sign: int = 1
    light_sign: int = 1


@dataclass(frozen=True)
class ModeBlock:
    family: str = "massless"
    n: int = 0
    E_rot: Optional[float] = None
    p_rot: Optional[float] = None
    p: Optional[float] = None
    root_index: Optional[int] = None
    strict_prefactor: bool = False
    perturb_energy: float = 0.0
    z: float = 0.0
    t: float = 0.0


@dataclass(frozen=True)
class GroupsBlock:
    """Direct values of the dimensionless groups of the characteristic equation, overriding the field."""
    h: Optional[float] = None
    E0: Optional[float] = None
    Lambda: Optional[float] = None


@dataclass(frozen=True)
class VerifyBlock:
    scheme: str = "analytic"
    tolerance: float = 1e-8
    batch_size: int = 1000
    seed: int = 0
    workers: int = 4


@dataclass(frozen=True)
class OutputBlock:
    format: str = "json"
    path: str = ""


BLOCKS = {
    'field': FieldBlock,
    'frame': FrameBlock,
    'mode': ModeBlock,
    'groups': GroupsBlock,
    'verify': VerifyBlock,
    'output': OutputBlock,
}


@dataclass(frozen=True)
class RunConfig:
    field: FieldBlock = FieldBlock()
    frame: FrameBlock = FrameBlock()
    mode: ModeBlock = ModeBlock()
    groups: GroupsBlock = GroupsBlock()
    verify: VerifyBlock = VerifyBlock()
    output: OutputBlock = OutputBlock()

    def __post_init__(self):
        _check_choice(self.field.units, UNITS, 'field.units')
        _check_choice(self.mode.family, FAMILIES, 'mode.family')
        _check_choice(self.verify.scheme, SCHEMES, 'verify.scheme')
        _check_choice(self.output.format, FORMATS, 'output.format')
        if self.verify.batch_size < 1:
            raise ConfigurationError(f"'verify.batch_size' must be at least 1, got {self.verify.batch_size}")
        if not self.verify.tolerance > 0:
            raise ConfigurationError(f"'verify.tolerance' must be positive, got {self.verify.tolerance}")
        if self.mode.family == 'massless':
            if self.mode.E_rot is not None and self.mode.p_rot is not None:
                raise ConfigurationError("give exactly one of 'mode.E_rot' and 'mode.p_rot'")
            if self.mode.E_rot is None and self.mode.p_rot is None:
                raise ConfigurationError("the massless family needs one of 'mode.E_rot' and 'mode.p_rot'")

    @property
    def units(self):
        """`UnitSystem` of the field frequency; only used with ``field.units = 'si'``."""
        return UnitSystem(self.field.omega)

    def _energy(self, value):
        if value is None or self.field.units == 'natural':
            return value
        return self.units.energy(value)

    def field_config(self):
        """`FieldConfig` in natural units."""
        f = self.field
        if f.units == 'si':
            units = self.units
            return FieldConfig(H=units.field(f.H), H3=units.field(f.H3), charge=f.charge, mass=units.mass(f.mass),
                               polarization=f.polarization, propagation=f.propagation, d_branch=f.d_branch)
        return FieldConfig(H=f.H, H3=f.H3, charge=f.charge, mass=f.mass, polarization=f.polarization,
                           propagation=f.propagation, d_branch=f.d_branch)

    def frame_params(self):
        """`FrameParams` in natural units."""
        tau_omega = self.frame.tau * self.field.omega if self.field.units == 'si' else self.frame.tau
        return FrameParams.natural(tau_omega, polarization=self.field.polarization,
                                   propagation=self.field.propagation, omega_sign=self.frame.omega_sign,
                                   light_sign=self.frame.light_sign)

    def rotating_momentum(self):
        """Rotating-frame momentum of a massless mode; a given energy fixes it through the winding condition."""
        m = self.mode
        if m.p_rot is not None:
            return self._energy(m.p_rot)
        return self.frame.light_sign * self._energy(m.E_rot)

    def momentum(self):
        """Momentum parameter of a massive mode."""
        if self.mode.p is None:
            raise ConfigurationError("massive families need 'mode.p'")
        return self._energy(self.mode.p)

    def to_dict(self):
        return asdict(self)


def _check_choice(value, choices, name):
    if value not in choices:
        raise ConfigurationError(f"'{name}' must be one of {choices}, got {value!r}")


def deep_merge(base, update):
    """Recursively merge the `update` dictionary into a copy of `base`."""
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_config_file(path):
    """Read a TOML or JSON configuration document, by file suffix.

    Raises
    ------
    rotating_dirac.errors.ConfigurationError
        If the file is missing or cannot be parsed.
    """
    path = Path(path)
    try:
        if path.suffix == '.json':
            return json.loads(path.read_text(encoding='utf-8'))
        return toml.load(path)
    except FileNotFoundError as err:
        raise ConfigurationError(f"configuration file not found: {path}") from err
    except (toml.TomlDecodeError, json.JSONDecodeError) as err:
        raise ConfigurationError(f"malformed configuration file {path}: {err}") from err


def resolve_config_path(path):
    """Resolve a relative path against ``ROTATING_DIRAC_CONFIG_DIR`` when it does not exist as given."""
    path = Path(path)
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if not path.is_absolute() and not path.exists() and env_dir:
        candidate = Path(env_dir) / path
        if candidate.exists():
            return candidate
    return path


def default_config_path():
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if env_dir and (Path(env_dir) / DEFAULT_CONFIG_NAME).exists():
        return Path(env_dir) / DEFAULT_CONFIG_NAME
    return ASSETS_DIR / DEFAULT_CONFIG_NAME


def from_dict(data):
    """Build a `RunConfig` from nested dictionaries, rejecting unknown blocks and keys."""
    blocks = {}
    for name, values in data.items():
        if name not in BLOCKS:
            raise ConfigurationError(f"unknown configuration block '{name}'")
        known = {f.name for f in fields(BLOCKS[name])}
        unknown = set(values) - known
        if unknown:
            raise ConfigurationError(f"unknown key(s) {sorted(unknown)} in block '{name}'")
        try:
            blocks[name] = BLOCKS[name](**values)
        except TypeError as err:
            raise ConfigurationError(f"invalid block '{name}': {err}") from err
    return RunConfig(**blocks)


def load_run_config(path=None, overrides=None):
    """Load the packaged defaults, merge a configuration file, then apply overrides.

    A rotating-frame energy or momentum given by the file or the overrides replaces the other one of the defaults.

    Parameters
    ----------
    path : str or pathlib.Path, optional
        TOML or JSON configuration file.
    overrides : dict, optional
        Values keyed by ``'block.key'``, e.g. ``{'verify.seed': 3}``; ``None`` values are ignored.

    Returns
    -------
    RunConfig

    Examples
    --------
    >>> from rotating_dirac.config import load_run_config
    >>> cfg = load_run_config(overrides={'verify.seed': 3})
    >>> cfg.verify.seed, cfg.mode.family
    (3, 'massless')
    """
    defaults = read_config_file(default_config_path())
    user = {}
    if path is not None:
        resolved = resolve_config_path(path)
        logger.info(f"Loading run configuration from '{resolved}'")
        user = read_config_file(resolved)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        block, _, name = key.partition('.')
        user = deep_merge(user, {block: {name: value}})
    user_mode = user.get('mode', {})
    for given, other in (('E_rot', 'p_rot'), ('p_rot', 'E_rot')):
        if given in user_mode and other not in user_mode:
            defaults.get('mode', {}).pop(other, None)
    return from_dict(deep_merge(defaults, user))
