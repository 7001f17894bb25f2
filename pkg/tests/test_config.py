#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import pytest
import toml

from rotating_dirac.config import CONFIG_DIR_ENV
from rotating_dirac.config import RunConfig
from rotating_dirac.config import deep_merge
from rotating_dirac.config import from_dict
from rotating_dirac.config import load_run_config
from rotating_dirac.errors import ConfigurationError
from rotating_dirac.units import UnitSystem


def test_packaged_defaults():
    run = load_run_config()
    assert run.mode.family == 'massless'
    assert run.rotating_momentum() == 3.0
    assert run.field_config().mass == 0.0
    assert run.frame_params().tau_omega == 0.0


def test_toml_file_is_merged(tmp_path):
    path = tmp_path / 'run.toml'
    path.write_text(toml.dumps({'field': {'H': 0.25}, 'verify': {'seed': 9}}))
    run = load_run_config(path)
    assert run.field.H == 0.25
    assert run.field.H3 == -2.0
    assert run.verify.seed == 9


def test_json_file_and_overrides(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'mode': {'family': 'ground', 'p': 0.4, 'root_index': 1}, 'field': {'mass': 1.5}}))
    run = load_run_config(path, {'verify.tolerance': 1e-6, 'output.format': None})
    assert run.mode.family == 'ground'
    assert run.momentum() == 0.4
    assert run.verify.tolerance == 1e-6
    assert run.output.format == 'json'


def test_rotating_energy_replaces_default_momentum():
    run = load_run_config(overrides={'mode.E_rot': 2.0, 'frame.light_sign': -1, 'field.polarization': -1})
    assert run.mode.p_rot is None
    assert run.rotating_momentum() == -2.0


def test_both_rotating_values_are_rejected():
    with pytest.raises(ConfigurationError, match='exactly one'):
        load_run_config(overrides={'mode.E_rot': 2.0, 'mode.p_rot': 2.0})


def test_config_directory_from_environment(tmp_path, monkeypatch):
    config_dir = tmp_path / 'configs'
    config_dir.mkdir()
    (config_dir / 'fast.toml').write_text(toml.dumps({'verify': {'batch_size': 10}}))
    monkeypatch.setenv(CONFIG_DIR_ENV, str(config_dir))
    monkeypatch.chdir(tmp_path)
    assert load_run_config('fast.toml').verify.batch_size == 10


@pytest.mark.parametrize('data, message', [
    ({'plot': {}}, 'unknown configuration block'),
    ({'field': {'colour': 1}}, 'unknown key'),
    ({'mode': {'family': 'tachyon', 'p_rot': 1.0}}, 'mode.family'),
    ({'verify': {'scheme': 'spline'}, 'mode': {'p_rot': 1.0}}, 'verify.scheme'),
    ({'verify': {'batch_size': 0}, 'mode': {'p_rot': 1.0}}, 'batch_size'),
    ({'mode': {'family': 'massless'}}, 'one of'),
])
def test_invalid_documents(data, message):
    with pytest.raises(ConfigurationError, match=message):
        from_dict(data)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ConfigurationError):
        load_run_config(tmp_path / 'missing.toml')
    bad = tmp_path / 'bad.toml'
    bad.write_text('[field\nH = ')
    with pytest.raises(ConfigurationError):
        load_run_config(bad)


def test_massive_families_need_momentum():
    run = from_dict({'mode': {'family': 'ground'}, 'field': {'mass': 1.0}})
    with pytest.raises(ConfigurationError):
        run.momentum()


def test_si_units_are_converted():
    omega = 1e11
    run = from_dict({'field': {'units': 'si', 'omega': omega, 'H': 0.0, 'H3': -1e-3, 'mass': 0.0},
                     'frame': {'tau': 1e-17}, 'mode': {'E_rot': 1e-3}})
    units = UnitSystem(omega)
    assert run.field_config().H3 == pytest.approx(units.field(-1e-3))
    assert run.frame_params().tau_omega == pytest.approx(1e-6)
    assert run.rotating_momentum() == pytest.approx(units.energy(1e-3))


def test_deep_merge_does_not_mutate():
    base = {'a': {'b': 1, 'c': 2}}
    merged = deep_merge(base, {'a': {'b': 3}})
    assert merged == {'a': {'b': 3, 'c': 2}}
    assert base == {'a': {'b': 1, 'c': 2}}


def test_to_dict_round_trip():
    run = load_run_config()
    assert from_dict(run.to_dict()) == run
    assert isinstance(run, RunConfig)
