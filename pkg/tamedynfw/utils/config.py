# coding: utf-8
#
# config.py
#
# Copyright (C) 2026 IMTEK Simulation
# Author: tamedynfw developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""Run configuration: defaults, YAML files and command-line overrides.

A configuration file is a YAML mapping with any of the top-level keys of
:data:`DEFAULTS`, e.g.::

    seed: 7
    trials: 200
    eps_grid: [1/8, 1/4, 1/2]
    dendrite:
      orders: [3, 4]
      depth: 3
"""

import logging

from fractions import Fraction
from typing import List

from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from tamedynfw.utils.dict import dict_merge
from tamedynfw.utils.logging import _log_nested_dict, as_level

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

DEFAULTS = {
    'seed': 0,
    'trials': 100,
    'jobs': 1,
    'eps_grid': ['1/8', '1/4', '1/2', '1'],
    'loglevel': 'WARNING',
    'dendrite': {
        'orders': ['3'],
        'depth': 2,
        'width': 1,
        'omega_degree': None,
    },
    'twocolor': {
        'depth': 2,
        'marks_per_arc': 2,
        'blocks': 2,
    },
}


class ConfigurationError(ValueError):
    """Raised on unreadable or invalid configuration."""
    pass


def parse_fraction(text) -> Fraction:
    """Exact rational from 'p/q', an integer or a Fraction; floats are refused."""
    if isinstance(text, float):
        raise ConfigurationError("Floating point value {} is not exact, use p/q.".format(text))
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError("Not a rational number: '{}'.".format(text)) from exc


def read_yaml(path) -> dict:
    try:
        with open(path, 'r') as stream:
            content = YAML(typ='safe').load(stream)
    except (OSError, YAMLError) as exc:
        raise ConfigurationError("Cannot read configuration '{}': {}".format(path, exc)) from exc
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ConfigurationError("Configuration '{}' is not a mapping.".format(path))
    return content


def _check_keys(dct, reference, prefix=''):
    for key, value in dct.items():
        if key not in reference:
            raise ConfigurationError("Unknown configuration key '{}{}'.".format(prefix, key))
        if isinstance(reference[key], dict):
            if not isinstance(value, dict):
                raise ConfigurationError("Configuration key '{}{}' expects a mapping.".format(prefix, key))
            _check_keys(value, reference[key], '{}{}.'.format(prefix, key))


def _natural(config, *keys, minimum=0):
    dct = config
    for key in keys[:-1]:
        dct = dct[key]
    value = dct[keys[-1]]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigurationError("'{}' must be an integer >= {}, got {!r}.".format('.'.join(keys), minimum, value))


def validate(config: dict) -> dict:
    _check_keys(config, DEFAULTS)
    _natural(config, 'seed')
    _natural(config, 'trials', minimum=1)
    _natural(config, 'jobs', minimum=1)
    _natural(config, 'dendrite', 'depth')
    _natural(config, 'dendrite', 'width', minimum=1)
    _natural(config, 'twocolor', 'depth')
    _natural(config, 'twocolor', 'marks_per_arc', minimum=1)
    _natural(config, 'twocolor', 'blocks', minimum=1)
    if not config['eps_grid'] or any(parse_fraction(eps) <= 0 for eps in config['eps_grid']):
        raise ConfigurationError("eps_grid must be a nonempty list of positive rationals.")
    try:
        as_level(config['loglevel'])
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    return config


def load_config(path=None, overrides: dict = None) -> dict:
    """Defaults, updated by a YAML file, updated by explicit overrides (None values ignored)."""
    logger = logging.getLogger(__name__)
    config = dict_merge(DEFAULTS, {})
    if path is not None:
        content = read_yaml(path)
        _check_keys(content, DEFAULTS)
        config = dict_merge(config, content)
    if overrides:
        config = dict_merge(config, {k: v for k, v in overrides.items() if v is not None})
    validate(config)
    logger.debug("Effective configuration:")
    _log_nested_dict(logger.debug, config)
    return config


def eps_grid(config: dict) -> List[Fraction]:
    return sorted(parse_fraction(eps) for eps in config['eps_grid'])
