# coding: utf-8
"""Test configuration loading."""
from fractions import Fraction

import pytest

from tamedynfw.utils.config import (
    DEFAULTS, ConfigurationError, eps_grid, load_config, parse_fraction)


def test_defaults():
    config = load_config()
    assert config == DEFAULTS
    assert config is not DEFAULTS
    assert eps_grid(config) == [Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1)]


def test_file_overrides_defaults(files):
    config = load_config(files['config'])
    assert config['seed'] == 3
    assert config['trials'] == 4
    assert config['jobs'] == DEFAULTS['jobs']
    assert config['dendrite'] == {'orders': [3, 4], 'depth': 1, 'width': 1, 'omega_degree': None}
    assert config['twocolor'] == {'depth': 1, 'marks_per_arc': 1, 'blocks': 2}
    assert eps_grid(config) == [Fraction(1, 4), Fraction(1, 2)]


def test_overrides_win_and_none_is_ignored(files):
    config = load_config(files['config'], {'seed': 11, 'trials': None})
    assert config['seed'] == 11
    assert config['trials'] == 4


def test_defaults_stay_untouched():
    load_config(overrides={'dendrite': {'depth': 5}})
    assert DEFAULTS['dendrite']['depth'] == 2


def test_unknown_key(files):
    with pytest.raises(ConfigurationError, match="trails"):
        load_config(files['bad_config'])
    with pytest.raises(ConfigurationError, match="dendrite.height"):
        load_config(overrides={'dendrite': {'height': 1}})


def test_missing_file(tempdir):
    with pytest.raises(ConfigurationError):
        load_config('no_such_file.yml')


def test_not_a_mapping(tempdir):
    with open('list.yml', 'w') as stream:
        stream.write('- 1\n- 2\n')
    with pytest.raises(ConfigurationError, match="not a mapping"):
        load_config('list.yml')


def test_empty_file(tempdir):
    with open('empty.yml', 'w') as stream:
        stream.write('')
    assert load_config('empty.yml') == DEFAULTS


@pytest.mark.parametrize("overrides", [
    {'seed': -1},
    {'trials': 0},
    {'jobs': True},
    {'dendrite': {'width': 0}},
    {'twocolor': {'marks_per_arc': '2'}},
    {'eps_grid': []},
    {'eps_grid': ['1/2', '0']},
    {'eps_grid': [0.5]},
    {'loglevel': 'chatty'},
])
def test_invalid_values(overrides):
    with pytest.raises(ConfigurationError):
        load_config(overrides=overrides)


@pytest.mark.parametrize("text, expected", [
    ('1/2', Fraction(1, 2)),
    (' 3/4 ', Fraction(3, 4)),
    (2, Fraction(2)),
    (Fraction(1, 3), Fraction(1, 3)),
])
def test_parse_fraction(text, expected):
    assert parse_fraction(text) == expected


@pytest.mark.parametrize("text", ['1/0', 'half', 0.25])
def test_parse_fraction_rejects(text):
    with pytest.raises(ConfigurationError):
        parse_fraction(text)
