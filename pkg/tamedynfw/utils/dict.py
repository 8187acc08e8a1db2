# coding: utf-8
#
# dict.py
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
"""Utility functions for nested dicts and lists."""

import collections.abc
import copy
import logging

from fireworks.utilities.dict_mods import get_nested_dict_value

from tamedynfw.utils.logging import _log_nested_dict

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'


def dict_merge(dct, merge_dct, add_keys=True, exclusions=None):
    """Recursive merge of ``merge_dct`` into a copy of ``dct``.

    Nested mappings are merged key by key, everything else is replaced.
    Keys only in ``merge_dct`` are dropped unless ``add_keys`` is set, keys
    marked True in the nested ``exclusions`` dict are never merged.

    Args:
        dct (dict): onto which the merge is executed
        merge_dct (dict): merged into dct
        add_keys (bool): whether to add new keys
        exclusions (dict): nested dict of keys left untouched

    Returns:
        dict: merged copy
    """
    logger = logging.getLogger(__name__)
    exclusions = exclusions or {}
    result = copy.deepcopy(dict(dct))
    logger.debug("Merge...")
    _log_nested_dict(logger.debug, merge_dct)
    for k, v in merge_dct.items():
        if exclusions.get(k) is True:
            logger.debug("Key '{}' excluded from merge.".format(k))
            continue
        if k not in result and not add_keys:
            logger.debug("Key '{}' only in merge_dct, dropped.".format(k))
            continue
        if k in result and isinstance(result[k], dict) and isinstance(v, collections.abc.Mapping):
            nested = exclusions.get(k) if isinstance(exclusions.get(k), dict) else None
            result[k] = dict_merge(result[k], v, add_keys=add_keys, exclusions=nested)
        else:
            result[k] = copy.deepcopy(v)
    return result


def _make_marker(d):
    """Mark everything for comparison."""
    if isinstance(d, list):
        return [_make_marker(e) for e in d]
    if isinstance(d, dict):
        return {k: _make_marker(v) for k, v in d.items()}
    return True


def _compare(source, target, marker):
    logger = logging.getLogger(__name__)
    if isinstance(marker, dict):
        if not isinstance(source, dict) or not isinstance(target, dict):
            return False
        for k, v in marker.items():
            if k not in source or k not in target:
                logger.error("Key '{}' missing in source or target.".format(k))
                return False
            if not _compare(source[k], target[k], v):
                return False
        return True
    if isinstance(marker, list):
        if not isinstance(source, list) or not isinstance(target, list) or len(source) != len(target):
            return False
        return all(_compare(s, t, m) for s, t, m in zip(source, target, marker))
    if marker is False:
        return True
    logger.debug("Comparing '{}' == '{}' -> {}.".format(source, target, source == target))
    return source == target


def compare(source, target, marker=None):
    """Compare source and target partially, as marked by marker. If marker is None, then compare everything."""
    if not marker:
        marker = _make_marker(source)
    return _compare(source, target, marker)


def from_fw_spec(param, fw_spec):
    """Value at ``param['key']`` ('a->b' notation) within fw_spec if param is such a dict, else param."""
    if isinstance(param, dict) and 'key' in param:
        return get_nested_dict_value(fw_spec, param['key'])
    return param
