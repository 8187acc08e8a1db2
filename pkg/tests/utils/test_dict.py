# coding: utf-8
"""Test nested dict helpers."""
from tamedynfw.utils.dict import compare, dict_merge, from_fw_spec


def test_dict_merge_is_recursive_and_copies():
    dct = {'a': 1, 'b': {'c': 2, 'd': [1, 2]}}
    merged = dict_merge(dct, {'b': {'c': 3}, 'e': 4})
    assert merged == {'a': 1, 'b': {'c': 3, 'd': [1, 2]}, 'e': 4}
    assert dct == {'a': 1, 'b': {'c': 2, 'd': [1, 2]}}
    merged['b']['d'].append(3)
    assert dct['b']['d'] == [1, 2]


def test_dict_merge_without_new_keys():
    merged = dict_merge({'a': {'b': 1}}, {'a': {'b': 2, 'c': 3}, 'd': 4}, add_keys=False)
    assert merged == {'a': {'b': 2}}


def test_dict_merge_exclusions():
    merged = dict_merge({'a': 1, 'b': {'c': 2, 'd': 3}}, {'a': 5, 'b': {'c': 6, 'd': 7}},
                        exclusions={'a': True, 'b': {'d': True}})
    assert merged == {'a': 1, 'b': {'c': 6, 'd': 3}}


def test_dict_merge_replaces_non_mappings():
    assert dict_merge({'a': {'b': 1}}, {'a': [1]}) == {'a': [1]}


def test_compare_everything():
    assert compare({'a': 1, 'b': [1, {'c': 2}]}, {'a': 1, 'b': [1, {'c': 2}], 'x': 0})
    assert not compare({'a': 1, 'b': [1, {'c': 2}]}, {'a': 1, 'b': [1, {'c': 3}]})
    assert not compare({'a': 1}, {'b': 1})
    assert not compare({'a': [1, 2]}, {'a': [1]})


def test_compare_partially():
    source = {'a': 1, 'b': {'c': 2, 'd': 3}}
    target = {'a': 1, 'b': {'c': 2, 'd': 4}}
    assert compare(source, target, {'a': True, 'b': {'c': True}})
    assert compare(source, target, {'a': True, 'b': {'c': True, 'd': False}})
    assert not compare(source, target)


def test_from_fw_spec():
    fw_spec = {'deeply': {'nested': {'rank': 'w+1'}}}
    assert from_fw_spec({'key': 'deeply->nested->rank'}, fw_spec) == 'w+1'
    assert from_fw_spec('w+2', fw_spec) == 'w+2'
    assert from_fw_spec({'value': 1}, fw_spec) == {'value': 1}
    assert from_fw_spec(None, fw_spec) is None
