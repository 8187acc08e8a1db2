# coding: utf-8
"""Test DOT export of stages."""
import re

from tamedynfw.core.dendrite import Color, build_twocolor_stage, build_wazewski_stage
from tamedynfw.utils.dot import COLORS, to_dot, write_dot


def test_twocolor_base_stage():
    stage = build_twocolor_stage(0, 1)
    dot = to_dot(stage)
    lines = dot.splitlines()
    assert lines[0] == 'graph "twocolor-0" {'
    assert lines[-1] == '}'
    edges = [line for line in lines if ' -- ' in line]
    assert len(edges) == len(stage.edges)
    assert sum(1 for line in edges if line.strip().startswith('v0 -- ')) == 4
    for line in edges:
        assert re.search(r'label="\d+/\d+"', line)
    for v in stage.vertices:
        expected = 'v{} [label="{}", color="{}"'.format(v, v, COLORS[stage.color(v)])
        assert any(line.strip().startswith(expected) for line in lines)


def test_colors():
    stage = build_twocolor_stage(1, 1)
    dot = to_dot(stage)
    assert 'color="red"' in dot
    assert 'color="green"' in dot
    assert COLORS[Color.NONE] == 'black'


def test_stable_ordering():
    stage = build_wazewski_stage([3, 4], 1, 2)
    first = to_dot(stage, name='w34')
    assert first == to_dot(stage, name='w34')
    ids = [int(m) for m in re.findall(r'^  v(\d+) \[', first, flags=re.MULTILINE)]
    assert ids == sorted(stage.vertices)


def test_write_dot(tempdir):
    stage = build_twocolor_stage(1, 1)
    write_dot(stage, 'stage.dot')
    write_dot(stage, 'again.dot')
    with open('stage.dot') as first, open('again.dot') as second:
        assert first.read() == second.read() == to_dot(stage)
