# coding: utf-8
#
# dot.py
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
"""Graphviz DOT rendering of tree stages."""

import logging

import jinja2

from tamedynfw.core.dendrite import Color, TreeStage
from tamedynfw.utils.serialize import format_fraction

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

DOT_TEMPLATE = """\
graph "{{ name }}" {
  label="{{ stage.mode }} stage {{ stage.index }}";
  node [shape=circle, width=0.15, fixedsize=true, fontsize=8];
{% for v in vertices %}
  v{{ v.id }} [label="{{ v.id }}", color="{{ v.color }}", role="{{ v.role }}"];
{% endfor %}
{% for e in edges %}
  v{{ e.u }} -- v{{ e.v }} [label="{{ e.length }}"];
{% endfor %}
}
"""

COLORS = {
    Color.RED: 'red',
    Color.GREEN: 'green',
    Color.NONE: 'black',
}

_environment = jinja2.Environment(
    undefined=jinja2.StrictUndefined, trim_blocks=True, keep_trailing_newline=True, autoescape=False)


def to_dot(stage: TreeStage, name: str = None) -> str:
    """DOT graph of a stage, vertices and edges in ascending order."""
    vertices = [{'id': v, 'color': COLORS[stage.color(v)], 'role': str(stage.role(v))}
                for v in sorted(stage.vertices)]
    edges = [{'u': u, 'v': v, 'length': format_fraction(length)}
             for (u, v), length in sorted(stage.edges.items())]
    if name is None:
        name = '{}-{}'.format(stage.mode, stage.index)
    return _environment.from_string(DOT_TEMPLATE).render(name=name, stage=stage, vertices=vertices, edges=edges)


def write_dot(stage: TreeStage, path, name: str = None):
    logger = logging.getLogger(__name__)
    with open(path, 'w') as stream:
        stream.write(to_dot(stage, name))
    logger.info("Wrote DOT graph of {} stage {} to '{}'.".format(stage.mode, stage.index, path))
