# coding: utf-8
#
# serialize.py
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
"""Versioned structured text for spaces, stages, homeomorphisms and reports.

Every file starts with the header line ``# tamedynfw 1`` followed by a
``kind`` line and ends with ``end``. Records are one per line, a keyword
followed by positional fields and ``key=value`` pairs. Rationals are always
written as ``p/q``, ordinals as literals.

A homeomorphism is written as its source stage, its target stage with
every record prefixed by ``target-`` when the two differ, one ``pair``
record per vertex and one ``bend`` record per edge not mapped linearly.
"""

import logging

from fractions import Fraction
from typing import Dict, List, Tuple, Union

from tamedynfw.core.cbspace import CBSpace
from tamedynfw.core.dendrite import Color, TreeStage, Vertex
from tamedynfw.core.dynamics import TreeHomeo
from tamedynfw.core.ordinal import OrdinalSyntaxError, format_ordinal, parse_ordinal
from tamedynfw.report import Check, Report, Status

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

FORMAT_VERSION = 1
HEADER = '# tamedynfw {}'.format(FORMAT_VERSION)
END = 'end'
TARGET_PREFIX = 'target-'

STRING_LIST_PARAMS = ('orders',)

Artifact = Union[CBSpace, TreeStage, TreeHomeo, Report]


class SerializationError(ValueError):
    """Raised on malformed structured text, carries the offending line number."""

    def __init__(self, message, line=0):
        super().__init__("line {}: {}".format(line, message))
        self.message = message
        self.line = line

    def __reduce__(self):
        return (SerializationError, (self.message, self.line))


def format_fraction(q) -> str:
    q = Fraction(q)
    return '{}/{}'.format(q.numerator, q.denominator)


def _fraction(text: str, line: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError("Not a rational: '{}'.".format(text), line) from exc


def _integer(text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise SerializationError("Not an integer: '{}'.".format(text), line) from exc


class _Record:
    def __init__(self, line: int, text: str):
        self.line = line
        self.text = text
        tokens = text.split()
        self.keyword = tokens[0]
        self.args = [t for t in tokens[1:] if '=' not in t]
        self.kv = dict(t.split('=', 1) for t in tokens[1:] if '=' in t)

    def get(self, key: str) -> str:
        if key not in self.kv:
            raise SerializationError("Record '{}' lacks '{}='.".format(self.keyword, key), self.line)
        return self.kv[key]


# writers

def _space_lines(space: CBSpace) -> List[str]:
    l, r = space.interval
    return ['space seed={} interval={},{}'.format(format_ordinal(space.seed), format_fraction(l), format_fraction(r))]


def _param_value(value) -> str:
    if isinstance(value, (list, tuple)):
        return ','.join(str(v) for v in value)
    return str(value)


def _stage_lines(stage: TreeStage) -> List[str]:
    lines = ['stage mode={} index={} vertices={} edges={}'.format(
        stage.mode, stage.index, len(stage.vertices), len(stage.edges))]
    for key in sorted(stage.params or {}):
        value = stage.params[key]
        if value is not None:
            kind = 'list' if isinstance(value, (list, tuple)) else 'int'
            lines.append('param {} {}={}'.format(kind, key, _param_value(value)))
    for v in sorted(stage.vertices):
        vertex = stage.vertices[v]
        lines.append('vertex {} color={} role={} born={} origin={}'.format(
            v, vertex.color, stage.role(v), vertex.born, '-' if vertex.origin is None else vertex.origin))
    for (u, w), length in sorted(stage.edges.items()):
        lines.append('edge {} {} len={}'.format(u, w, format_fraction(length)))
    for v, w in sorted((stage.bonding or {}).items()):
        lines.append('bond {} -> {}'.format(v, w))
    return lines


def _homeo_lines(h: TreeHomeo) -> List[str]:
    lines = _stage_lines(h.source)
    if h.target is not h.source and h.target != h.source:
        lines.extend(TARGET_PREFIX + line for line in _stage_lines(h.target))
    bent = h.breaks
    lines.append('homeo pairs={} bent={}'.format(len(h.vertex_map), len(bent)))
    for v, w in sorted(h.vertex_map.items()):
        lines.append('pair {} -> {}'.format(v, w))
    for (u, v), breaks in sorted(bent.items()):
        lines.append('bend {} {} breaks={}'.format(u, v, ','.join(
            '{}:{}'.format(format_fraction(s), format_fraction(t)) for s, t in breaks)))
    return lines


def dumps(artifact: Artifact) -> str:
    """Structured text of a space, stage, homeomorphism or report."""
    if isinstance(artifact, CBSpace):
        kind, body = 'space', _space_lines(artifact)
    elif isinstance(artifact, TreeStage):
        kind, body = 'stage', _stage_lines(artifact)
    elif isinstance(artifact, TreeHomeo):
        kind, body = 'homeo', _homeo_lines(artifact)
    elif isinstance(artifact, Report):
        kind, body = 'report', artifact.render().splitlines()
    else:
        raise ValueError("Cannot serialize objects of type {}.".format(type(artifact).__name__))
    return '\n'.join([HEADER, 'kind {}'.format(kind)] + body + [END]) + '\n'


def dump(artifact: Artifact, path):
    logger = logging.getLogger(__name__)
    with open(path, 'w') as stream:
        stream.write(dumps(artifact))
    logger.debug("Wrote {} to '{}'.".format(type(artifact).__name__, path))


# readers

def _read_space(records: List[_Record]) -> CBSpace:
    if len(records) != 1 or records[0].keyword != 'space':
        raise SerializationError("Expected exactly one 'space' record.", records[0].line if records else 3)
    record = records[0]
    try:
        seed = parse_ordinal(record.get('seed'))
    except OrdinalSyntaxError as exc:
        raise SerializationError(str(exc), record.line) from exc
    bounds = record.get('interval').split(',')
    if len(bounds) != 2:
        raise SerializationError("Interval needs two bounds.", record.line)
    try:
        return CBSpace(seed, (_fraction(bounds[0], record.line), _fraction(bounds[1], record.line)))
    except SerializationError:
        raise
    except ValueError as exc:
        raise SerializationError(str(exc), record.line) from exc


def _param(record: _Record):
    kind = record.args[0] if record.args else 'int'
    (key, value), = record.kv.items()
    if kind == 'list':
        items = [v for v in value.split(',') if v != '']
        if key in STRING_LIST_PARAMS:
            return key, items
        return key, [_integer(v, record.line) for v in items]
    return key, _integer(value, record.line)


def _read_stage(records: List[_Record]) -> TreeStage:
    heads = [r for r in records if r.keyword == 'stage']
    if len(heads) != 1:
        raise SerializationError("Expected exactly one 'stage' record.", heads[1].line if heads else 3)
    head = heads[0]
    params = dict(_param(r) for r in records if r.keyword == 'param')
    vertex_records = [r for r in records if r.keyword == 'vertex']
    edge_records = [r for r in records if r.keyword == 'edge']
    bond_records = [r for r in records if r.keyword == 'bond']
    if len(vertex_records) != _integer(head.get('vertices'), head.line):
        raise SerializationError("Vertex count differs from the stage record.", head.line)
    if len(edge_records) != _integer(head.get('edges'), head.line):
        raise SerializationError("Edge count differs from the stage record.", head.line)
    vertices = []
    for r in vertex_records:
        origin = r.get('origin')
        try:
            color = Color(r.get('color'))
        except ValueError as exc:
            raise SerializationError("Unknown colour '{}'.".format(r.get('color')), r.line) from exc
        vertices.append(Vertex(_integer(r.args[0], r.line), color, _integer(r.get('born'), r.line),
                               None if origin == '-' else _integer(origin, r.line)))
    edges = {}
    for r in edge_records:
        if len(r.args) != 2:
            raise SerializationError("Edge record needs two vertices.", r.line)
        edges[(_integer(r.args[0], r.line), _integer(r.args[1], r.line))] = _fraction(r.get('len'), r.line)
    try:
        stage = TreeStage(vertices, edges, _integer(head.get('index'), head.line), head.get('mode'), params)
    except ValueError as exc:
        raise SerializationError(str(exc), head.line) from exc
    for r in vertex_records:
        if str(stage.role(_integer(r.args[0], r.line))) != r.get('role'):
            raise SerializationError("Role '{}' contradicts the adjacency.".format(r.get('role')), r.line)
    bonding = stage.bonding or {}
    for r in bond_records:
        if len(r.args) != 3 or r.args[1] != '->':
            raise SerializationError("Bond record must read 'bond <id> -> <id>'.", r.line)
        if bonding.get(_integer(r.args[0], r.line)) != _integer(r.args[2], r.line):
            raise SerializationError("Bond contradicts the vertex origins.", r.line)
    if len(bond_records) != len(bonding):
        raise SerializationError("Expected {} bond records, got {}.".format(len(bonding), len(bond_records)),
                                 head.line)
    return stage


def _read_homeo(records: List[_Record]) -> TreeHomeo:
    source = _read_stage([r for r in records if not r.keyword.startswith(TARGET_PREFIX)])
    target_records = [_Record(r.line, r.text[len(TARGET_PREFIX):]) for r in records
                      if r.keyword.startswith(TARGET_PREFIX)]
    target = _read_stage(target_records) if target_records else source
    heads = [r for r in records if r.keyword == 'homeo']
    if len(heads) != 1:
        raise SerializationError("Expected exactly one 'homeo' record.", heads[1].line if heads else 3)
    head = heads[0]
    pair_records = [r for r in records if r.keyword == 'pair']
    bend_records = [r for r in records if r.keyword == 'bend']
    if _integer(head.get('pairs'), head.line) != len(pair_records):
        raise SerializationError("Pair count differs from the homeo record.", head.line)
    if _integer(head.get('bent'), head.line) != len(bend_records):
        raise SerializationError("Bent edge count differs from the homeo record.", head.line)
    vertex_map = {}
    for r in pair_records:
        if len(r.args) != 3 or r.args[1] != '->':
            raise SerializationError("Pair record must read 'pair <id> -> <id>'.", r.line)
        vertex_map[_integer(r.args[0], r.line)] = _integer(r.args[2], r.line)
    breaks_by_edge: Dict[Tuple[int, int], List[Tuple[Fraction, Fraction]]] = {}
    for r in bend_records:
        if len(r.args) != 2:
            raise SerializationError("Bend record needs two vertices.", r.line)
        breaks = []
        for pair in r.get('breaks').split(','):
            s, _, t = pair.partition(':')
            breaks.append((_fraction(s, r.line), _fraction(t, r.line)))
        breaks_by_edge[(_integer(r.args[0], r.line), _integer(r.args[1], r.line))] = breaks
    try:
        return TreeHomeo(source, target, vertex_map, breaks_by_edge)
    except (ValueError, KeyError) as exc:
        raise SerializationError(str(exc), head.line) from exc


def _read_report(lines: List[Tuple[int, str]]) -> Report:
    if not lines or not lines[0][1].startswith('report '):
        raise SerializationError("Expected a 'report' record.", lines[0][0] if lines else 3)
    report = Report(lines[0][1].split(' ', 1)[1])
    for number, text in lines[1:]:
        if text.startswith('check '):
            fields = text.split(' ', 3)
            if len(fields) < 3:
                raise SerializationError("Check record needs an id and a status.", number)
            try:
                status = Status(fields[2])
            except ValueError as exc:
                raise SerializationError("Unknown status '{}'.".format(fields[2]), number) from exc
            report.checks.append(Check(fields[1], status, fields[3] if len(fields) == 4 else ''))
        elif text.startswith('summary '):
            counts = dict(t.split('=', 1) for t in text.split()[1:])
            for status in Status:
                if _integer(counts.get(status.value, '-1'), number) != report.count(status):
                    raise SerializationError("Summary contradicts the checks.", number)
        else:
            raise SerializationError("Unexpected report line.", number)
    return report


def loads(text: str) -> Artifact:
    """Inverse of :func:`dumps`."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith('# tamedynfw '):
        raise SerializationError("Missing header '{}'.".format(HEADER), 1)
    if lines[0] != HEADER:
        raise SerializationError("Unsupported format version '{}', expected {}.".format(
            lines[0].split()[-1], FORMAT_VERSION), 1)
    if len(lines) < 2 or not lines[1].startswith('kind '):
        raise SerializationError("Missing 'kind' record.", 2)
    kind = lines[1].split(' ', 1)[1].strip()
    if lines[-1] != END:
        raise SerializationError("Truncated input, no '{}' record.".format(END), len(lines) + 1)
    body = [(number, line) for number, line in enumerate(lines[2:-1], start=3) if line.strip()]
    if kind == 'report':
        return _read_report(body)
    records = [_Record(number, line) for number, line in body]
    if kind == 'space':
        return _read_space(records)
    if kind == 'stage':
        return _read_stage(records)
    if kind == 'homeo':
        return _read_homeo(records)
    raise SerializationError("Unknown artifact kind '{}'.".format(kind), 2)


def load(path) -> Artifact:
    with open(path, 'r') as stream:
        return loads(stream.read())
