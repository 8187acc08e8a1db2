# coding: utf-8
#
# dendrite.py
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
"""Finite geometric trees approximating dendrites.

A :class:`TreeStage` is a finite tree with exact rational edge lengths and
optionally coloured vertices. Two families of stages are built here:

* refinements of a star whose every edge receives new ramification
  vertices of prescribed orders (Wazewski stages), and
* the two-colour construction, grown from four ``T0`` arms joined at a red
  center by attaching ``T0 v T0`` at red and ``T1`` at green marks.

Points of the tree are vertices or exact fractional positions on edges,
regions are unions of closed edge intervals.
"""

import collections
import enum
import functools
import itertools
import logging
import math
import random

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from tamedynfw.report import Report, Status

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

WAZEWSKI = 'wazewski'
TWOCOLOR = 'twocolor'

OMEGA_MARKERS = ('w', 'omega')

Edge = Tuple[int, int]


class ResolutionError(ValueError):
    """Raised when a stage is too coarse to host a requested witness."""
    pass


class Color(enum.Enum):
    RED = 'red'
    GREEN = 'green'
    NONE = 'none'

    def __str__(self):
        return self.value

    @property
    def opposite(self) -> 'Color':
        if self == Color.NONE:
            raise ValueError("Uncoloured vertices have no opposite colour.")
        return Color.GREEN if self == Color.RED else Color.RED


class Role(enum.Enum):
    ENDPOINT = 'endpoint'
    REGULAR = 'regular'
    RAMIFICATION = 'ramification'

    def __str__(self):
        return self.value


class EndpointKind(enum.Enum):
    GREEN_SO_FAR = 'GreenSoFar'
    RED_SO_FAR = 'RedSoFar'
    ALTERNATING = 'Alternating'
    UNDETERMINED = 'Undetermined'

    def __str__(self):
        return self.value


def edge_key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Vertex:
    id: int
    color: Color = Color.NONE
    born: int = 0
    origin: Optional[int] = None


@dataclass(frozen=True)
class GeometricPoint:
    """A vertex ``u`` or the point at fraction t from u on edge (u, v), u < v."""
    u: int
    v: Optional[int] = None
    t: Fraction = Fraction(0)

    def __post_init__(self):
        if self.v is None:
            object.__setattr__(self, 't', Fraction(0))
            return
        object.__setattr__(self, 't', Fraction(self.t))
        if not self.u < self.v:
            raise ValueError("Edge point needs u < v, got ({}, {}).".format(self.u, self.v))
        if not 0 < self.t < 1:
            raise ValueError("Edge position {} not strictly inside (0,1).".format(self.t))

    @property
    def is_vertex(self) -> bool:
        return self.v is None

    @property
    def edge(self) -> Edge:
        return (self.u, self.v)

    def sort_key(self):
        return (self.u, -1 if self.v is None else self.v, self.t)

    def __str__(self):
        if self.is_vertex:
            return 'v{}'.format(self.u)
        return 'e{}-{}@{}'.format(self.u, self.v, self.t)

    @classmethod
    def from_string(cls, text: str) -> 'GeometricPoint':
        text = text.strip()
        try:
            if text.startswith('v'):
                return cls(int(text[1:]))
            if text.startswith('e'):
                edge, t = text[1:].split('@')
                u, v = edge.split('-')
                return cls(int(u), int(v), Fraction(t))
        except ValueError as exc:
            raise ValueError("Malformed point '{}'.".format(text)) from exc
        raise ValueError("Malformed point '{}'.".format(text))


@dataclass(frozen=True)
class Arc:
    points: Tuple[GeometricPoint, ...]
    length: Fraction

    @property
    def start(self) -> GeometricPoint:
        return self.points[0]

    @property
    def end(self) -> GeometricPoint:
        return self.points[-1]


@dataclass(frozen=True)
class Arm:
    """A T0 or T1 copy: path from its root through its marks to the tip."""
    root: int
    vertices: Tuple[int, ...]
    kind: str
    born: int
    length: Fraction

    @property
    def marks(self) -> Tuple[int, ...]:
        return self.vertices[:-1]

    @property
    def tip(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class EndpointAddress:
    """Thread of marks x_0, ..., x_k with x_i born at stage i and attached to x_{i-1}."""
    thread: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'thread', tuple(self.thread))
        if len(self.thread) == 0:
            raise ValueError("Empty endpoint thread.")

    @property
    def depth(self) -> int:
        return len(self.thread) - 1

    @property
    def last(self) -> int:
        return self.thread[-1]

    def __str__(self):
        return '>'.join(str(x) for x in self.thread)


class TreeStage:
    """Finite tree with rational edge lengths, rooted at its least vertex."""

    def __init__(self, vertices: Iterable[Vertex], edges: Mapping[Edge, Fraction],
                 index: int = 0, mode: str = WAZEWSKI, params: dict = None):
        self.vertices: Dict[int, Vertex] = {v.id: v for v in vertices}
        self.edges: Dict[Edge, Fraction] = {}
        for (a, b), length in edges.items():
            length = Fraction(length)
            if length <= 0:
                raise ValueError("Edge ({}, {}) has non-positive length {}.".format(a, b, length))
            if a not in self.vertices or b not in self.vertices:
                raise ValueError("Edge ({}, {}) has an unknown end.".format(a, b))
            self.edges[edge_key(a, b)] = length
        self.index = index
        self.mode = mode
        self.params = dict(params or {})
        if mode not in (WAZEWSKI, TWOCOLOR):
            raise ValueError("Unknown stage mode '{}'.".format(mode))

        self._adjacency: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for a, b in sorted(self.edges):
            self._adjacency[a].append(b)
            self._adjacency[b].append(a)
        for v in self._adjacency:
            self._adjacency[v].sort()

        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("{} edges on {} vertices do not form a tree.".format(
                len(self.edges), len(self.vertices)))
        self.root = min(self.vertices)
        self.parent: Dict[int, Optional[int]] = {self.root: None}
        self.depth: Dict[int, int] = {self.root: 0}
        self.root_distance: Dict[int, Fraction] = {self.root: Fraction(0)}
        queue = collections.deque([self.root])
        while queue:
            a = queue.popleft()
            for b in self._adjacency[a]:
                if b not in self.parent:
                    self.parent[b] = a
                    self.depth[b] = self.depth[a] + 1
                    self.root_distance[b] = self.root_distance[a] + self.edges[edge_key(a, b)]
                    queue.append(b)
        if len(self.parent) != len(self.vertices):
            raise ValueError("Stage graph is not connected.")
        self._arms = None
        self._arm_index = None
        self._attached = None
        self._tour = None
        self._subtree_types = None

    # combinatorics

    def neighbors(self, v: int) -> List[int]:
        return self._adjacency[v]

    def children(self, v: int) -> List[int]:
        return [w for w in self._adjacency[v] if self.parent.get(w) == v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def role(self, v: int) -> Role:
        d = self.degree(v)
        if d <= 1:
            return Role.ENDPOINT
        return Role.REGULAR if d == 2 else Role.RAMIFICATION

    def color(self, v: int) -> Color:
        return self.vertices[v].color

    def order(self, v: int) -> int:
        """Order of v in the limit dendrite: red marks end with order 4, green marks with 3."""
        if self.is_mark(v):
            return 4 if self.color(v) == Color.RED else 3
        return self.degree(v)

    def vertex_type(self, v: int) -> Tuple[int, Color]:
        return (self.order(v), self.color(v))

    def is_bare(self, v: int) -> bool:
        """A mark whose attached arms are not yet materialized."""
        return self.is_mark(v) and self.degree(v) == 2

    def _euler_tour(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        if self._tour is None:
            tin, tout, clock = {}, {}, 0
            stack = [(self.root, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    tout[v] = clock
                    continue
                tin[v] = clock
                clock += 1
                stack.append((v, True))
                stack.extend((w, False) for w in reversed(self.children(v)))
            self._tour = (tin, tout)
        return self._tour

    def in_branch(self, frm: int, v: int, w: int) -> bool:
        """w lies in the component of the stage minus ``frm`` that contains its neighbour v."""
        tin, tout = self._euler_tour()
        if self.parent.get(v) == frm:
            return tin[v] <= tin[w] < tout[v]
        return not tin[frm] <= tin[w] < tout[frm]

    def branch_types(self, frm: int, v: int) -> collections.Counter:
        """Vertex types in the branch at ``frm`` through v; bare marks are also counted under 'bare'."""
        if self._subtree_types is None:
            counts: Dict[int, collections.Counter] = {}
            order = sorted(self.vertices, key=lambda w: -self.depth[w])
            for w in order:
                c = collections.Counter({self.vertex_type(w): 1})
                if self.is_bare(w):
                    c['bare'] += 1
                for child in self.children(w):
                    c.update(counts[child])
                counts[w] = c
            self._subtree_types = counts
        if self.parent.get(v) == frm:
            return self._subtree_types[v]
        rest = collections.Counter(self._subtree_types[self.root])
        rest.subtract(self._subtree_types[frm])
        return rest

    def leaves(self) -> List[int]:
        return [v for v in sorted(self.vertices) if self.degree(v) == 1]

    def length(self, a: int, b: int) -> Fraction:
        return self.edges[edge_key(a, b)]

    @property
    def bonding(self) -> Optional[Dict[int, int]]:
        """Map of vertices onto the previous stage, collapsing every newly attached subtree.

        Only two-colour stages carry it: new ramification vertices of a
        Wazewski refinement are interior edge points of the previous stage.
        """
        if self.mode != TWOCOLOR or self.index == 0:
            return None
        return {v.id: (v.origin if v.born == self.index else v.id) for v in self.vertices.values()}

    # metric

    def lca(self, a: int, b: int) -> int:
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a

    def vertex_distance(self, a: int, b: int) -> Fraction:
        return self.root_distance[a] + self.root_distance[b] - 2 * self.root_distance[self.lca(a, b)]

    def vertex_path(self, a: int, b: int) -> List[int]:
        c = self.lca(a, b)
        up, down = [], []
        while a != c:
            up.append(a)
            a = self.parent[a]
        while b != c:
            down.append(b)
            b = self.parent[b]
        return up + [c] + down[::-1]

    def check_point(self, x: GeometricPoint) -> GeometricPoint:
        if x.is_vertex:
            if x.u not in self.vertices:
                raise ValueError("Unknown vertex {}.".format(x.u))
        elif x.edge not in self.edges:
            raise ValueError("Unknown edge {}.".format(x.edge))
        return x

    def point_on_edge(self, a: int, b: int, s) -> GeometricPoint:
        """Point at arc length s from a on the edge between a and b."""
        s = Fraction(s)
        length = self.length(a, b)
        if s < 0 or s > length:
            raise ValueError("Position {} outside edge ({}, {}) of length {}.".format(s, a, b, length))
        if s == 0:
            return GeometricPoint(a)
        if s == length:
            return GeometricPoint(b)
        if a < b:
            return GeometricPoint(a, b, s / length)
        return GeometricPoint(b, a, 1 - s / length)

    def anchors(self, x: GeometricPoint) -> List[Tuple[int, Fraction]]:
        """End vertices of the edge carrying x with their distances to x."""
        if x.is_vertex:
            return [(x.u, Fraction(0))]
        length = self.edges[x.edge]
        return [(x.u, x.t * length), (x.v, (1 - x.t) * length)]

    def position(self, x: GeometricPoint, edge: Edge) -> Fraction:
        """Arc length of x from the lower end of an edge it lies on."""
        u, v = edge
        if x.is_vertex:
            if x.u == u:
                return Fraction(0)
            if x.u == v:
                return self.edges[edge]
        elif x.edge == edge:
            return x.t * self.edges[edge]
        raise ValueError("Point {} is not on edge {}.".format(x, edge))

    def _best_anchors(self, x: GeometricPoint, y: GeometricPoint):
        return min(((ox + self.vertex_distance(a, b) + oy, a, b)
                    for a, ox in self.anchors(x) for b, oy in self.anchors(y)),
                   key=lambda item: (item[0], item[1], item[2]))

    def distance(self, x: GeometricPoint, y: GeometricPoint) -> Fraction:
        if x == y:
            return Fraction(0)
        if not x.is_vertex and not y.is_vertex and x.edge == y.edge:
            return abs(x.t - y.t) * self.edges[x.edge]
        return self._best_anchors(x, y)[0]

    def arc_between(self, x: GeometricPoint, y: GeometricPoint) -> Arc:
        if x == y:
            return Arc((x,), Fraction(0))
        if not x.is_vertex and not y.is_vertex and x.edge == y.edge:
            return Arc((x, y), self.distance(x, y))
        total, a, b = self._best_anchors(x, y)
        points = [] if x.is_vertex else [x]
        points.extend(GeometricPoint(w) for w in self.vertex_path(a, b))
        if not y.is_vertex:
            points.append(y)
        return Arc(tuple(points), total)

    def common_edge(self, p: GeometricPoint, q: GeometricPoint) -> Edge:
        if not p.is_vertex:
            return p.edge
        if not q.is_vertex:
            return q.edge
        return edge_key(p.u, q.u)

    def is_between(self, x: GeometricPoint, z: GeometricPoint, y: GeometricPoint) -> bool:
        """z on the arc [x, y]."""
        return self.distance(x, z) + self.distance(z, y) == self.distance(x, y)

    def point_along(self, arc: Arc, s) -> GeometricPoint:
        """Point at arc length s from the start of an arc."""
        s = Fraction(s)
        if s < 0 or s > arc.length:
            raise ValueError("Arc length {} outside [0, {}].".format(s, arc.length))
        travelled = Fraction(0)
        for p, q in zip(arc.points, arc.points[1:]):
            edge = self.common_edge(p, q)
            sp, sq = self.position(p, edge), self.position(q, edge)
            segment = abs(sq - sp)
            if travelled + segment >= s:
                offset = s - travelled
                pos = sp + offset if sq >= sp else sp - offset
                return self.point_on_edge(edge[0], edge[1], pos)
            travelled += segment
        return arc.end

    def midpoint(self, x1: GeometricPoint, x2: GeometricPoint, x3: GeometricPoint) -> GeometricPoint:
        """Common point of the arcs [x1,x2], [x1,x3] and [x2,x3]."""
        d12, d13, d23 = self.distance(x1, x2), self.distance(x1, x3), self.distance(x2, x3)
        return self.point_along(self.arc_between(x1, x2), (d12 + d13 - d23) / 2)

    # regions

    def whole_region(self) -> 'Region':
        return Region(self, {e: (Fraction(0), length) for e, length in self.edges.items()}, self.vertices)

    def _branch(self, x: GeometricPoint, toward: int, via: Edge) -> 'Region':
        """Closure of the component of the complement of x entered through ``toward`` along ``via``."""
        blocked = x.u if x.is_vertex else None
        seen = {toward}
        queue = collections.deque([toward])
        while queue:
            a = queue.popleft()
            for b in self._adjacency[a]:
                if b == blocked or b in seen or edge_key(a, b) == via:
                    continue
                seen.add(b)
                queue.append(b)
        intervals = {}
        for a in seen:
            for b in self._adjacency[a]:
                if b in seen:
                    e = edge_key(a, b)
                    intervals[e] = (Fraction(0), self.edges[e])
        vertices = set(seen)
        if x.is_vertex:
            vertices.add(x.u)
            intervals[via] = (Fraction(0), self.edges[via])
        else:
            s = self.position(x, via)
            intervals[via] = (Fraction(0), s) if toward == via[0] else (s, self.edges[via])
        return Region(self, intervals, vertices)

    def components_at(self, x: GeometricPoint) -> List['Region']:
        """Closures of the components of the complement of x, each containing x."""
        self.check_point(x)
        if x.is_vertex:
            return [self._branch(x, w, edge_key(x.u, w)) for w in self._adjacency[x.u]]
        return [self._branch(x, x.u, x.edge), self._branch(x, x.v, x.edge)]

    def order_of(self, x: GeometricPoint) -> int:
        self.check_point(x)
        return self.degree(x.u) if x.is_vertex else 2

    def component_toward(self, x: GeometricPoint, y: GeometricPoint) -> 'Region':
        """C_x(y): the component of the complement of x containing y, plus x."""
        if x == y:
            raise ValueError("Component toward a point needs two distinct points, got {} twice.".format(x))
        arc = self.arc_between(x, y)
        nxt = arc.points[1]
        if x.is_vertex:
            w = nxt.u if nxt.is_vertex else (nxt.v if nxt.u == x.u else nxt.u)
            return self._branch(x, w, edge_key(x.u, w))
        if nxt.is_vertex and nxt.u in x.edge:
            return self._branch(x, nxt.u, x.edge)
        # y on the same edge
        return self._branch(x, x.u if nxt.t < x.t else x.v, x.edge)

    def between_region(self, x: GeometricPoint, y: GeometricPoint) -> 'Region':
        """C_{x,y} = C_x(y) intersected with C_y(x)."""
        return self.component_toward(x, y).intersection(self.component_toward(y, x))

    def diameter(self) -> Fraction:
        return self.whole_region().diameter()

    # two-colour structure

    @property
    def arms(self) -> List[Arm]:
        if self._arms is None:
            self._arms = self._discover_arms() if self.mode == TWOCOLOR else []
        return self._arms

    def _discover_arms(self) -> List[Arm]:
        arms = []
        roots = [self.root] + sorted(v for v in self.vertices if self.is_mark(v))
        for r in roots:
            rv = self.vertices[r]
            if r == self.root:
                starts = [w for w in self._adjacency[r] if self.vertices[w].born == 0]
                kind = 'T0'
            else:
                starts = [w for w in self._adjacency[r]
                          if self.vertices[w].origin == r and self.vertices[w].born == rv.born + 1]
                kind = 'T0' if rv.color == Color.RED else 'T1'
            for s in starts:
                sv = self.vertices[s]
                path, prev, cur = [s], r, s
                while True:
                    nxt = [w for w in self._adjacency[cur] if w != prev
                           and self.vertices[w].born == sv.born and self.vertices[w].origin == sv.origin]
                    if not nxt:
                        break
                    prev, cur = cur, nxt[0]
                    path.append(cur)
                length = self.vertex_distance(r, path[-1])
                arms.append(Arm(r, tuple(path), kind, sv.born, length))
        return arms

    def is_mark(self, v: int) -> bool:
        return self.mode == TWOCOLOR and v != self.root and self.vertices[v].color != Color.NONE

    def arm_of(self, v: int) -> Arm:
        if self._arm_index is None:
            self._arm_index = {w: arm for arm in self.arms for w in arm.vertices}
        if v not in self._arm_index:
            raise ValueError("Vertex {} lies on no arm.".format(v))
        return self._arm_index[v]

    def attached_arms(self, m: int) -> List[Arm]:
        return [arm for arm in self.arms if arm.root == m and m != self.root]

    def label(self, v: int) -> Fraction:
        arm = self.arm_of(v)
        return self.vertex_distance(arm.root, v) / arm.length

    def descendants(self, m: int) -> Set[int]:
        """Vertices attached at m, directly or through later attachments."""
        if self._attached is None:
            self._attached = collections.defaultdict(list)
            for v in self.vertices.values():
                if v.origin is not None:
                    self._attached[v.origin].append(v.id)
        result: Set[int] = set()
        frontier = [m]
        while frontier:
            for w in self._attached.get(frontier.pop(), ()):
                if w not in result:
                    result.add(w)
                    frontier.append(w)
        return result

    def __eq__(self, other):
        if not isinstance(other, TreeStage):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges and self.index == other.index
                and self.mode == other.mode and self.params == other.params)

    def __repr__(self):
        return 'TreeStage(mode={}, index={}, vertices={}, edges={})'.format(
            self.mode, self.index, len(self.vertices), len(self.edges))


class Region:
    """Union of closed intervals on edges (arc length from the lower end) and vertices."""

    def __init__(self, stage: TreeStage, intervals: Mapping[Edge, Tuple[Fraction, Fraction]],
                 vertices: Iterable[int]):
        self.stage = stage
        self.intervals = {e: (Fraction(a), Fraction(b)) for e, (a, b) in intervals.items()}
        self.vertices = frozenset(vertices)

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return self.intervals == other.intervals and self.vertices == other.vertices

    def __hash__(self):
        return hash((tuple(sorted(self.intervals.items())), self.vertices))

    def __repr__(self):
        return 'Region(vertices={}, intervals={})'.format(sorted(self.vertices), len(self.intervals))

    def contains(self, x: GeometricPoint) -> bool:
        if x.is_vertex:
            return x.u in self.vertices
        if x.edge not in self.intervals:
            return False
        a, b = self.intervals[x.edge]
        return a <= self.stage.position(x, x.edge) <= b

    def contains_segment(self, p: GeometricPoint, q: GeometricPoint) -> bool:
        if p == q:
            return self.contains(p)
        edge = self.stage.common_edge(p, q)
        if edge not in self.intervals:
            return False
        sp, sq = self.stage.position(p, edge), self.stage.position(q, edge)
        a, b = self.intervals[edge]
        return a <= min(sp, sq) and max(sp, sq) <= b

    def contains_arc(self, x: GeometricPoint, y: GeometricPoint) -> bool:
        arc = self.stage.arc_between(x, y)
        if not all(self.contains(p) for p in arc.points):
            return False
        return all(self.contains_segment(p, q) for p, q in zip(arc.points, arc.points[1:]))

    def intersection(self, other: 'Region') -> 'Region':
        intervals = {}
        for e, (a, b) in self.intervals.items():
            if e in other.intervals:
                c, d = other.intervals[e]
                lo, hi = max(a, c), min(b, d)
                if lo <= hi:
                    intervals[e] = (lo, hi)
        return Region(self.stage, intervals, self.vertices & other.vertices)

    def points(self) -> List[GeometricPoint]:
        """Vertices and interval ends, enough to span the region."""
        result = {GeometricPoint(v) for v in self.vertices}
        for (u, v), (a, b) in self.intervals.items():
            result.add(self.stage.point_on_edge(u, v, a))
            result.add(self.stage.point_on_edge(u, v, b))
        return sorted(result, key=GeometricPoint.sort_key)

    def diameter(self) -> Fraction:
        """Double sweep, exact for convex regions."""
        pts = self.points()
        if len(pts) < 2:
            return Fraction(0)
        far = max(pts, key=lambda p: (self.stage.distance(pts[0], p), p.sort_key()))
        return max(self.stage.distance(far, p) for p in pts)

    def boundary(self) -> List[GeometricPoint]:
        """Points of the region that are limits of points outside it."""
        stage = self.stage
        result = set()
        for v in self.vertices:
            for w in stage.neighbors(v):
                e = edge_key(v, w)
                end = Fraction(0) if v == e[0] else stage.edges[e]
                if e not in self.intervals:
                    result.add(GeometricPoint(v))
                    break
                a, b = self.intervals[e]
                if not (a <= end <= b) or a == b:
                    result.add(GeometricPoint(v))
                    break
        for (u, v), (a, b) in self.intervals.items():
            length = stage.edges[(u, v)]
            for s in (a, b):
                if 0 < s < length:
                    result.add(stage.point_on_edge(u, v, s))
        return sorted(result, key=GeometricPoint.sort_key)

    def is_convex(self) -> bool:
        pts = self.points()
        return all(self.contains_arc(p, q) for i, p in enumerate(pts) for q in pts[i+1:])


@dataclass
class ConvexCover:
    stage: TreeStage
    eps: Fraction
    regions: List[Region] = field(default_factory=list)

    @functools.cached_property
    def boundaries(self) -> List[List[GeometricPoint]]:
        return [region.boundary() for region in self.regions]

    @property
    def boundary_count(self) -> int:
        return sum(len(b) for b in self.boundaries)

    def covers(self) -> bool:
        """Every vertex and every edge point lies in some region."""
        covered_vertices = set().union(*(r.vertices for r in self.regions)) if self.regions else set()
        if covered_vertices != set(self.stage.vertices):
            return False
        for e, length in self.stage.edges.items():
            pieces = sorted(r.intervals[e] for r in self.regions if e in r.intervals)
            reach = Fraction(0)
            for a, b in pieces:
                if a > reach:
                    return False
                reach = max(reach, b)
            if reach < length:
                return False
        return True


# Wazewski stages

def normalize_orders(P: Iterable, width: int, omega_degree: int = None) -> List[int]:
    """Degrees realizing the orders in P, the omega marker as a finite degree."""
    degrees = set()
    for p in P:
        if isinstance(p, str) and p.strip().lower() in OMEGA_MARKERS:
            degrees.add(omega_degree if omega_degree is not None else width + 2)
            continue
        try:
            p = int(p)
        except (TypeError, ValueError) as exc:
            raise ValueError("Invalid ramification order '{}'.".format(p)) from exc
        if p < 3:
            raise ValueError("Ramification orders must be at least 3, got {}.".format(p))
        degrees.add(p)
    if not degrees or min(degrees) < 3:
        raise ValueError("Need a nonempty set of orders >= 3, got {}.".format(list(P)))
    return sorted(degrees)


def build_wazewski_stage(P: Iterable, depth: int, width: int, omega_degree: int = None) -> TreeStage:
    """Stage ``depth`` of the refinement of a star by ramification vertices of orders P.

    Stage 0 is a star of the least order with arms of length 1/2, every
    further stage is obtained by :func:`refine_wazewski`.
    """
    P = list(P)
    orders = normalize_orders(P, width, omega_degree)
    if depth < 0 or width < 1:
        raise ValueError("Need depth >= 0 and width >= 1, got {} and {}.".format(depth, width))
    params = {'orders': [str(p) for p in P], 'degrees': orders, 'width': width}
    if omega_degree is not None or any(isinstance(p, str) and p.strip().lower() in OMEGA_MARKERS for p in P):
        params['omega_degree'] = omega_degree if omega_degree is not None else width + 2
    vertices = [Vertex(i) for i in range(orders[0] + 1)]
    edges = {(0, i): Fraction(1, 2) for i in range(1, orders[0] + 1)}
    stage = TreeStage(vertices, edges, 0, WAZEWSKI, params)
    for _ in range(depth):
        stage = refine_wazewski(stage)
    return stage


def refine_wazewski(stage: TreeStage, edges: Iterable[Edge] = None) -> TreeStage:
    """Next Wazewski stage, or a local refinement of the given edges only.

    Every refined edge is cut into ``width+1`` equal pieces; the k-th new
    vertex of an edge receives the k-th degree (cyclically) by sprouting
    pendant edges of length 2^-(step+2). A full refinement uses the step
    after the stage index, a local one the step after the later-born end
    of each edge, so that repeated local refinement keeps shrinking pendants.
    """
    logger = logging.getLogger(__name__)
    if stage.mode != WAZEWSKI:
        raise ValueError("Cannot refine a '{}' stage as Wazewski stage.".format(stage.mode))
    orders = stage.params.get('degrees') or sorted({d for d in map(stage.degree, stage.vertices) if d >= 3}) or [3]
    width = stage.params.get('width', 1)
    if edges is None:
        chosen = {e: stage.index + 1 for e in stage.edges}
    else:
        chosen = {}
        for u, v in edges:
            e = edge_key(u, v)
            if e not in stage.edges:
                raise ValueError("Cannot refine unknown edge {}.".format(e))
            chosen[e] = max(stage.vertices[u].born, stage.vertices[v].born) + 1
    vertices = dict(stage.vertices)
    next_id = max(vertices) + 1
    refined: Dict[Edge, Fraction] = {}
    for (u, v), length in sorted(stage.edges.items()):
        if (u, v) not in chosen:
            refined[(u, v)] = length
            continue
        step = chosen[(u, v)]
        pendant = Fraction(1, 2 ** (step + 2))
        piece = length / (width + 1)
        chain = [u]
        for k in range(width):
            nv = next_id
            next_id += 1
            vertices[nv] = Vertex(nv, born=step)
            chain.append(nv)
            for _ in range(orders[k % len(orders)] - 2):
                leaf = next_id
                next_id += 1
                vertices[leaf] = Vertex(leaf, born=step)
                refined[(nv, leaf)] = pendant
        chain.append(v)
        for a, b in zip(chain, chain[1:]):
            refined[edge_key(a, b)] = piece
    index = max([stage.index] + list(chosen.values())) if edges is not None else stage.index + 1
    logger.debug("Wazewski step {}: refined {} edges, {} vertices.".format(index, len(chosen), len(vertices)))
    return TreeStage(vertices.values(), refined, index, WAZEWSKI, stage.params)


def density_shadow(previous: TreeStage, stage: TreeStage) -> List[Tuple[Edge, List[int]]]:
    """For every edge of the previous stage, the degrees of new ramification vertices on it."""
    result = []
    for (u, v) in sorted(previous.edges):
        path = stage.vertex_path(u, v)
        degrees = sorted(stage.degree(w) for w in path[1:-1]
                         if stage.vertices[w].born == stage.index and stage.degree(w) >= 3)
        result.append(((u, v), degrees))
    return result


# two-colour stages

def block_bounds(n: int) -> Tuple[Fraction, Fraction]:
    return (Fraction(n, n + 1), Fraction(n + 1, n + 2))


def dyadic_marks(n: int, m: int) -> List[Fraction]:
    """m centred dyadic rationals strictly inside block n, with the least denominator offering m."""
    lo, hi = block_bounds(n)
    k = 1
    while True:
        first = math.floor(lo * 2 ** k) + 1
        last = math.ceil(hi * 2 ** k) - 1
        if last - first + 1 >= m:
            start = first + (last - first + 1 - m) // 2
            return [Fraction(j, 2 ** k) for j in range(start, start + m)]
        k += 1


def block_of(label: Fraction) -> int:
    """Index n of the block (n/(n+1), (n+1)/(n+2)) holding a mark label."""
    label = Fraction(label)
    if not 0 < label < 1:
        raise ValueError("Mark label {} not inside (0, 1).".format(label))
    return math.floor(label / (1 - label))


def block_color(kind: str, n: int) -> Color:
    even = n % 2 == 0
    if kind == 'T1':
        even = not even
    return Color.RED if even else Color.GREEN


def arm_labels(kind: str, blocks: int, m: int, first: int = 0) -> List[Tuple[Fraction, Color]]:
    return [(label, block_color(kind, n)) for n in range(first, blocks) for label in dyadic_marks(n, m)]


def arm_length(born: int) -> Fraction:
    return Fraction(1, 2) if born == 0 else Fraction(1, 2 ** (born + 2))


def attached_length(stage: TreeStage, x: int) -> Fraction:
    """Length of the arms attached at mark x.

    Marks of the regular blocks get the standard length of the next stage;
    marks added beyond them by :func:`extend_arm` halve it per extra block,
    and every arm passes its own shrink factor on to the arms it carries.
    """
    arm = stage.arm_of(x)
    scale = arm.length / arm_length(arm.born)
    extra = block_of(stage.label(x)) - stage.params['blocks'] + 1
    return arm_length(stage.vertices[x].born + 1) * scale / 2 ** max(extra, 0)


def _grow_arm(vertices: Dict[int, Vertex], edges: Dict[Edge, Fraction], next_id: int, root: int, kind: str,
              born: int, blocks: int, m: int, length: Fraction = None) -> int:
    length = arm_length(born) if length is None else length
    origin = root if born > 0 else None
    prev, prev_label = root, Fraction(0)
    for label, color in arm_labels(kind, blocks, m) + [(Fraction(1), Color.NONE)]:
        vertices[next_id] = Vertex(next_id, color, born, origin)
        edges[edge_key(prev, next_id)] = (label - prev_label) * length
        prev, prev_label = next_id, label
        next_id += 1
    return next_id


def build_twocolor_stage(depth: int, marks_per_arc: int, blocks: int = 2) -> TreeStage:
    """Stage ``depth`` of the two-colour construction, X_0 being four T0 arms at a red center."""
    if marks_per_arc < 1 or blocks < 1 or depth < 0:
        raise ValueError("Need marks_per_arc >= 1, blocks >= 1 and depth >= 0.")
    vertices = {0: Vertex(0, Color.RED)}
    edges: Dict[Edge, Fraction] = {}
    next_id = 1
    for _ in range(4):
        next_id = _grow_arm(vertices, edges, next_id, 0, 'T0', 0, blocks, marks_per_arc)
    stage = TreeStage(vertices.values(), edges, 0, TWOCOLOR, {'marks_per_arc': marks_per_arc, 'blocks': blocks})
    for _ in range(depth):
        stage = refine_twocolor(stage)
    return stage


def refine_twocolor(stage: TreeStage, marks: Iterable[int] = None) -> TreeStage:
    """Next two-colour stage, or arms attached at the given bare marks only.

    Every chosen mark receives two T0 arms when red and one T1 arm when
    green, born one stage after the mark. Without a choice, the marks born
    at the current stage are refined, so that arms attached at stage i have
    length 2^-(i+2).
    """
    logger = logging.getLogger(__name__)
    _require_twocolor(stage)
    blocks, m = stage.params['blocks'], stage.params['marks_per_arc']
    if marks is None:
        chosen = [x for x in sorted(stage.vertices) if stage.is_mark(x) and stage.vertices[x].born == stage.index]
        index = stage.index + 1
    else:
        chosen = sorted(set(marks))
        bad = [x for x in chosen if x not in stage.vertices or not stage.is_bare(x)]
        if bad:
            raise ValueError("Cannot attach arms at {}: not bare marks.".format(bad[:5]))
        index = max([stage.index] + [stage.vertices[x].born + 1 for x in chosen])
    vertices = dict(stage.vertices)
    edges = dict(stage.edges)
    next_id = max(vertices) + 1
    for x in chosen:
        born, length = stage.vertices[x].born + 1, attached_length(stage, x)
        if stage.color(x) == Color.RED:
            next_id = _grow_arm(vertices, edges, next_id, x, 'T0', born, blocks, m, length)
            next_id = _grow_arm(vertices, edges, next_id, x, 'T0', born, blocks, m, length)
        else:
            next_id = _grow_arm(vertices, edges, next_id, x, 'T1', born, blocks, m, length)
    logger.debug("Two-colour step {}: {} vertices from {} marks.".format(index, len(vertices), len(chosen)))
    return TreeStage(vertices.values(), edges, index, TWOCOLOR, stage.params)


def arm_blocks(stage: TreeStage, arm: Arm) -> int:
    """Number of blocks materialized on an arm."""
    if not arm.marks:
        return 0
    return block_of(stage.label(arm.marks[-1])) + 1


def extend_arm(stage: TreeStage, tip: int, blocks: int) -> TreeStage:
    """Insert the marks of further blocks between the last mark of an arm and its tip.

    The new marks are bare and share the arm's stage of birth; the arm keeps
    its length, so the existing vertices keep their positions.
    """
    _require_twocolor(stage)
    arm = stage.arm_of(tip)
    if arm.tip != tip:
        raise ValueError("Vertex {} is not the tip of an arm.".format(tip))
    have = arm_blocks(stage, arm)
    if blocks <= have:
        return stage
    last = arm.marks[-1] if arm.marks else arm.root
    prev_label = stage.label(last) if arm.marks else Fraction(0)
    origin = arm.root if arm.born > 0 else None
    vertices = dict(stage.vertices)
    edges = dict(stage.edges)
    del edges[edge_key(last, tip)]
    next_id = max(vertices) + 1
    prev = last
    for label, color in arm_labels(arm.kind, blocks, stage.params['marks_per_arc'], first=have):
        vertices[next_id] = Vertex(next_id, color, arm.born, origin)
        edges[edge_key(prev, next_id)] = (label - prev_label) * arm.length
        prev, prev_label = next_id, label
        next_id += 1
    edges[edge_key(prev, tip)] = (1 - prev_label) * arm.length
    return TreeStage(vertices.values(), edges, stage.index, TWOCOLOR, stage.params)


def lift_point(coarse: TreeStage, fine: TreeStage, x: GeometricPoint) -> GeometricPoint:
    """The point x of a stage as a point of a refinement keeping its vertices and distances."""
    coarse.check_point(x)
    if x.is_vertex:
        return fine.check_point(x)
    if x.edge in fine.edges:
        return x
    u, v = x.edge
    if u not in fine.vertices or v not in fine.vertices:
        raise ValueError("Stage does not refine edge {}.".format(x.edge))
    return fine.point_along(fine.arc_between(GeometricPoint(u), GeometricPoint(v)), x.t * coarse.edges[x.edge])


def _require_twocolor(stage: TreeStage):
    if stage.mode != TWOCOLOR:
        raise ValueError("Operation needs a two-colour stage, got mode '{}'.".format(stage.mode))


def validate_thread(stage: TreeStage, addr: EndpointAddress):
    _require_twocolor(stage)
    if addr.depth > stage.index:
        raise ResolutionError("Thread of depth {} exceeds stage {}.".format(addr.depth, stage.index))
    for i, x in enumerate(addr.thread):
        if x not in stage.vertices or not stage.is_mark(x):
            raise ValueError("Thread element {} is not a mark.".format(x))
        v = stage.vertices[x]
        if v.born != i:
            raise ValueError("Thread element {} born at stage {}, expected {}.".format(x, v.born, i))
        if i > 0 and v.origin != addr.thread[i - 1]:
            raise ValueError("Thread element {} is not attached to {}.".format(x, addr.thread[i - 1]))


def classify_endpoint(stage: TreeStage, addr: EndpointAddress) -> EndpointKind:
    """Read the colour pattern of the marks towards the thread's endpoint."""
    validate_thread(stage, addr)
    k = addr.depth
    if k == 0:
        return EndpointKind.UNDETERMINED
    previous, last = addr.thread[-2], addr.thread[-1]
    arm = stage.arm_of(last)
    segment = [previous] + list(arm.marks[:arm.marks.index(last) + 1])
    colors = {stage.color(x) for x in segment}
    if colors == {Color.RED}:
        return EndpointKind.RED_SO_FAR
    if colors == {Color.GREEN}:
        return EndpointKind.GREEN_SO_FAR
    switches = all(stage.color(a) != stage.color(b) for a, b in zip(addr.thread, addr.thread[1:]))
    if switches and k >= 2:
        return EndpointKind.ALTERNATING
    return EndpointKind.UNDETERMINED


def _qualifying_marks(stage: TreeStage, arm: Arm, color: Color, monochrome: bool) -> List[int]:
    result = []
    for x in arm.marks:
        if stage.color(x) == color:
            result.append(x)
        elif monochrome:
            break
    return result


def type_witness(stage: TreeStage, kind: str, bits: str) -> EndpointAddress:
    """Thread of the given kind ('red', 'green' or 'alternating') selected by a bit string."""
    _require_twocolor(stage)
    if kind not in ('red', 'green', 'alternating'):
        raise ValueError("Unknown endpoint kind '{}'.".format(kind))
    if any(b not in '01' for b in bits):
        raise ValueError("Not a bit string: '{}'.".format(bits))
    if len(bits) > stage.index:
        raise ResolutionError("Bit string of length {} needs stage depth >= {}, got {}.".format(
            len(bits), len(bits), stage.index))
    if bits and stage.params.get('marks_per_arc', 0) < 2:
        raise ResolutionError("Branching witnesses need at least two marks per block.")
    start = Color.GREEN if kind == 'green' else Color.RED
    roots = [x for x in sorted(stage.vertices) if stage.is_mark(x) and stage.vertices[x].born == 0
             and stage.color(x) == start]
    if kind != 'alternating':
        roots = [x for x in roots if x in _qualifying_marks(stage, stage.arm_of(x), start, kind == 'red')]
    if not roots:
        raise ResolutionError("No {} mark of stage 0 starts a {} thread with {} blocks.".format(
            start, kind, stage.params.get('blocks')))
    thread = [roots[0]]
    for b in bits:
        x = thread[-1]
        arm = stage.attached_arms(x)[0]
        if kind == 'alternating':
            candidates = _qualifying_marks(stage, arm, stage.color(x).opposite, False)
        else:
            candidates = _qualifying_marks(stage, arm, start, True)
        if len(candidates) < 2:
            raise ResolutionError("Arm at mark {} offers {} qualifying marks.".format(x, len(candidates)))
        thread.append(candidates[-2:][int(b)])
    return EndpointAddress(tuple(thread))


def monochromatic_arcs(stage: TreeStage) -> Dict[Color, Optional[Arc]]:
    """Per colour, an arc between two ramification vertices of that colour free of the other one."""
    _require_twocolor(stage)
    result: Dict[Color, Optional[Arc]] = {Color.RED: None, Color.GREEN: None}
    for arm in stage.arms:
        ramified = [x for x in (arm.root,) + arm.marks if stage.role(x) == Role.RAMIFICATION]
        for a, b in zip(ramified, ramified[1:]):
            color = stage.color(a)
            if color == stage.color(b) and result[color] is None:
                result[color] = stage.arc_between(GeometricPoint(a), GeometricPoint(b))
    return result


# convex covers

def build_convex_cover(stage: TreeStage, eps) -> ConvexCover:
    """Greedy cover by convex regions of radius eps/8 around their root points.

    Regions are grown downward from the least vertex in breadth-first
    order, children by increasing id; an edge is cut where the radius
    budget runs out and the cut point roots the next region.
    """
    logger = logging.getLogger(__name__)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    whole = stage.whole_region()
    if whole.diameter() <= eps / 4:
        return ConvexCover(stage, eps, [whole])
    radius = eps / 8
    regions = []
    pending = collections.deque([(stage.root, [(stage.root, w, Fraction(0)) for w in stage.children(stage.root)])])
    while pending:
        start, directions = pending.popleft()
        intervals: Dict[Edge, Tuple[Fraction, Fraction]] = {}
        vertices = {start} if start is not None else set()
        todo = collections.deque((p, w, s0, radius) for p, w, s0 in directions)
        while todo:
            p, w, s0, budget = todo.popleft()
            e = edge_key(p, w)
            length = stage.edges[e]
            end = s0 + budget if length - s0 > budget else length
            intervals[e] = (s0, end) if p < w else (length - end, length - s0)
            if end < length:
                pending.append((None, [(p, w, end)]))
                continue
            vertices.add(w)
            rest = budget - (length - s0)
            kids = stage.children(w)
            if rest > 0:
                todo.extend((w, c, Fraction(0), rest) for c in kids)
            elif kids:
                pending.append((w, [(w, c, Fraction(0)) for c in kids]))
        regions.append(Region(stage, intervals, vertices))
    logger.debug("Convex cover at eps={}: {} regions.".format(eps, len(regions)))
    return ConvexCover(stage, eps, regions)


# audits and sampling

def path_distance(stage: TreeStage, x: GeometricPoint, y: GeometricPoint) -> Fraction:
    return stage.distance(stage.check_point(x), stage.check_point(y))


def diameter(region: Region) -> Fraction:
    return region.diameter()


def random_point(stage: TreeStage, rng: random.Random, resolution: int = 16) -> GeometricPoint:
    edges = sorted(stage.edges)
    u, v = edges[rng.randrange(len(edges))]
    return stage.point_on_edge(u, v, stage.edges[(u, v)] * Fraction(rng.randint(0, resolution), resolution))


def check_stage(stage: TreeStage) -> Report:
    """Structural audit of a stage."""
    report = Report('dendrite')
    report.add('tree', len(stage.edges) == len(stage.vertices) - 1,
               'vertices={} edges={}'.format(len(stage.vertices), len(stage.edges)))
    ramifications = [v for v in sorted(stage.vertices) if stage.role(v) == Role.RAMIFICATION]
    if stage.mode == WAZEWSKI:
        degrees = set(stage.params.get('degrees', []))
        bad = [v for v in ramifications if stage.degree(v) not in degrees]
        report.add('orders', not bad, 'degrees={} offending={}'.format(sorted(degrees), bad[:5]))
        pendant_ok = True
        for v in ramifications:
            born = stage.vertices[v].born
            if born > 0:
                pendants = [w for w in stage.neighbors(v) if stage.degree(w) == 1 and stage.vertices[w].born == born]
                span = 2 * max((stage.length(v, w) for w in pendants), default=Fraction(0))
                pendant_ok = pendant_ok and span < Fraction(1, 2 ** born)
        report.add('diameter-decay', pendant_ok, 'pendant stars below 2^-i')
        return report
    bad = [v for v in ramifications if v != stage.root and not (
        (stage.color(v) == Color.RED and stage.degree(v) == 4)
        or (stage.color(v) == Color.GREEN and stage.degree(v) == 3))]
    report.add('color-coupling', not bad and stage.degree(stage.root) == 4,
               'ramifications={} offending={}'.format(len(ramifications), bad[:5]))
    worst = None
    for root, born in sorted({(arm.root, arm.born) for arm in stage.arms if arm.born > 0}):
        members = stage.descendants(root)
        diam = max(stage.vertex_distance(root, w) for w in members) * 2
        if diam >= Fraction(1, 2 ** born):
            worst = (root, diam)
    report.add('diameter-decay', worst is None, 'attached subtrees below 2^-i' if worst is None else
               'mark {} spans {}'.format(*worst))
    if stage.index > 0:
        bonding = stage.bonding
        previous = {v for v, vx in stage.vertices.items() if vx.born < stage.index}
        image = set(bonding.values())
        collapsed = all(bonding[v] == stage.vertices[v].origin
                        for v in stage.vertices if stage.vertices[v].born == stage.index)
        report.add('bonding', image == previous and collapsed,
                   'previous={} image={} collapsed={}'.format(len(previous), len(image),
                                                               'true' if collapsed else 'false'))
    return report


WITNESS_KINDS = {
    'red': EndpointKind.RED_SO_FAR,
    'green': EndpointKind.GREEN_SO_FAR,
    'alternating': EndpointKind.ALTERNATING,
}


def verify_dendrite(orders: Iterable = (3,), depth: int = 2, width: int = 1, omega_degree: int = None,
                    twocolor_depth: int = 2, marks_per_arc: int = 2, blocks: int = 2) -> Report:
    """Structural audit of every Wazewski and two-colour stage up to the given depths.

    Two-colour stages of index at least 2 also classify the witness threads
    of every kind along all bit strings of full length.
    """
    logger = logging.getLogger(__name__)
    report = Report('dendrite')
    stage = build_wazewski_stage(orders, 0, width, omega_degree)
    for i in range(depth + 1):
        if i > 0:
            stage = refine_wazewski(stage)
        report.extend(check_stage(stage), prefix='wazewski-{}'.format(i))
    for i in range(twocolor_depth + 1):
        stage = build_twocolor_stage(i, marks_per_arc, blocks)
        report.extend(check_stage(stage), prefix='twocolor-{}'.format(i))
        if i < 2 or marks_per_arc < 2:
            continue
        for kind, expected in WITNESS_KINDS.items():
            found = []
            try:
                for bits in itertools.product('01', repeat=i):
                    found.append(classify_endpoint(stage, type_witness(stage, kind, ''.join(bits))))
            except ResolutionError as exc:
                report.add('twocolor-{}/witness-{}'.format(i, kind), Status.SKIP, str(exc))
                continue
            wrong = sum(1 for k in found if k != expected)
            report.add('twocolor-{}/witness-{}'.format(i, kind), wrong == 0, 'threads={} expected={} wrong={}'.format(
                len(found), expected, wrong))
    logger.info("Dendrite suite: {} checks, {} failed.".format(len(report.checks), len(report.failed)))
    return report
