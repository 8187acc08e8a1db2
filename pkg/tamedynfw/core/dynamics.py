# coding: utf-8
#
# dynamics.py
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
"""Homeomorphisms and finite-image maps of tree stages.

A :class:`TreeHomeo` sends the vertices of a stage to vertices of equal
type in a target stage and every edge onto the target path between the
images of its ends, by an :class:`ArcMap` with exact rational breakpoints.
Targets are the stage itself or refinements of it that keep its vertices
and distances, so images are measured in the metric of the dendrite.
Homeomorphisms are synthesized by the embedding search of
:mod:`tamedynfw.core.embedding`.

Limits of homeomorphisms that matter for the enveloping semigroup are
represented as :class:`FiniteImageTreeMap`, a partition of the stage by
finitely many cut points into regions with one value each.
"""

import logging
import random

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from tamedynfw.core.dendrite import (
    TWOCOLOR, WAZEWSKI, Arc, Arm, Color, ConvexCover, Edge, EndpointAddress, EndpointKind, GeometricPoint,
    ResolutionError, TreeStage, arm_blocks, attached_length, block_color, block_of, build_convex_cover,
    build_twocolor_stage, build_wazewski_stage, classify_endpoint, edge_key, extend_arm, lift_point, random_point,
    refine_twocolor, refine_wazewski, type_witness)
from tamedynfw.core.embedding import embed_branch, embed_stage
from tamedynfw.report import Report

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

Breaks = Tuple[Tuple[Fraction, Fraction], ...]

DEFAULT_EPS_GRID = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(1))

MAX_ZOOM = 40
MAX_DESCENT = 6
MAX_EXTRA_BLOCKS = 40


def _point(x) -> GeometricPoint:
    return x if isinstance(x, GeometricPoint) else GeometricPoint(x)


def _interpolate(breaks: Breaks, s: Fraction) -> Fraction:
    for (s0, t0), (s1, t1) in zip(breaks, breaks[1:]):
        if s0 <= s <= s1:
            return t0 + (t1 - t0) * (s - s0) / (s1 - s0)
    raise ValueError("Arc length {} outside the breakpoints.".format(s))


class ArcMap:
    """Monotone piecewise-linear bijection from a source arc onto a target arc.

    Breakpoints are pairs (s, t) of arc lengths measured from the arc starts,
    strictly increasing from (0, 0) to the two arc lengths.
    """

    def __init__(self, source_stage: TreeStage, source: Arc, target_stage: TreeStage, target: Arc,
                 breaks: Iterable = None):
        if source.length <= 0 or target.length <= 0:
            raise ValueError("Arc maps need non-degenerate arcs.")
        if breaks is None:
            breaks = ((0, 0), (source.length, target.length))
        breaks = tuple((Fraction(s), Fraction(t)) for s, t in breaks)
        if breaks[0] != (0, 0) or breaks[-1] != (source.length, target.length):
            raise ValueError("Breakpoints must run from (0, 0) to ({}, {}), got {} to {}.".format(
                source.length, target.length, breaks[0], breaks[-1]))
        for (s0, t0), (s1, t1) in zip(breaks, breaks[1:]):
            if not (s0 < s1 and t0 < t1):
                raise ValueError("Breakpoints must increase strictly, got ({}, {}) then ({}, {}).".format(
                    s0, t0, s1, t1))
        self.source_stage = source_stage
        self.source = source
        self.target_stage = target_stage
        self.target = target
        self.breaks: Breaks = breaks

    @property
    def is_linear(self) -> bool:
        return len(self.breaks) == 2

    def param(self, s) -> Fraction:
        return _interpolate(self.breaks, Fraction(s))

    def apply(self, x: GeometricPoint) -> GeometricPoint:
        s = self.source_stage.distance(self.source.start, x)
        return self.target_stage.point_along(self.target, self.param(s))

    def __repr__(self):
        return 'ArcMap([{}, {}] -> [{}, {}], {} breaks)'.format(
            self.source.start, self.source.end, self.target.start, self.target.end, len(self.breaks))


class TreeHomeo:
    """Homeomorphism of a stage onto a subtree of a target stage.

    ``vertex_map`` sends every source vertex to a target vertex. Edge (u, v),
    u < v, is mapped onto the target path from the image of u to the image
    of v, linearly unless ``breaks_by_edge`` lists breakpoints for it,
    measured from u and from its image.
    """

    def __init__(self, source: TreeStage, target: TreeStage, vertex_map: Mapping[int, int],
                 breaks_by_edge: Mapping[Edge, Iterable] = None):
        self.source = source
        self.target = target
        self.vertex_map: Dict[int, int] = {int(v): int(w) for v, w in vertex_map.items()}
        missing = sorted(set(source.vertices) - set(self.vertex_map))
        if missing:
            raise ValueError("Vertex map misses {} source vertices, e.g. {}.".format(len(missing), missing[:5]))
        unknown = sorted(w for w in self.vertex_map.values() if w not in target.vertices)
        if unknown:
            raise ValueError("Vertex map hits unknown target vertices, e.g. {}.".format(unknown[:5]))
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            raise ValueError("Vertex map is not injective.")
        breaks_by_edge = {edge_key(*e): b for e, b in (breaks_by_edge or {}).items()}
        self.pieces: Dict[Edge, ArcMap] = {}
        for (u, v), length in sorted(source.edges.items()):
            arc = Arc((GeometricPoint(u), GeometricPoint(v)), length)
            image = target.arc_between(GeometricPoint(self.vertex_map[u]), GeometricPoint(self.vertex_map[v]))
            self.pieces[(u, v)] = ArcMap(source, arc, target, image, breaks_by_edge.get((u, v)))

    @property
    def breaks(self) -> Dict[Edge, Breaks]:
        """Breakpoints of the edges not mapped linearly."""
        return {e: piece.breaks for e, piece in self.pieces.items() if not piece.is_linear}

    def apply(self, x) -> GeometricPoint:
        x = self.source.check_point(_point(x))
        if x.is_vertex:
            return GeometricPoint(self.vertex_map[x.u])
        return self.pieces[x.edge].apply(x)

    __call__ = apply

    def is_type_preserving(self) -> bool:
        """Every vertex goes to a vertex of the same order and colour."""
        return all(self.target.vertex_type(w) == self.source.vertex_type(v) for v, w in self.vertex_map.items())

    def is_embedding(self) -> bool:
        """Edge images meet only at images of common ends."""
        images = set(self.vertex_map.values())
        used_edges: Set[Edge] = set()
        used_inner: Set[int] = set()
        for u, v in self.source.edges:
            path = self.target.vertex_path(self.vertex_map[u], self.vertex_map[v])
            inner = path[1:-1]
            if any(w in images or w in used_inner for w in inner):
                return False
            used_inner.update(inner)
            for a, b in zip(path, path[1:]):
                if edge_key(a, b) in used_edges:
                    return False
                used_edges.add(edge_key(a, b))
        return True

    def is_bijective(self) -> bool:
        return len(self.target.vertices) == len(self.vertex_map) and self.is_embedding()

    def extends_source(self) -> bool:
        """The target refines the source, keeping its vertices and distances."""
        return all(u in self.target.vertices and v in self.target.vertices
                   and self.target.vertex_distance(u, v) == length for (u, v), length in self.source.edges.items())

    def inverse(self) -> 'TreeHomeo':
        if not self.is_bijective():
            raise ValueError("Only bijective maps have an inverse stage map.")
        breaks = {}
        for (u, v), piece in self.pieces.items():
            a, b = self.vertex_map[u], self.vertex_map[v]
            if a < b:
                breaks[(a, b)] = [(t, s) for s, t in piece.breaks]
            else:
                total, image = piece.source.length, piece.target.length
                breaks[(b, a)] = [(image - t, total - s) for s, t in reversed(piece.breaks)]
        return TreeHomeo(self.target, self.source, {w: v for v, w in self.vertex_map.items()}, breaks)

    def displacement(self, x) -> Fraction:
        """Distance between x and its image, both read in the target."""
        x = self.source.check_point(_point(x))
        return self.target.distance(lift_point(self.source, self.target, x), self.apply(x))

    def __repr__(self):
        return 'TreeHomeo({} -> {} vertices, {} bent edges)'.format(
            len(self.source.vertices), len(self.target.vertices), len(self.breaks))


def identity_homeo(stage: TreeStage) -> TreeHomeo:
    return TreeHomeo(stage, stage, {v: v for v in stage.vertices})


def rigidity_points(stage: TreeStage, n: int) -> Tuple[GeometricPoint, GeometricPoint, GeometricPoint]:
    """(a_n, c, b_n) on the longest edge, c its midpoint, a_n and b_n at distance r_n from c."""
    (u, v), length = sorted(stage.edges.items(), key=lambda item: (-item[1], item[0]))[0]
    c = length / 2
    r = min(length / 4, Fraction(1, 2)) / 2 ** n
    return stage.point_on_edge(u, v, c - r), stage.point_on_edge(u, v, c), stage.point_on_edge(u, v, c + r)


def rigidity_sequence(stage: TreeStage, N: int, sample: Iterable = ()) -> List[TreeHomeo]:
    """g_1, ..., g_N supported on shrinking neighbourhoods of one regular point."""
    logger = logging.getLogger(__name__)
    if N < 1:
        raise ValueError("Need N >= 1, got {}.".format(N))
    sample = [stage.check_point(_point(x)) for x in sample]
    (u, v), length = sorted(stage.edges.items(), key=lambda item: (-item[1], item[0]))[0]
    c = length / 2
    fixed = {w: w for w in stage.vertices}
    sequence = []
    for n in range(1, N + 1):
        r = min(length / 4, Fraction(1, 2)) / 2 ** n
        breaks = [(Fraction(0), Fraction(0)), (c - r, c - r), (c, c + r / 2), (c + r, c + r), (length, length)]
        g = TreeHomeo(stage, stage, fixed, {(u, v): breaks})
        if sample:
            logger.debug("g_{} moves the sample by at most {}.".format(
                n, max(g.displacement(x) for x in sample)))
        sequence.append(g)
    return sequence


# side swaps on Wazewski stages

@dataclass
class _Zoom:
    """A refinement with a cut at the midpoint of edge (inner, outer); the small side lies beyond outer."""
    stage: TreeStage
    leaf: int
    inner: int
    outer: int

    @property
    def cut(self) -> GeometricPoint:
        return self.stage.point_on_edge(self.inner, self.outer, self.stage.length(self.inner, self.outer) / 2)

    def small_vertices(self) -> Set[int]:
        return {v for v in self.stage.vertices if self.stage.in_branch(self.inner, self.outer, v)}

    def nearest_far_leaf(self) -> int:
        stage = self.stage
        leaves = [v for v in stage.leaves() if stage.in_branch(self.outer, self.inner, v)]
        return min(leaves, key=lambda v: (stage.vertex_distance(self.inner, v), v))


class _ZoomChain:
    """Refinements of a Wazewski stage towards one of its leaves, refined again on the small side."""

    def __init__(self, stage: TreeStage, leaf: int):
        if stage.degree(leaf) != 1:
            raise ValueError("Vertex {} is not a leaf.".format(leaf))
        self.stage = stage
        self.leaf = leaf
        self.start = 1
        self.levels = 0
        self._zooms: List[_Zoom] = []
        self._grown: Dict[Tuple[int, int], _Zoom] = {}

    @property
    def depth(self) -> int:
        """Number of zooms built so far."""
        return len(self._zooms)

    def zoom(self, k: int) -> _Zoom:
        while len(self._zooms) < k:
            current = self._zooms[-1].stage if self._zooms else self.stage
            near = current.neighbors(self.leaf)[0]
            refined = refine_wazewski(current, [edge_key(near, self.leaf)])
            outer = refined.neighbors(self.leaf)[0]
            self._zooms.append(_Zoom(refined, self.leaf, refined.vertex_path(outer, near)[1], outer))
        return self._zooms[k - 1]

    def grown(self, k: int, levels: int) -> _Zoom:
        if levels == 0:
            return self.zoom(k)
        if (k, levels) not in self._grown:
            base = self.grown(k, levels - 1)
            small = base.small_vertices()
            edges = [e for e in base.stage.edges if e[0] in small and e[1] in small]
            self._grown[(k, levels)] = _Zoom(refine_wazewski(base.stage, edges), self.leaf, base.inner, base.outer)
        return self._grown[(k, levels)]

    def search(self, build: Callable[[_Zoom], 'TreeHomeo'], accept: Callable[['TreeHomeo'], bool],
               ready: Callable[[_Zoom], bool] = None) -> 'TreeHomeo':
        """First swap built on a zoom that is accepted, refining the small side until the source fits."""
        most = self.stage.index + 4
        for k in range(self.start, MAX_ZOOM + 1):
            if ready is not None and not ready(self.zoom(k)):
                continue
            for levels in range(self.levels, most + 1):
                try:
                    h = build(self.grown(k, levels))
                except ResolutionError:
                    continue
                self.levels = levels
                if accept(h):
                    self.start = k
                    return h
                break
        raise ResolutionError("No cut point towards leaf {} within {} refinements.".format(self.leaf, MAX_ZOOM))


def _bent(length: Fraction, image: Fraction, s: Fraction, t: Fraction, forward: bool) -> List[Tuple]:
    """Breakpoints sending s to t, or measured from the other end when not ``forward``."""
    if forward:
        return [(0, 0), (s, t), (length, image)]
    return [(0, 0), (length - s, image - t), (length, image)]


def _swap_sides(source: TreeStage, zoom: _Zoom, leaf: int, pins: Mapping[int, int] = None,
                keep: int = None, s_cut: Fraction = None) -> TreeHomeo:
    """Glue an embedding of the source minus a leaf edge into the small side with a map of that edge.

    The leaf goes to ``keep``, or to the nearest leaf beyond the cut; the
    point at distance ``s_cut`` from the leaf's neighbour goes to the cut.
    """
    target = zoom.stage
    p = source.neighbors(leaf)[0]
    _, mapping = embed_branch(source, leaf, p, target, zoom.inner, zoom.outer, pins=pins)
    mapping[leaf] = zoom.nearest_far_leaf() if keep is None else keep
    q = mapping[p]
    length, image = source.length(p, leaf), target.vertex_distance(q, mapping[leaf])
    t_cut = target.distance(GeometricPoint(q), zoom.cut)
    breaks = {edge_key(p, leaf): _bent(length, image, s_cut, t_cut, p < leaf)}
    return TreeHomeo(source, target, mapping, breaks)


def _require_wazewski(stage: TreeStage):
    if stage.mode != WAZEWSKI:
        raise ValueError("Operation needs a Wazewski stage, got mode '{}'.".format(stage.mode))


def proximal_witness(stage: TreeStage, x, y, eps) -> TreeHomeo:
    """Homeomorphism bringing x and y closer than eps.

    A cut point c on the edge of a leaf l, refined towards l until x and y
    lie on the big side and the small side is tiny, splits the stage. The
    big side is embedded into the small side, and [c, l] is stretched over
    the path from c to a leaf of the big side.
    """
    logger = logging.getLogger(__name__)
    _require_wazewski(stage)
    x, y = stage.check_point(_point(x)), stage.check_point(_point(y))
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    if x == y:
        raise ValueError("Need two distinct points, got {} twice.".format(x))
    if stage.distance(x, y) < eps:
        return identity_homeo(stage)
    for leaf in sorted(stage.leaves(), key=lambda v: (-stage.length(v, stage.neighbors(v)[0]), v)):
        if GeometricPoint(leaf) in (x, y):
            continue
        base = GeometricPoint(stage.neighbors(leaf)[0])
        chain = _ZoomChain(stage, leaf)

        def beyond(z, s_cut):
            return stage.is_between(base, z, GeometricPoint(leaf)) and stage.distance(base, z) > s_cut

        def ready(zoom):
            s_cut = zoom.stage.distance(base, zoom.cut)
            return not beyond(x, s_cut) and not beyond(y, s_cut)

        def build(zoom):
            return _swap_sides(stage, zoom, leaf, s_cut=zoom.stage.distance(base, zoom.cut))

        def accept(h):
            return h.target.distance(h.apply(x), h.apply(y)) < eps

        try:
            h = chain.search(build, accept, ready)
        except ResolutionError:
            continue
        logger.debug("Proximality witness for {}, {} swaps at leaf {}.".format(x, y, leaf))
        return h
    raise ResolutionError("No leaf offers a cut point separating {} and {} from a small side.".format(x, y))


def _pab_build(stage: TreeStage, a: int, b: int, s_y: Fraction) -> Callable[[_Zoom], TreeHomeo]:
    def build(zoom):
        return _swap_sides(stage, zoom, b, pins={a: a}, keep=b, s_cut=s_y)
    return build


def _pab_accept(a: GeometricPoint, b: GeometricPoint, sample: Sequence[GeometricPoint],
                eps: Fraction) -> Callable[[TreeHomeo], bool]:
    def accept(h):
        return all(h.target.distance(h.apply(x), b if x == b else a) < eps for x in sample)
    return accept


def _pab_cut(stage: TreeStage, b: GeometricPoint, sample: Sequence[GeometricPoint]) -> Fraction:
    """Distance of y from b's neighbour on b's edge, beyond every sample point on that edge."""
    base = GeometricPoint(stage.neighbors(b.u)[0])
    on_edge = [stage.distance(base, x) for x in sample if x != b and stage.is_between(base, x, b)]
    return (max(on_edge, default=Fraction(0)) + stage.length(base.u, b.u)) / 2


def _check_pab(stage: TreeStage, a, b, sample, eps):
    _require_wazewski(stage)
    a, b = stage.check_point(_point(a)), stage.check_point(_point(b))
    for z in (a, b):
        if not z.is_vertex or stage.degree(z.u) != 1:
            raise ValueError("Point {} is not an endpoint of the stage.".format(z))
    if a == b:
        raise ValueError("p_(a,b) needs a != b, got {} twice.".format(a))
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    return a, b, [stage.check_point(_point(x)) for x in sample], eps


def pab_approx(stage: TreeStage, a, b, sample: Iterable, eps) -> TreeHomeo:
    """Homeomorphism fixing a and b within eps of p_{a,b} on the sample.

    A point y on b's edge isolates b from the sample, a cut z on a's refined
    edge bounds a small side around a. The stage minus (y, b] is embedded
    into the small side keeping a, and [y, b] is stretched over [z, b].
    """
    logger = logging.getLogger(__name__)
    a, b, sample, eps = _check_pab(stage, a, b, sample, eps)
    chain = _ZoomChain(stage, a.u)
    h = chain.search(_pab_build(stage, a.u, b.u, _pab_cut(stage, b, sample)), _pab_accept(a, b, sample, eps))
    logger.debug("p_(a,b) approximant for a={} b={} on {} points at eps={}.".format(a, b, len(sample), eps))
    return h


# finite-image maps

class FiniteImageTreeMap:
    """Map constant on the components cut out by finitely many points.

    Cut points carry their own value, every component of the complement of
    the cut points is named by one anchor point inside it.
    """

    def __init__(self, stage: TreeStage, cuts: Iterable[Tuple], components: Iterable[Tuple]):
        self.stage = stage
        self.cuts: Tuple[Tuple[GeometricPoint, GeometricPoint], ...] = tuple(
            (stage.check_point(_point(c)), stage.check_point(_point(value))) for c, value in cuts)
        self.components: Tuple[Tuple[GeometricPoint, GeometricPoint], ...] = tuple(
            (stage.check_point(_point(anchor)), stage.check_point(_point(value))) for anchor, value in components)
        self._cut_values = dict(self.cuts)
        if len(self._cut_values) != len(self.cuts):
            raise ValueError("Cut points must be distinct.")
        expected = 1 + sum(stage.order_of(c) - 1 for c in self._cut_values)
        if len(self.components) != expected:
            raise ValueError("{} cut points leave {} components, got {} anchors.".format(
                len(self.cuts), expected, len(self.components)))
        anchors = [anchor for anchor, _ in self.components]
        if any(anchor in self._cut_values for anchor in anchors):
            raise ValueError("Anchors must avoid the cut points.")
        for i, x in enumerate(anchors):
            for y in anchors[i + 1:]:
                if not self._separated(x, y):
                    raise ValueError("Anchors {} and {} share a component.".format(x, y))

    @property
    def cut_points(self) -> List[GeometricPoint]:
        return sorted(self._cut_values, key=GeometricPoint.sort_key)

    def _separated(self, x: GeometricPoint, y: GeometricPoint) -> bool:
        return any(self.stage.is_between(x, c, y) for c in self._cut_values)

    def apply(self, x) -> GeometricPoint:
        x = self.stage.check_point(_point(x))
        if x in self._cut_values:
            return self._cut_values[x]
        for anchor, value in self.components:
            if not self._separated(x, anchor):
                return value
        raise ValueError("Point {} lies in no component.".format(x))

    __call__ = apply

    def values(self) -> List[GeometricPoint]:
        return sorted(set(self._cut_values.values()) | {value for _, value in self.components},
                      key=GeometricPoint.sort_key)

    def __repr__(self):
        return 'FiniteImageTreeMap({} cuts, {} components)'.format(len(self.cuts), len(self.components))


def collapse_map(stage: TreeStage, a, b=None) -> FiniteImageTreeMap:
    """p_a (constant a) or p_{a,b} (b on b, a elsewhere)."""
    a = stage.check_point(_point(a))
    if b is None:
        return FiniteImageTreeMap(stage, (), ((a, a),))
    b = stage.check_point(_point(b))
    if a == b:
        raise ValueError("p_(a,b) needs a != b, got {} twice.".format(a))
    if b.is_vertex:
        anchors = [stage.point_on_edge(b.u, w, stage.length(b.u, w) / 2) for w in stage.neighbors(b.u)]
    else:
        anchors = [GeometricPoint(b.u), GeometricPoint(b.v)]
    return FiniteImageTreeMap(stage, ((b, b),), [(anchor, a) for anchor in anchors])


def _directions(stage: TreeStage, x: GeometricPoint) -> List[GeometricPoint]:
    if x.is_vertex:
        return [GeometricPoint(w) for w in stage.neighbors(x.u)]
    return [GeometricPoint(x.u), GeometricPoint(x.v)]


def _nearby_point(f: FiniteImageTreeMap, x: GeometricPoint, toward: GeometricPoint) -> GeometricPoint:
    """Point next to x in the direction of ``toward``, closer to x than any other cut point."""
    stage = f.stage
    arc = stage.arc_between(x, toward)
    limit = arc.length
    for c in f.cut_points:
        if c != x and stage.is_between(x, c, toward):
            limit = min(limit, stage.distance(x, c))
    return stage.point_along(arc, limit / 2)


def tree_oscillation(f: FiniteImageTreeMap, x) -> Fraction:
    """Diameter of the values of the regions whose closure contains x."""
    stage = f.stage
    x = stage.check_point(_point(x))
    values = [f(x)] + [f(_nearby_point(f, x, w)) for w in _directions(stage, x)]
    return max(stage.distance(p, q) for p in values for q in values)


def tree_eps_derivative(stage: TreeStage, f: FiniteImageTreeMap, eps, within: Iterable = None) -> List[GeometricPoint]:
    """Points of eps-oscillation, relative to a finite set when ``within`` is given."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    if f.stage is not stage:
        raise ValueError("Map lives on another stage.")
    if within is None:
        return [c for c in f.cut_points if tree_oscillation(f, c) >= eps]
    within = [stage.check_point(_point(x)) for x in within]
    return [x for x in within if relative_oscillation(f, x, within) >= eps]


def relative_oscillation(f: FiniteImageTreeMap, x, within: Iterable) -> Fraction:
    """Oscillation at x of f restricted to the finite set ``within``.

    Balls smaller than the least distance from x to the other points of the
    set meet it in x alone, so only f(x) enters the diameter.
    """
    stage = f.stage
    x = stage.check_point(_point(x))
    within = [stage.check_point(_point(y)) for y in within]
    if x not in within:
        raise ValueError("Point {} is not in the set.".format(x))
    others = [stage.distance(x, y) for y in within if y != x]
    radius = min(others) / 2 if others else stage.diameter()
    values = [f(y) for y in within if stage.distance(x, y) < radius]
    return max(stage.distance(p, q) for p in values for q in values)


def direction_witness(f: FiniteImageTreeMap, x, cover: ConvexCover, eps) -> Optional[GeometricPoint]:
    """A boundary point y of a cover region at x such that f oscillates by eps/2 towards y."""
    stage = f.stage
    x = stage.check_point(_point(x))
    eps = Fraction(eps)
    fx = f(x)
    for region, boundary in zip(cover.regions, cover.boundaries):
        if not region.contains(x):
            continue
        for y in boundary:
            if y != x and stage.distance(f(_nearby_point(f, x, y)), fx) >= eps / 2:
                return y
    return None


def verify_beta_le_2(stage: TreeStage, maps: Iterable, eps_grid: Iterable = DEFAULT_EPS_GRID) -> Report:
    """Audit finiteness of the first and emptiness of the second eps-derivative."""
    logger = logging.getLogger(__name__)
    report = Report('dynamics')
    covers: Dict[Fraction, ConvexCover] = {}
    eps_grid = [Fraction(eps) for eps in eps_grid]
    for i, f in enumerate(maps):
        if not isinstance(f, FiniteImageTreeMap):
            raise ValueError("Only finite-image tree maps are supported, got {}.".format(type(f).__name__))
        for eps in eps_grid:
            if eps not in covers:
                covers[eps] = build_convex_cover(stage, eps)
            cover = covers[eps]
            first = tree_eps_derivative(stage, f, eps)
            second = tree_eps_derivative(stage, f, eps, within=first)
            finite = set(first) <= set(f.cut_points)
            bound = cover.boundary_count
            directions = [direction_witness(f, x, cover, eps) for x in first]
            passed = finite and not second and len(first) <= bound and None not in directions
            report.add('beta-le-2/map-{}/eps-{}'.format(i, eps), passed,
                       'derivative={} second={} boundary={} beta={} direction={}'.format(
                           len(first), len(second), bound, 2 if first else 1,
                           ','.join(str(y) for y in directions) or 'none'))
    logger.info("beta <= 2 audit over {} eps values: {} failed checks.".format(len(eps_grid), len(report.failed)))
    return report


def betweenness_preserved(f: Union[TreeHomeo, FiniteImageTreeMap], trials: int = 1000,
                          seed: int = 0) -> Tuple[bool, Optional[Tuple[GeometricPoint, ...]]]:
    """Check f(z) in [f(x), f(y)] for z in [x, y] on sampled triples.

    Returns (True, None) or (False, (x, z, y)) for the first violation.
    """
    rng = random.Random(seed)
    triples = []
    if isinstance(f, TreeHomeo):
        stage, target = f.source, f.target
    else:
        stage = target = f.stage
        for c in f.cut_points:
            directions = _directions(stage, c)
            if len(directions) >= 2:
                triples.append((_nearby_point(f, c, directions[0]), c, _nearby_point(f, c, directions[1])))
    for _ in range(trials):
        x, y = random_point(stage, rng), random_point(stage, rng)
        arc = stage.arc_between(x, y)
        z = stage.point_along(arc, arc.length * Fraction(rng.randint(0, 16), 16))
        triples.append((x, z, y))
    for x, z, y in triples:
        if not target.is_between(f(x), f(z), f(y)):
            return False, (x, z, y)
    return True, None


# back and forth

def _attachment(stage: TreeStage, v: int, inside: Set[int], reference: int) -> int:
    """First vertex of a connected vertex set on the path from v."""
    for w in stage.vertex_path(v, reference):
        if w in inside:
            return w
    return reference


class PartialHomeo:
    """Growing union of matched arcs [r, e] -> [h(r), f], with one extension to the whole stage.

    Every vertex of a matched arc stays pinned to its image, so later steps
    agree with earlier ones. Each step keeps a type-preserving embedding of
    the whole source stage that extends all pins; with ``grow`` the target
    may be refined at bare marks on the way.
    """

    def __init__(self, source: TreeStage, target: TreeStage, grow: bool = False, fixed: Mapping[int, int] = None):
        self.source = source
        self.target = target
        self.grow = grow
        self.fixed: Dict[int, int] = dict(fixed or {})
        self.pins: Dict[int, int] = {}
        self.matches: List[Tuple[GeometricPoint, GeometricPoint]] = []
        self.arcs: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = []
        self.vertex_map: Dict[int, int] = {}
        self._domain: Set[int] = set()
        self._image: Set[int] = set()

    def _extension(self, extra: Mapping[int, int]) -> Optional[Tuple[TreeStage, Dict[int, int]]]:
        pins = dict(self.fixed)
        pins.update(self.pins)
        pins.update(extra)
        try:
            return embed_stage(self.source, self.target, pins, grow=self.grow, rounds=self.source.index + 4)
        except ValueError:
            return None

    def _commit(self, r: int, e: int, extension: Tuple[TreeStage, Dict[int, int]]):
        self.target, self.vertex_map = extension
        path = self.source.vertex_path(r, e)
        image = self.target.vertex_path(self.vertex_map[r], self.vertex_map[e])
        self.pins.update((v, self.vertex_map[v]) for v in path)
        self.arcs.append((tuple(path), tuple(image)))
        self._domain.update(path)
        self._image.update(image)
        self.matches.append((GeometricPoint(e), GeometricPoint(self.vertex_map[e])))

    def start(self, e1: int, f1: int, e2: int, f2: int):
        extension = self._extension({e1: f1, e2: f2})
        if extension is None:
            raise ResolutionError("Arcs [{}, {}] and [{}, {}] admit no type-preserving extension.".format(
                e1, e2, f1, f2))
        self.target, self.vertex_map = extension
        self.pins[e1] = f1
        self._commit(e1, e2, extension)
        self.matches.insert(0, (GeometricPoint(e1), GeometricPoint(f1)))

    def in_domain(self, x: GeometricPoint) -> bool:
        if x.is_vertex:
            return x.u in self._domain
        return any(x.u in path and x.v in path and abs(path.index(x.u) - path.index(x.v)) == 1
                   for path, _ in self.arcs)

    def in_image(self, y: GeometricPoint) -> bool:
        if y.is_vertex:
            return y.u in self._image
        return any(y.u in path and y.v in path and abs(path.index(y.u) - path.index(y.v)) == 1
                   for _, path in self.arcs)

    def apply(self, x) -> GeometricPoint:
        x = _point(x)
        if not self.in_domain(x):
            raise ValueError("Point {} lies outside the domain.".format(x))
        return self.homeo().apply(x)

    @property
    def anchor(self) -> Tuple[int, int]:
        """First matched pair of vertices."""
        return self.matches[0][0].u, self.matches[0][1].u

    def _match_endpoint(self, e: int, candidates: Iterable[int], forward: bool) -> bool:
        for c in candidates:
            s_end, t_end = (e, c) if forward else (c, e)
            if self.source.vertex_type(s_end) != self.target.vertex_type(t_end):
                continue
            extension = self._extension({s_end: t_end})
            if extension is None:
                continue
            r = _attachment(self.source, s_end, self._domain, self.anchor[0])
            self._commit(r, s_end, extension)
            return True
        return False

    def extend(self, E: Sequence[GeometricPoint], F: Sequence[GeometricPoint], forward: bool = True) -> bool:
        """Match the least unmatched endpoint of E (forward) or F (backward).

        Returns False when every endpoint on that side is matched already.
        """
        logger = logging.getLogger(__name__)
        source, target = self.source, self.target
        s_anchor, t_anchor = self.anchor
        if forward:
            pending = [e.u for e in E if e.u not in self._domain]
            if not pending:
                return False
            e = pending[0]
            s = self.pins[_attachment(source, e, self._domain, s_anchor)]
            taken = set(self.pins.values())
            candidates = [f.u for f in F if f.u not in taken and _attachment(target, f.u, self._image, t_anchor) == s]
            if not self._match_endpoint(e, candidates, True):
                raise ResolutionError("No endpoint of F attaches at {} with a type-preserving extension.".format(s))
        else:
            pending = [f.u for f in F if f.u not in self._image]
            if not pending:
                return False
            f = pending[0]
            s = _attachment(target, f, self._image, t_anchor)
            preimages = [v for v, w in self.pins.items() if w == s]
            if not preimages:
                raise ResolutionError("Attachment point {} is not the image of a vertex.".format(s))
            r = preimages[0]
            candidates = [e.u for e in E if e.u not in self._domain
                          and _attachment(source, e.u, self._domain, s_anchor) == r]
            if not self._match_endpoint(f, candidates, False):
                raise ResolutionError("No endpoint of E attaches at {} with a type-preserving extension.".format(r))
        logger.debug("Matched {} -> {}.".format(*self.matches[-1]))
        return True

    def homeo(self, breaks_by_edge: Mapping[Edge, Iterable] = None) -> TreeHomeo:
        """The current extension to the whole stage."""
        return TreeHomeo(self.source, self.target, self.vertex_map, breaks_by_edge)


def back_and_forth(stage: TreeStage, E: Iterable, F: Iterable, pins, steps: int, target: TreeStage = None,
                   grow: bool = False, fixed: Mapping[int, int] = None) -> PartialHomeo:
    """Partial homeomorphism sending E into F, started on the arc between two pinned pairs.

    Odd steps match the least unmatched endpoint of E, even steps the least
    unmatched endpoint of F. ``target`` defaults to the stage itself.
    """
    target = stage if target is None else target
    E = [stage.check_point(_point(e)) for e in E]
    F = [target.check_point(_point(f)) for f in F]
    pairs = [(stage.check_point(_point(e)), target.check_point(_point(f))) for e, f in pins]
    if len(pairs) != 2:
        raise ValueError("Need two pinned pairs, got {}.".format(len(pairs)))
    (e1, f1), (e2, f2) = pairs
    for e, f in pairs:
        if not e.is_vertex or not f.is_vertex:
            raise ValueError("Pins {} -> {} must be vertices.".format(e, f))
        if stage.vertex_type(e.u) != target.vertex_type(f.u):
            raise ValueError("Pinned vertices {} and {} have different types.".format(e, f))
    if e1 == e2 or f1 == f2:
        raise ValueError("Pins must be two distinct vertices on each side.")
    partial = PartialHomeo(stage, target, grow, fixed)
    partial.start(e1.u, f1.u, e2.u, f2.u)
    for step in range(1, steps + 1):
        partial.extend(E, F, forward=step % 2 == 1)
    return partial


# two-colour witnesses

def _require_tip(stage: TreeStage, z: GeometricPoint):
    if stage.mode != TWOCOLOR:
        raise ValueError("Operation needs a two-colour stage, got mode '{}'.".format(stage.mode))
    if not z.is_vertex or stage.degree(z.u) != 1:
        raise ValueError("Point {} is not an arm tip.".format(z))


def _nearest_tip(stage: TreeStage, x: GeometricPoint, frm: int, toward: int) -> int:
    tips = [v for v in stage.leaves() if stage.in_branch(frm, toward, v)]
    return min(tips, key=lambda v: (stage.distance(x, GeometricPoint(v)), v))


def _arm_at(stage: TreeStage, y: GeometricPoint) -> Arm:
    if y.is_vertex:
        return stage.arms[0] if y.u == stage.root else stage.arm_of(y.u)
    u, v = y.edge
    for w, other in ((u, v), (v, u)):
        if w != stage.root:
            arm = stage.arm_of(w)
            if other in arm.vertices or other == arm.root:
                return arm
    raise ValueError("Point {} lies on no arm.".format(y))


def _best_red(stage: TreeStage, marks: Iterable[int], y: GeometricPoint) -> Optional[Tuple[Fraction, int]]:
    """Red mark minimizing its distance from y plus the length of its attached arms."""
    scored = [(stage.distance(y, GeometricPoint(x)) + attached_length(stage, x), x)
              for x in marks if stage.color(x) == Color.RED]
    return min(scored, default=None)


def _better(best, other):
    if other is None:
        return best
    return other if best is None or other < best else best


def _small_arc_near(stage: TreeStage, y: GeometricPoint, eps: Fraction, blocks: int) -> Tuple[TreeStage, int, int]:
    """Refinement with two tips f1, f2 whose arc runs through a red mark close to y.

    Marks are added towards the tip while y lies past the last one, then the
    search descends into arms attached near y until the mark's distance from
    y plus its arm length drops below eps. Both arms attached at the chosen
    mark are extended by ``blocks`` further blocks.
    """
    work, arm = stage, _arm_at(stage, y)
    here = lift_point(stage, work, y)
    best = _best_red(work, arm.marks, here)
    for _ in range(MAX_EXTRA_BLOCKS):
        if best is not None and best[0] < eps:
            break
        last = GeometricPoint(arm.marks[-1] if arm.marks else arm.root)
        if here == last or not work.is_between(last, here, GeometricPoint(arm.tip)):
            break
        work = extend_arm(work, arm.tip, arm_blocks(work, arm) + 1)
        arm = work.arm_of(arm.tip)
        here = lift_point(stage, work, y)
        best = _better(best, _best_red(work, arm.marks, here))
    for _ in range(MAX_DESCENT):
        if (best is not None and best[0] < eps) or not arm.marks:
            break
        mark = min(arm.marks, key=lambda x: (work.distance(here, GeometricPoint(x)), x))
        if work.is_bare(mark):
            work = refine_twocolor(work, [mark])
        arms = work.attached_arms(mark)
        found = [(_best_red(work, a.marks, here), a) for a in arms]
        found = [(score, a) for score, a in found if score is not None]
        if not found:
            break
        score, arm = min(found, key=lambda item: item[0])
        best = _better(best, score)
    if best is None or not best[0] < eps:
        raise ResolutionError("No red mark within reach of {} at eps={}.".format(y, eps))
    mark = best[1]
    if work.is_bare(mark):
        work = refine_twocolor(work, [mark])
    tips = []
    for attached in work.attached_arms(mark)[:2]:
        work = extend_arm(work, attached.tip, arm_blocks(work, attached) + blocks)
        tips.append(attached.tip)
    return work, tips[0], tips[1]


def minimal_witness(stage: TreeStage, x, y, eps) -> TreeHomeo:
    """Homeomorphism moving the non-endpoint x within eps of y.

    The arc between the nearest tips of two branches at x is matched onto a
    short arc through a red mark near y; the rest of the stage follows by a
    type-preserving embedding, growing attached arms where needed.
    """
    logger = logging.getLogger(__name__)
    if stage.mode != TWOCOLOR:
        raise ValueError("Minimality witnesses need a two-colour stage, got mode '{}'.".format(stage.mode))
    x, y = stage.check_point(_point(x)), stage.check_point(_point(y))
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    if x.is_vertex and stage.degree(x.u) == 1:
        raise ValueError("Point {} is an endpoint.".format(x))
    if stage.distance(x, y) < eps:
        return identity_homeo(stage)
    if x.is_vertex:
        first, second = stage.neighbors(x.u)[:2]
        e1, e2 = _nearest_tip(stage, x, x.u, first), _nearest_tip(stage, x, x.u, second)
    else:
        e1, e2 = _nearest_tip(stage, x, x.v, x.u), _nearest_tip(stage, x, x.u, x.v)
    path = stage.vertex_path(e1, e2)
    work, f1, f2 = _small_arc_near(stage, y, eps, 2 * len(path) + 2)
    h = back_and_forth(stage, [e1, e2], [f1, f2], ((e1, f1), (e2, f2)), 0, target=work, grow=True).homeo()
    image, goal = h.apply(x), lift_point(stage, h.target, y)
    on_arc = h.target.is_between(GeometricPoint(f1), image, GeometricPoint(f2))
    if not (h.target.distance(image, goal) < eps and on_arc):
        raise ResolutionError("Image of {} misses {} by eps={}.".format(x, y, eps))
    logger.debug("Minimality witness for {} -> {} through tips {}, {}.".format(x, y, f1, f2))
    return h


def _pab_block(stage: TreeStage, tip: int, n: int) -> int:
    """First block from blocks+2(n-1) on that is red for even n and green for odd n."""
    color = Color.RED if n % 2 == 0 else Color.GREEN
    kind = stage.arm_of(tip).kind
    k = stage.params['blocks'] + 2 * (n - 1)
    while block_color(kind, k) != color:
        k += 1
    return k


def _first_mark(stage: TreeStage, tip: int, block: int) -> int:
    return next(x for x in stage.arm_of(tip).marks if block_of(stage.label(x)) == block)


def twocolor_pab_pairs(stage: TreeStage, a, b, N: int) -> Tuple[TreeStage, List[Tuple[GeometricPoint, GeometricPoint]]]:
    """(a_n, b_n) for n = 1..N: red marks for even n, green for odd n, deeper and deeper on the arms of a and b.

    The marks live in the returned host stage, whose two arms are extended
    far enough to carry them.
    """
    a, b = _point(a), _point(b)
    for z in (a, b):
        _require_tip(stage, z)
    if a == b:
        raise ValueError("Need two distinct endpoints.")
    if N < 1:
        raise ValueError("Need N >= 1, got {}.".format(N))
    host = stage
    for z in (a, b):
        host = extend_arm(host, z.u, _pab_block(stage, z.u, N) + 1)
    pairs = [tuple(GeometricPoint(_first_mark(host, z.u, _pab_block(stage, z.u, n))) for z in (a, b))
             for n in range(1, N + 1)]
    return host, pairs


def _room_for(host: TreeStage, a: int, a_n: int, b_n: int) -> int:
    """Blocks the arm of a needs so that the marks between b_n and a fit beyond a_n in order."""
    m = host.params['marks_per_arc']
    kind = host.arm_of(a).kind
    k, free = block_of(host.label(a_n)), m - 1
    for v in host.vertex_path(b_n, a)[1:-1]:
        while free == 0 or block_color(kind, k) != host.color(v):
            k, free = k + 1, m
        free -= 1
    return k + 3


def twocolor_pab_sequence(stage: TreeStage, a, b, N: int) -> List[TreeHomeo]:
    """h_n fixing a and b with h_n(b_n) = a_n, converging to p_{a,b}.

    Every h_n is a type-preserving embedding of the host stage of
    :func:`twocolor_pab_pairs` into a refinement of it.
    """
    logger = logging.getLogger(__name__)
    a, b = _point(a), _point(b)
    host, pairs = twocolor_pab_pairs(stage, a, b, N)
    sequence = []
    for n, (a_n, b_n) in enumerate(pairs, start=1):
        target = extend_arm(host, a.u, _room_for(host, a.u, a_n.u, b_n.u))
        pins = {a.u: a.u, b.u: b.u, b_n.u: a_n.u}
        target, mapping = embed_stage(host, target, pins, root=(b_n.u, a_n.u), grow=True, rounds=host.index + 4)
        sequence.append(TreeHomeo(host, target, mapping))
        logger.debug("h_{} sends {} to {} inside {} vertices.".format(n, b_n, a_n, len(target.vertices)))
    return sequence


def twocolor_pab_errors(stage: TreeStage, a, b, N: int) -> List[Tuple[Fraction, Fraction]]:
    """Per n, the largest distance from a of an image h_n(x) and its bound.

    The sample holds the vertices and edge midpoints of the stage away from
    b. Images land beyond a_n on the arm of a or inside arms attached there,
    so they stay within d(a_n, a) plus twice the arm length at a_n.
    """
    a, b = _point(a), _point(b)
    host, pairs = twocolor_pab_pairs(stage, a, b, N)
    sample = [GeometricPoint(v) for v in stage.vertices if v != b.u]
    sample += [stage.point_on_edge(u, v, length / 2) for (u, v), length in stage.edges.items() if b.u not in (u, v)]
    sample = [lift_point(stage, host, x) for x in sample]
    result = []
    for h, (a_n, _) in zip(twocolor_pab_sequence(stage, a, b, N), pairs):
        error = max(h.target.distance(h.apply(x), a) for x in sample)
        bound = host.distance(a_n, a) + 2 * attached_length(host, a_n.u)
        result.append((error, bound))
    return result


# Ellis hypothesis family

@dataclass
class HypothesisFamily:
    """Approximants h_i of p_{a,b_i} for one endpoint a and many b_i."""
    a: GeometricPoint
    bs: List[GeometricPoint]
    homeos: List[TreeHomeo]
    eps: Fraction

    def near_a(self, i: int, x: GeometricPoint) -> bool:
        h = self.homeos[i]
        return h.target.distance(h.apply(x), self.a) < self.eps

    def distinguishable(self) -> bool:
        """h_i keeps b_i away from a while every other h_j sends b_i near a."""
        for i, b in enumerate(self.bs):
            if self.near_a(i, b):
                return False
            if not all(self.near_a(j, b) for j in range(len(self.bs)) if j != i):
                return False
        return True


def ellis_hypothesis_family(stage: TreeStage = None, a=None, count: int = 100,
                            eps=Fraction(1, 128)) -> HypothesisFamily:
    """p_{a,b} approximants for ``count`` endpoints b, on a star of order count+1 by default."""
    logger = logging.getLogger(__name__)
    if stage is None:
        stage = build_wazewski_stage(['w'], 0, 1, omega_degree=count + 1)
    leaves = stage.leaves()
    a = stage.check_point(_point(leaves[0] if a is None else a))
    bs = [GeometricPoint(v) for v in leaves if GeometricPoint(v) != a][:count]
    if len(bs) < count:
        raise ResolutionError("Stage offers {} endpoints besides {}, need {}.".format(len(bs), a, count))
    eps = Fraction(eps)
    for b in bs:
        _check_pab(stage, a, b, (), eps)
    chain = _ZoomChain(stage, a.u)
    homeos = [chain.search(_pab_build(stage, a.u, b.u, _pab_cut(stage, b, bs)), _pab_accept(a, b, bs, eps))
              for b in bs]
    logger.info("Hypothesis family of {} approximants at {} in {} zooms.".format(
        len(homeos), a, chain.depth))
    return HypothesisFamily(a, bs, homeos, eps)


# stabilizer orbits

@dataclass
class OrbitProbe:
    x: GeometricPoint
    switch: GeometricPoint
    orbit: List[GeometricPoint]
    side: str
    invariant: bool
    separation: Fraction
    bound: Fraction

    @property
    def certified(self) -> bool:
        return self.invariant and (self.side != 'green' or self.separation >= self.bound)


def stabilizer_generators(stage: TreeStage, e: EndpointAddress, f: EndpointAddress,
                          count: int = 5) -> List[TreeHomeo]:
    """Automorphisms fixing the arc between the last marks of two threads and everything attached at its ends.

    Generator j matches the remaining tips in rotated order by two
    back-and-forth steps and slides the interior of every arc edge by
    (-1)^j/(2(j+3)) of its length.
    """
    start, end = e.last, f.last
    if start == end:
        raise ValueError("Threads {} and {} end at the same mark.".format(e, f))
    fixed = {v: v for v in stage.descendants(start) | stage.descendants(end)}
    path = stage.vertex_path(start, end)
    leaves = [GeometricPoint(v) for v in stage.leaves()]
    generators = []
    for j in range(count):
        shift = Fraction((-1) ** j, 2 * (j + 3))
        breaks = {}
        for p, q in zip(path, path[1:]):
            length = stage.length(p, q)
            breaks[edge_key(p, q)] = [(0, 0), (length / 2, length * (Fraction(1, 2) + shift)), (length, length)]
        rotated = leaves[j % len(leaves):] + leaves[:j % len(leaves)]
        partial = back_and_forth(stage, leaves, rotated, ((start, start), (end, end)), 2, fixed=fixed)
        generators.append(partial.homeo(breaks))
    return generators


def stab_orbit_probe(stage: TreeStage, e: EndpointAddress, f: EndpointAddress, x,
                     generators: int = 5, steps: int = 4) -> OrbitProbe:
    """Orbit of x on [e, f] under stabilizer elements and their inverses."""
    logger = logging.getLogger(__name__)
    if classify_endpoint(stage, e) != EndpointKind.GREEN_SO_FAR:
        raise ValueError("Thread {} is not a green endpoint.".format(e))
    if classify_endpoint(stage, f) != EndpointKind.RED_SO_FAR:
        raise ValueError("Thread {} is not a red endpoint.".format(f))
    start, end = GeometricPoint(e.last), GeometricPoint(f.last)
    arc = stage.arc_between(start, end)
    colored = [p for p in arc.points if p.is_vertex and stage.color(p.u) != Color.NONE]
    colors = [stage.color(p.u) for p in colored]
    if sum(1 for c, d in zip(colors, colors[1:]) if c != d) != 1:
        raise ValueError("Arc [{}, {}] does not alternate exactly once.".format(start, end))
    switch = next(p for p in colored if stage.color(p.u) == Color.RED)
    x = stage.check_point(_point(x))
    if not stage.is_between(start, x, end):
        raise ValueError("Point {} is not on [{}, {}].".format(x, start, end))

    def side(p):
        dp, ds = stage.distance(start, p), stage.distance(start, switch)
        return 'green' if dp < ds else ('switch' if dp == ds else 'red')

    maps = stabilizer_generators(stage, e, f, generators)
    maps += [g.inverse() for g in maps]
    orbit = {x}
    frontier = [x]
    for _ in range(steps):
        found = []
        for p in frontier:
            for g in maps:
                q = g.apply(p)
                if q not in orbit:
                    orbit.add(q)
                    found.append(q)
        frontier = found
    points = sorted(orbit, key=GeometricPoint.sort_key)
    result = OrbitProbe(x, switch, points, side(x), all(side(p) == side(x) for p in points),
                        min(stage.distance(p, end) for p in points), stage.distance(switch, end))
    logger.debug("Orbit of {} under {} generators: {} points, side {}.".format(
        x, generators, len(points), result.side))
    return result


# suite

def _is_stage_map(h: TreeHomeo) -> bool:
    return h.extends_source() and h.is_embedding() and h.is_type_preserving()


def _non_endpoint(stage: TreeStage, rng: random.Random) -> GeometricPoint:
    while True:
        x = random_point(stage, rng)
        if not x.is_vertex or stage.degree(x.u) > 1:
            return x


def verify_dynamics(seed: int = 0, trials: int = 20, eps_grid: Iterable = DEFAULT_EPS_GRID) -> Report:
    """Witness constructions and audits on Wazewski and two-colour stages.

    The beta audit runs 2*trials collapse maps on W_{3} at depth 5 and on
    W_{3,4} of width 2 at depth 3; every witness operation runs about
    ``trials`` random instances on small stages.
    """
    logger = logging.getLogger(__name__)
    rng = random.Random(seed)
    report = Report('dynamics')
    eps_grid = [Fraction(eps) for eps in eps_grid]

    audits, failed = [], 0
    for stage in (build_wazewski_stage([3], 5, 1), build_wazewski_stage([3, 4], 3, 2)):
        leaves = [GeometricPoint(v) for v in stage.leaves()]
        maps = [collapse_map(stage, *rng.sample(leaves, 2)) for _ in range(2 * trials)]
        audit = verify_beta_le_2(stage, maps + [collapse_map(stage, leaves[0])], eps_grid)
        failed += len(audit.failed)
        audits.append('W{}:maps={},failed={}'.format(','.join(stage.params['orders']), len(maps) + 1,
                                                      len(audit.failed)))
    report.add('beta-le-2', failed == 0, ' '.join(audits))
    small = build_wazewski_stage([3], 2, 1)
    leaves = [GeometricPoint(v) for v in small.leaves()]
    interior = small.point_on_edge(*sorted(small.edges)[0], small.edges[sorted(small.edges)[0]] / 2)
    leaf_ok, _ = betweenness_preserved(collapse_map(small, leaves[0], leaves[1]), trials, seed)
    inner_ok, witness = betweenness_preserved(collapse_map(small, leaves[0], interior), trials, seed)
    report.add('betweenness', leaf_ok and not inner_ok, 'leaf={} interior={} witness={}'.format(
        'true' if leaf_ok else 'false', 'true' if inner_ok else 'false',
        '' if witness is None else ','.join(str(p) for p in witness)))

    stages = (build_wazewski_stage([3], 1, 1), build_wazewski_stage([3, 4], 1, 2))
    resolved = 0
    for i in range(trials):
        stage = stages[i % 2]
        x, y = random_point(stage, rng), random_point(stage, rng)
        eps = Fraction(1, 8)
        if x == y:
            resolved += 1
            continue
        h = proximal_witness(stage, x, y, eps)
        if h.target.distance(h.apply(x), h.apply(y)) < eps and _is_stage_map(h):
            resolved += 1
    report.add('proximal', resolved == trials, 'eps=1/8 resolved={}/{}'.format(resolved, trials))

    resolved = 0
    worst = Fraction(0)
    for i in range(trials):
        stage = stages[i % 2]
        leaves = [GeometricPoint(v) for v in stage.leaves()]
        a, b = rng.sample(leaves, 2)
        eps = Fraction(1, 2 ** rng.randint(2, 5))
        sample = leaves + [random_point(stage, rng) for _ in range(8)]
        h = pab_approx(stage, a, b, sample, eps)
        error = max(h.target.distance(h.apply(x), a) for x in sample if x != b)
        worst = max(worst, error / eps)
        if error < eps and h.apply(b) == b and h.apply(a) == a and _is_stage_map(h):
            resolved += 1
    report.add('pab-approx', resolved == trials, 'resolved={}/{} worst-ratio={}'.format(resolved, trials, worst))

    sample = [GeometricPoint(v) for v in small.vertices] + [random_point(small, rng) for _ in range(trials)]
    sequence = rigidity_sequence(small, 6, sample)
    _, c, _ = rigidity_points(small, 1)
    moves = [max(g.displacement(x) for x in sample + [c]) for g in sequence]
    bounded = all(0 < m <= Fraction(1, 2 ** n) for n, m in enumerate(moves, start=1))
    report.add('rigidity', bounded and moves == sorted(moves, reverse=True),
               'displacements={}'.format(','.join(str(m) for m in moves)))

    twocolor = build_twocolor_stage(0, 1)
    tips = [GeometricPoint(v) for v in twocolor.leaves()]
    a, b = tips[0], tips[-1]
    hs = twocolor_pab_sequence(twocolor, a, b, 8)
    _, pairs = twocolor_pab_pairs(twocolor, a, b, 8)
    fixed = all(h.apply(a) == a and h.apply(b) == b for h in hs)
    hits = all(h.apply(b_n) == a_n and _is_stage_map(h) for h, (a_n, b_n) in zip(hs, pairs))
    errors = twocolor_pab_errors(twocolor, a, b, 8)
    converging = all(error <= bound for error, bound in errors) and errors[-1][0] < errors[0][0]
    report.add('twocolor-pab', fixed and hits and converging, 'a={} b={} n=8 errors={}'.format(
        a, b, ','.join(str(error) for error, _ in errors)))

    resolved = 0
    vertices = sorted(twocolor.vertices)
    for _ in range(trials):
        x, y = _non_endpoint(twocolor, rng), GeometricPoint(rng.choice(vertices))
        eps = Fraction(1, 4)
        h = minimal_witness(twocolor, x, y, eps)
        if h.target.distance(h.apply(x), lift_point(twocolor, h.target, y)) < eps and _is_stage_map(h):
            resolved += 1
    report.add('minimal', resolved == trials, 'eps=1/4 resolved={}/{}'.format(resolved, trials))

    branching = build_twocolor_stage(1, 2)
    green, red = type_witness(branching, 'green', '0'), type_witness(branching, 'red', '0')
    arc = branching.arc_between(GeometricPoint(green.last), GeometricPoint(red.last))
    orbit_result = stab_orbit_probe(branching, green, red, branching.point_along(arc, arc.length / 32))
    report.add('stab-orbit', orbit_result.certified, 'orbit={} side={} separation={} bound={}'.format(
        len(orbit_result.orbit), orbit_result.side, orbit_result.separation, orbit_result.bound))
    logger.info("Dynamics suite: {} failed checks.".format(len(report.failed)))
    return report
