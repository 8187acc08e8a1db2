# coding: utf-8
#
# embedding.py
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
"""Type-preserving embeddings between tree stages.

An embedding sends every source vertex to a target vertex of the same
type such that the target paths between images of adjacent vertices are
pairwise edge-disjoint, meet only at common ends and avoid all other
images. Mapping every source edge onto its target path then gives a
homeomorphism of the source stage onto a subtree of the target.

The search places a vertex, then matches its remaining neighbours to the
remaining directions at its image (augmenting paths), each neighbour at
the nearest vertex of matching type in its direction that can host its
whole branch. Placements are memoized per directed pair of source and
target edges, so failing subtrees are never searched twice.
"""

import collections
import logging

from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple

from tamedynfw.core.dendrite import TWOCOLOR, ResolutionError, TreeStage, refine_twocolor

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

DEFAULT_BUDGET = 200000
DEFAULT_ROUNDS = 8

VIRTUAL = 'virtual'

Spot = Tuple[Optional[int], int, bool]


class StageEmbedder:
    """Memoized search for an embedding of ``source`` into ``target``.

    ``pins`` fix the images of some source vertices, every other vertex
    avoids the pinned targets. With ``grow``, a bare mark of a two-colour
    target also offers the directions of its future arms; the marks whose
    future directions the solution relies on end up in ``expansions``.
    """

    def __init__(self, source: TreeStage, target: TreeStage, pins: Mapping[int, int] = None,
                 grow: bool = False, budget: int = DEFAULT_BUDGET):
        self.source = source
        self.target = target
        self.pins: Dict[int, int] = {int(s): int(t) for s, t in (pins or {}).items()}
        for s, t in self.pins.items():
            if s not in source.vertices or t not in target.vertices:
                raise ValueError("Pin {} -> {} names an unknown vertex.".format(s, t))
            if source.vertex_type(s) != target.vertex_type(t):
                raise ValueError("Pinned vertices {} and {} have different types {} and {}.".format(
                    s, t, source.vertex_type(s), target.vertex_type(t)))
        self.reserved: Set[int] = set(self.pins.values())
        if len(self.reserved) != len(self.pins):
            raise ValueError("Pins must have distinct targets.")
        self.grow = grow and target.mode == TWOCOLOR
        self.budget = budget
        self.expansions: Set[int] = set()
        self._calls = 0
        self._fits: Dict[tuple, Optional[dict]] = {}
        self._places: Dict[tuple, Optional[Spot]] = {}
        self._inside: Dict[Tuple[int, int], List[int]] = {}

    def _pins_inside(self, s_from: int, s_w: int) -> List[int]:
        key = (s_from, s_w)
        if key not in self._inside:
            self._inside[key] = [p for p in self.pins if self.source.in_branch(s_from, s_w, p)]
        return self._inside[key]

    @staticmethod
    def _dominates(have: collections.Counter, want: collections.Counter) -> bool:
        return all(have.get(k, 0) >= n for k, n in want.items() if k != 'bare' and n > 0)

    def _candidates(self, s_from: int, s_w: int, t_from: int, t_n: int, virtual: bool) -> Iterator[Tuple[int, int]]:
        """(predecessor, vertex) pairs in the branch at t_from through t_n, nearest first."""
        source, target = self.source, self.target
        if s_w in self.pins:
            goal = self.pins[s_w]
            if target.in_branch(t_from, t_n, goal):
                yield target.vertex_path(goal, t_from)[1], goal
            return
        need = [self.pins[p] for p in self._pins_inside(s_from, s_w)]
        want = source.branch_types(s_from, s_w)
        kind = source.vertex_type(s_w)
        queue = collections.deque([(t_from, t_n)])
        while queue:
            pu, u = queue.popleft()
            if not all(target.in_branch(pu, u, g) for g in need):
                continue
            have = target.branch_types(pu, u)
            if not self._dominates(have, want) and not (virtual and have['bare'] > 0):
                continue
            if u not in self.reserved and target.vertex_type(u) == kind:
                yield pu, u
            queue.extend((u, w) for w in target.neighbors(u) if w != pu)

    def _place(self, s_from: int, s_w: int, t_from: int, t_n: int, virtual: bool) -> Optional[Spot]:
        key = (s_from, s_w, t_from, t_n, virtual)
        if key in self._places:
            return self._places[key]
        spot = None
        for pred, t_w in self._candidates(s_from, s_w, t_from, t_n, False):
            if self._fit(s_from, s_w, pred, t_w, False):
                spot = (pred, t_w, False)
                break
        if spot is None and virtual:
            for pred, t_w in self._candidates(s_from, s_w, t_from, t_n, True):
                if self._fit(s_from, s_w, pred, t_w, True):
                    spot = (pred, t_w, True)
                    break
        self._places[key] = spot
        return spot

    def _fit(self, s_from: Optional[int], s_v: int, t_from: Optional[int], t_v: int, virtual: bool) -> bool:
        key = (s_from, s_v, t_from, t_v, virtual)
        if key not in self._fits:
            self._calls += 1
            if self._calls > self.budget:
                raise ResolutionError("Embedding search exceeded {} placements.".format(self.budget))
            self._fits[key] = self._match(s_from, s_v, t_from, t_v, virtual)
        return self._fits[key] is not None

    def _match(self, s_from: Optional[int], s_v: int, t_from: Optional[int], t_v: int,
               virtual: bool) -> Optional[dict]:
        source, target = self.source, self.target
        if source.vertex_type(s_v) != target.vertex_type(t_v):
            return None
        if self.pins.get(s_v, t_v) != t_v or (s_v not in self.pins and t_v in self.reserved):
            return None
        children = sorted((w for w in source.neighbors(s_v) if w != s_from),
                          key=lambda w: (not self._pins_inside(s_v, w), w))
        directions = [n for n in target.neighbors(t_v) if n != t_from]
        slots = target.order(t_v) - target.degree(t_v) if virtual and target.is_bare(t_v) else 0
        if len(children) > len(directions) + slots:
            return None
        owner: Dict[int, int] = {}
        placed: Dict[int, Spot] = {}

        def augment(child: int, seen: Set[int]) -> bool:
            # free directions first, the one with the same id before the rest
            for d in sorted(directions, key=lambda d: (d in owner, d != child)):
                if d in seen:
                    continue
                spot = self._place(s_v, child, t_v, d, virtual)
                if spot is None:
                    continue
                seen.add(d)
                if d not in owner or augment(owner[d], seen):
                    owner[d] = child
                    placed[child] = spot
                    return True
            return False

        spare = [child for child in children if not augment(child, set())]
        if len(spare) > slots or any(self._pins_inside(s_v, child) for child in spare):
            return None
        result = {child: placed[child] for child in children if child not in spare}
        result.update((child, VIRTUAL) for child in spare)
        return result

    def _collect(self, start: tuple) -> Dict[int, int]:
        mapping: Dict[int, int] = {}
        self.expansions = set()
        stack = [start]
        while stack:
            key = stack.pop()
            s_v, t_v = key[1], key[3]
            mapping[s_v] = t_v
            for child, spot in self._fits[key].items():
                if spot == VIRTUAL:
                    self.expansions.add(t_v)
                    continue
                pred, t_w, flag = spot
                stack.append((s_v, child, pred, t_w, flag))
        return mapping

    def embed(self, s_root: int, t_root: int) -> Dict[int, int]:
        """Embedding of the whole source stage sending s_root to t_root."""
        for virtual in ((False, True) if self.grow else (False,)):
            if self._fit(None, s_root, None, t_root, virtual):
                return self._collect((None, s_root, None, t_root, virtual))
        raise ResolutionError("No embedding sends vertex {} to vertex {}.".format(s_root, t_root))

    def embed_branch(self, s_from: int, s_v: int, t_from: int, t_first: int) -> Dict[int, int]:
        """Embedding of the branch at s_from through s_v into the branch at t_from through t_first."""
        spot = self._place(s_from, s_v, t_from, t_first, self.grow)
        if spot is None:
            raise ResolutionError("Branch at {} through {} does not fit into the branch at {} through {}.".format(
                s_from, s_v, t_from, t_first))
        pred, t_v, flag = spot
        return self._collect((s_from, s_v, pred, t_v, flag))


def _grown(search, target: TreeStage, rounds: int) -> Tuple[TreeStage, Dict[int, int]]:
    logger = logging.getLogger(__name__)
    for attempt in range(rounds + 1):
        embedder, mapping = search(target)
        if not embedder.expansions:
            return target, mapping
        if attempt == rounds:
            break
        logger.debug("Attaching arms at {} bare marks of the target.".format(len(embedder.expansions)))
        target = refine_twocolor(target, embedder.expansions)
    raise ResolutionError("Target still lacks room after {} rounds of attached arms.".format(rounds))


def embed_stage(source: TreeStage, target: TreeStage, pins: Mapping[int, int], root: Tuple[int, int] = None,
                grow: bool = False, rounds: int = DEFAULT_ROUNDS,
                budget: int = DEFAULT_BUDGET) -> Tuple[TreeStage, Dict[int, int]]:
    """Whole-stage embedding extending ``pins``, rooted at ``root`` or the least pin.

    With ``grow`` the target is refined at the bare marks the search asks for
    until an embedding fits; the possibly refined target is returned too.
    """
    if root is None:
        if not pins:
            raise ValueError("Need a root pair or at least one pin.")
        root = min(pins.items())

    def search(current):
        embedder = StageEmbedder(source, current, pins, grow, budget)
        return embedder, embedder.embed(*root)

    return _grown(search, target, rounds)


def embed_branch(source: TreeStage, s_from: int, s_v: int, target: TreeStage, t_from: int, t_first: int,
                 pins: Mapping[int, int] = None, grow: bool = False, rounds: int = DEFAULT_ROUNDS,
                 budget: int = DEFAULT_BUDGET) -> Tuple[TreeStage, Dict[int, int]]:
    """Embedding of one source branch into one target branch, see :func:`embed_stage`."""

    def search(current):
        embedder = StageEmbedder(source, current, pins, grow, budget)
        return embedder, embedder.embed_branch(s_from, s_v, t_from, t_first)

    return _grown(search, target, rounds)
