# coding: utf-8
#
# cbspace.py
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
"""Countable compact subspaces of [0,1] with prescribed Cantor-Bendixson rank.

The space S(b) consists of a center and, for every natural n, a copy of
S(b') squeezed into ``[l+(r-l)/(n+2), l+(r-l)/(n+1))`` where b' is the
predecessor of b or, for limit b, the n-th element of its fundamental
sequence. The center sits at the left endpoint l. A point is addressed by
the list of copy indices descended from the top center.
"""

import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Tuple, Union

from tamedynfw.core.ordinal import (
    ZERO, Order, Ordinal, add, compare, difference, format_ordinal,
    fundamental_sequence, is_limit, is_successor, parse_ordinal, predecessor, successor)
from tamedynfw.report import Report

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'


class AddressError(ValueError):
    """Raised on descents that do not exist in a space."""
    pass


class RepresentationError(RuntimeError):
    """Raised when a symbolic computation leaves its closed family of sets."""
    pass


@dataclass(frozen=True)
class PointAddress:
    steps: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(int(n) for n in self.steps))
        if any(n < 0 for n in self.steps):
            raise AddressError("Negative copy index in {}.".format(self.steps))

    def child(self, n: int) -> 'PointAddress':
        return PointAddress(self.steps + (n,))

    def is_prefix_of(self, other: 'PointAddress') -> bool:
        return other.steps[:len(self.steps)] == self.steps

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return ','.join(str(n) for n in self.steps)

    @classmethod
    def from_string(cls, text: str) -> 'PointAddress':
        text = text.strip()
        if text in ('', '[]'):
            return cls(())
        try:
            return cls(tuple(int(s) for s in text.strip('[]').split(',')))
        except ValueError as exc:
            raise AddressError("Malformed address '{}'.".format(text)) from exc


TOP = PointAddress(())


# base subsets, shared by the derivative chains of spaces and flip systems

@dataclass(frozen=True)
class Empty:
    def __str__(self):
        return 'empty'


@dataclass(frozen=True)
class FiniteSet:
    points: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))

    def __str__(self):
        return '{' + ';'.join(str(p) for p in self.points) + '}'


@dataclass(frozen=True)
class RankFilter:
    """All points of rank at least ``threshold``."""
    threshold: Ordinal = ZERO

    def __str__(self):
        return 'rank>={}'.format(format_ordinal(self.threshold))


BaseSubset = Union[Empty, FiniteSet, RankFilter]

EMPTY = Empty()


def normalize(s: BaseSubset, ceiling: Ordinal) -> BaseSubset:
    """Replace rank filters above the top rank by the empty set."""
    if isinstance(s, FiniteSet) and len(s.points) == 0:
        return EMPTY
    if isinstance(s, RankFilter) and compare(s.threshold, ceiling) == Order.GT:
        return EMPTY
    return s


class TransfiniteChain:
    """Iterates a derivative operator transfinitely, exactly.

    Successor stages apply ``step``. A limit stage is the intersection of
    all earlier ones: a chain that shifts rank filters by one keeps doing so
    and stage a of a chain started at ``RankFilter(t)`` is
    ``RankFilter(t+a)``; any chain that empties does so at a finite stage.
    """

    #: finite steps tried before a non-shifting chain counts as escaped
    max_finite_steps = 16

    def __init__(self, step: Callable[[BaseSubset], BaseSubset], start: BaseSubset, ceiling: Ordinal):
        self.step = step
        self.ceiling = ceiling
        self.start = normalize(start, ceiling)

    @property
    def shifts(self) -> bool:
        if not isinstance(self.start, RankFilter):
            return False
        shifted = normalize(RankFilter(successor(self.start.threshold)), self.ceiling)
        return self.step(self.start) == shifted

    def stage(self, alpha: Ordinal) -> BaseSubset:
        if isinstance(self.start, Empty):
            return EMPTY
        if self.shifts:
            return normalize(RankFilter(add(self.start.threshold, alpha)), self.ceiling)
        s = self.start
        n = alpha.to_int() if alpha.is_natural else self.max_finite_steps
        for i in range(n):
            s = normalize(self.step(s), self.ceiling)
            if isinstance(s, Empty):
                return s
        if not alpha.is_natural:
            raise RepresentationError(
                "Chain from {} did not empty within {} steps.".format(self.start, n))
        return s

    def least_empty_stage(self) -> Ordinal:
        logger = logging.getLogger(__name__)
        if isinstance(self.start, Empty):
            return ZERO
        if self.shifts:
            alpha = difference(self.start.threshold, successor(self.ceiling))
        else:
            alpha = None
            s = self.start
            for i in range(1, self.max_finite_steps + 1):
                s = normalize(self.step(s), self.ceiling)
                if isinstance(s, Empty):
                    alpha = Ordinal.natural(i)
                    break
            if alpha is None:
                raise RepresentationError("Chain from {} does not empty.".format(self.start))
        # confirm through the stage evaluator
        if not isinstance(self.stage(alpha), Empty):
            raise RepresentationError("Stage {} is not empty.".format(alpha))
        if is_successor(alpha) and isinstance(self.stage(predecessor(alpha)), Empty):
            raise RepresentationError("Stage {} is not the least empty one.".format(alpha))
        logger.debug("Chain from {} empties at stage {}.".format(self.start, format_ordinal(alpha)))
        return alpha


@dataclass(frozen=True)
class CBSpace:
    """The space S(seed) embedded into ``interval``, of rank seed+1."""
    seed: Ordinal
    interval: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))

    def __post_init__(self):
        l, r = Fraction(self.interval[0]), Fraction(self.interval[1])
        if not l < r:
            raise ValueError("Empty embedding interval [{}, {}].".format(l, r))
        object.__setattr__(self, 'interval', (l, r))

    def __str__(self):
        return 'S({}) on [{}, {}]'.format(format_ordinal(self.seed), *self.interval)


def copy_descriptor(descriptor: Ordinal, n: int) -> Ordinal:
    """Seed of copy n inside S(descriptor)."""
    if descriptor.is_zero:
        raise AddressError("S(0) is a single point and has no copies.")
    if is_successor(descriptor):
        return predecessor(descriptor)
    return fundamental_sequence(descriptor, n)


def copy_interval(interval: Tuple[Fraction, Fraction], n: int) -> Tuple[Fraction, Fraction]:
    l, r = interval
    return (l + (r - l) / (n + 2), l + (r - l) / (n + 1))


def locate(space: CBSpace, a: PointAddress) -> Tuple[Ordinal, Tuple[Fraction, Fraction]]:
    """Terminal descriptor and interval of the sub-copy an address ends in."""
    descriptor, interval = space.seed, space.interval
    for depth, n in enumerate(a.steps):
        try:
            descriptor = copy_descriptor(descriptor, n)
        except AddressError as exc:
            raise AddressError("Invalid descent at step {} of address [{}].".format(depth, a)) from exc
        interval = copy_interval(interval, n)
    return descriptor, interval


def sub_space(space: CBSpace, a: PointAddress) -> CBSpace:
    """The copy rooted at a, as a space in its own right."""
    descriptor, interval = locate(space, a)
    return CBSpace(descriptor, interval)


def build_space(target_rank: Ordinal) -> CBSpace:
    """Space on [0,1] of Cantor-Bendixson rank ``target_rank``."""
    if target_rank.is_zero or is_limit(target_rank):
        raise ValueError(
            "No compact space has Cantor-Bendixson rank {}: the first empty derivative of a "
            "compact space is a successor stage, since nested nonempty compact derivatives "
            "have nonempty intersection.".format(format_ordinal(target_rank)))
    return CBSpace(predecessor(target_rank))


def point_rank(space: CBSpace, a: PointAddress) -> Ordinal:
    descriptor, _ = locate(space, a)
    return descriptor


def embed_point(space: CBSpace, a: PointAddress) -> Fraction:
    _, (l, _) = locate(space, a)
    return l


def distance(space: CBSpace, a: PointAddress, b: PointAddress) -> Fraction:
    return abs(embed_point(space, a) - embed_point(space, b))


def contains(space: CBSpace, s: BaseSubset, a: PointAddress) -> bool:
    if isinstance(s, Empty):
        return False
    if isinstance(s, FiniteSet):
        return a in s.points
    return compare(point_rank(space, a), s.threshold) != Order.LT


def cb_derivative(space: CBSpace, s: BaseSubset) -> BaseSubset:
    """Limit points of s inside s."""
    s = normalize(s, space.seed)
    if isinstance(s, RankFilter):
        return normalize(RankFilter(successor(s.threshold)), space.seed)
    return EMPTY


def derivative_chain(space: CBSpace, start: BaseSubset = RankFilter(ZERO)) -> TransfiniteChain:
    return TransfiniteChain(lambda s: cb_derivative(space, s), start, space.seed)


def iterated_derivative(space: CBSpace, alpha: Ordinal, start: BaseSubset = RankFilter(ZERO)) -> BaseSubset:
    return derivative_chain(space, start).stage(alpha)


def cb_rank(space: CBSpace) -> Ordinal:
    return derivative_chain(space).least_empty_stage()


def enumerate_points(space: CBSpace, depth: int, width: int, root: PointAddress = TOP) -> List[PointAddress]:
    """Addresses below root with at most depth further steps, each below width, in preorder."""
    return list(_iter_points(space, root, point_rank(space, root), depth, range(width), width))


def _iter_points(space, a, descriptor, depth, indices, width) -> Iterator[PointAddress]:
    yield a
    if depth == 0 or descriptor.is_zero:
        return
    for n in indices:
        yield from _iter_points(space, a.child(n), copy_descriptor(descriptor, n), depth - 1, range(width), width)


@dataclass(frozen=True)
class Cone:
    """k-th basic clopen neighbourhood of ``address``: the point plus its copies k, k+1, ..."""
    address: PointAddress
    k: int

    def contains(self, b: PointAddress) -> bool:
        if not self.address.is_prefix_of(b):
            return False
        return len(b) == len(self.address) or b.steps[len(self.address)] >= self.k

    def is_disjoint(self, other: 'Cone') -> bool:
        return not self.contains(other.address) and not other.contains(self.address)

    def __str__(self):
        return 'cone([{}],{})'.format(self.address, self.k)


def neighborhood_cone(space: CBSpace, a: PointAddress, k: int) -> Cone:
    locate(space, a)
    if k < 0:
        raise ValueError("Cone index must be natural, got {}.".format(k))
    return Cone(a, k)


def cone_image_interval(space: CBSpace, cone: Cone) -> Tuple[Fraction, Fraction]:
    """Interval [lo, hi] whose intersection with the space is the cone.

    For an isolated point lo == hi. Otherwise the cone fills
    ``[lo, hi)`` which, as hi is the left end of copy k-1 (or the right end of
    the sub-copy for k = 0) and hence outside the cone, is clopen.
    """
    descriptor, (l, r) = locate(space, cone.address)
    if descriptor.is_zero:
        return (l, l)
    return (l, l + (r - l) / (cone.k + 1))


def enumerate_cone(space: CBSpace, cone: Cone, depth: int, width: int) -> List[PointAddress]:
    """Points of a cone: copies k..k+width-1 of its root, expanded to depth."""
    descriptor = point_rank(space, cone.address)
    return list(_iter_points(space, cone.address, descriptor, depth,
                             range(cone.k, cone.k + width), width))


def sample_cone_diameter(space: CBSpace, cone: Cone, depth: int, width: int) -> Fraction:
    images = [embed_point(space, b) for b in enumerate_cone(space, cone, depth, width)]
    return max(images) - min(images)


def separating_cones(space: CBSpace, addresses: List[PointAddress]) -> List[Cone]:
    """Pairwise disjoint cones around pairwise distinct addresses, least k."""
    if len(set(addresses)) != len(addresses):
        raise ValueError("Addresses are not pairwise distinct.")
    cones = []
    for a in addresses:
        k = 0
        while True:
            cone = neighborhood_cone(space, a, k)
            if all(not cone.contains(b) for b in addresses if b != a):
                break
            k += 1
        cones.append(cone)
    return cones



DEFAULT_RANKS = ('2', '3', '5', 'w+1', 'w+2', 'w*2+1', 'w^2+1')


def verify_cb_rank(ranks=DEFAULT_RANKS, depth: int = 4, width: int = 6) -> Report:
    """Build a space per rank, recover the rank and audit point ranks against the derivative chain."""
    logger = logging.getLogger(__name__)
    report = Report('cbspace')
    for literal in ranks:
        rank = parse_ordinal(literal) if isinstance(literal, str) else literal
        space = build_space(rank)
        recovered = cb_rank(space)
        report.add('cb-rank/{}'.format(format_ordinal(rank)), recovered == rank, 'rank={} cb={}'.format(
            format_ordinal(rank), format_ordinal(recovered)))
        stages = {}

        def stage(alpha):
            if alpha not in stages:
                stages[alpha] = iterated_derivative(space, alpha)
            return stages[alpha]

        points = enumerate_points(space, depth, width)
        agree = 0
        for a in points:
            r = point_rank(space, a)
            agree += contains(space, stage(r), a) and not contains(space, stage(successor(r)), a)
        report.add('point-rank/{}'.format(format_ordinal(rank)), agree == len(points),
                   'agree={}/{} depth={} width={}'.format(agree, len(points), depth, width))
    logger.info("CB suite over {} ranks: {} failed checks.".format(len(ranks), len(report.failed)))
    return report
