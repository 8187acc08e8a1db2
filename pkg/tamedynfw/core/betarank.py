# coding: utf-8
#
# betarank.py
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
"""Two-level flip systems over encoded spaces and their oscillation rank.

The carrier is ``base x {0,1}`` with the maximum metric and level gap 1.
Functions on the carrier are the identity, the parity flip (exchange levels
over points of odd rank) and finite clopen level swaps. The latter are the
approximants of the parity flip inside the enveloping semigroup.
"""

import logging
import random

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from tamedynfw.core.ordinal import (
    ZERO, Ordinal, Parity, add, format_ordinal, fundamental_sequence,
    is_limit, parity, successor)
from tamedynfw.core.cbspace import (
    EMPTY, CBSpace, Cone, Empty, FiniteSet, PointAddress, RankFilter,
    RepresentationError, TransfiniteChain, contains, distance, enumerate_cone, enumerate_points,
    iterated_derivative, neighborhood_cone, normalize, point_rank,
    separating_cones)
from tamedynfw.report import Report

__author__ = 'tamedynfw developers'
__copyright__ = 'Copyright 2026, IMTEK Simulation, University of Freiburg'
__date__ = 'Oct 17, 2026'

GAP = Fraction(1)
EPS_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))

DerivativeSet = Union[Empty, FiniteSet, RankFilter]


@dataclass(frozen=True)
class FlipSystem:
    base: CBSpace

    @property
    def ceiling(self) -> Ordinal:
        return self.base.seed


@dataclass(frozen=True)
class SystemPoint:
    base: PointAddress
    level: int

    def __post_init__(self):
        if self.level not in (0, 1):
            raise ValueError("Level must be 0 or 1, got {}.".format(self.level))

    def flipped(self) -> 'SystemPoint':
        return SystemPoint(self.base, 1 - self.level)

    def __str__(self):
        return '[{}]/{}'.format(self.base, self.level)


@dataclass(frozen=True)
class Identity:
    def __str__(self):
        return 'identity'


@dataclass(frozen=True)
class ParityFlip:
    def __str__(self):
        return 'parity-flip'


@dataclass(frozen=True)
class ClopenLevelSwap:
    """Exchange levels over each of pairwise disjoint cones."""
    cones: Tuple[Cone, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'cones', tuple(self.cones))
        for i, c1 in enumerate(self.cones):
            for c2 in self.cones[i+1:]:
                if not c1.is_disjoint(c2):
                    raise ValueError("Swap cones {} and {} overlap.".format(c1, c2))

    def swaps(self, a: PointAddress) -> bool:
        return any(cone.contains(a) for cone in self.cones)

    def __str__(self):
        return 'swap(' + ' '.join(str(c) for c in self.cones) + ')'


SystemFunction = Union[Identity, ParityFlip, ClopenLevelSwap]

IDENTITY = Identity()
PARITY_FLIP = ParityFlip()


def _validate(sys: FlipSystem, x: SystemPoint) -> Ordinal:
    return point_rank(sys.base, x.base)


def apply(sys: FlipSystem, fn: SystemFunction, x: SystemPoint) -> SystemPoint:
    if isinstance(fn, Identity):
        _validate(sys, x)
        return x
    if isinstance(fn, ParityFlip):
        return x if parity(_validate(sys, x)) == Parity.EVEN else x.flipped()
    _validate(sys, x)
    return x.flipped() if fn.swaps(x.base) else x


def system_distance(sys: FlipSystem, x: SystemPoint, y: SystemPoint) -> Fraction:
    return max(distance(sys.base, x.base, y.base), GAP * abs(x.level - y.level))


def is_continuous(fn: SystemFunction) -> bool:
    return not isinstance(fn, ParityFlip)


def contains_point(sys: FlipSystem, s: DerivativeSet, x: SystemPoint) -> bool:
    if isinstance(s, FiniteSet):
        return x in s.points
    return contains(sys.base, s, x.base)


def oscillation(sys: FlipSystem, fn: SystemFunction, x: SystemPoint) -> Fraction:
    """Infimum over cones around x of the diameter of the image."""
    rank = _validate(sys, x)
    if is_continuous(fn) or rank.is_zero:
        return Fraction(0)
    return Fraction(1)


def relative_oscillation(sys: FlipSystem, fn: SystemFunction, x: SystemPoint, A: DerivativeSet) -> Fraction:
    """Oscillation of fn restricted to A at x."""
    A = normalize(A, sys.ceiling)
    if not contains_point(sys, A, x):
        raise ValueError("Point {} is not in {}.".format(x, A))
    if is_continuous(fn) or isinstance(A, FiniteSet):
        return Fraction(0)
    if _validate(sys, x) >= successor(A.threshold):
        return Fraction(1)
    return Fraction(0)


def eps_derivative(sys: FlipSystem, fn: SystemFunction, A: DerivativeSet, eps: Fraction) -> DerivativeSet:
    """Points of A at which the relative oscillation reaches eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got {}.".format(eps))
    A = normalize(A, sys.ceiling)
    if is_continuous(fn) or eps > 1 or not isinstance(A, RankFilter):
        return EMPTY
    return normalize(RankFilter(successor(A.threshold)), sys.ceiling)


def eps_chain(sys: FlipSystem, fn: SystemFunction, eps: Fraction) -> TransfiniteChain:
    return TransfiniteChain(lambda s: eps_derivative(sys, fn, s, eps), RankFilter(ZERO), sys.ceiling)


def beta_rank_at_eps(sys: FlipSystem, fn: SystemFunction, eps: Fraction) -> Ordinal:
    return eps_chain(sys, fn, eps).least_empty_stage()


def achievable_oscillations(sys: FlipSystem, fn: SystemFunction) -> List[Fraction]:
    if is_continuous(fn) or sys.ceiling.is_zero:
        return [Fraction(0)]
    return [Fraction(0), Fraction(1)]


def beta_rank_profile(sys: FlipSystem, fn: SystemFunction,
                      grid: Iterable[Fraction] = EPS_GRID) -> Dict[Fraction, Ordinal]:
    return {Fraction(eps): beta_rank_at_eps(sys, fn, eps) for eps in grid}


def beta_rank(sys: FlipSystem, fn: SystemFunction, grid: Iterable[Fraction] = EPS_GRID) -> Ordinal:
    """Supremum over eps of the eps-rank.

    The eps-rank is non-increasing in eps and constant below the least
    positive achievable oscillation, so the supremum is attained there.
    """
    logger = logging.getLogger(__name__)
    positive = [v for v in achievable_oscillations(sys, fn) if v > 0]
    eps = min(positive) if positive else Fraction(1)
    rank = beta_rank_at_eps(sys, fn, eps)
    profile = beta_rank_profile(sys, fn, grid)
    for e, r in profile.items():
        if e <= eps and r != rank:
            raise RepresentationError(
                "eps-rank {} at eps={} differs from {} at eps={}.".format(r, e, rank, eps))
        if r > rank:
            raise RepresentationError("eps-rank {} at eps={} exceeds the supremum {}.".format(r, e, rank))
    logger.debug("beta rank of {} over {}: {}".format(fn, sys.base, format_ordinal(rank)))
    return rank


def ellis_approximant(sys: FlipSystem, sample: Sequence[SystemPoint],
                      targets: Sequence[SystemPoint] = None) -> ClopenLevelSwap:
    """Clopen level swap agreeing with the targets (default: the parity flip) on a finite sample."""
    if targets is None:
        targets = [apply(sys, PARITY_FLIP, x) for x in sample]
    if len(targets) != len(sample):
        raise ValueError("Got {} targets for {} sample points.".format(len(targets), len(sample)))
    swap: Dict[PointAddress, bool] = {}
    for x, y in zip(sample, targets):
        _validate(sys, x)
        if y.base != x.base:
            raise ValueError("Target {} of {} leaves the fiber.".format(y, x))
        required = y.level != x.level
        if swap.setdefault(x.base, required) != required:
            raise ValueError("Conflicting requirements over base point [{}].".format(x.base))
    bases = sorted(swap, key=lambda a: a.steps)
    cones = [cone for cone, a in zip(separating_cones(sys.base, bases), bases) if swap[a]]
    return ClopenLevelSwap(tuple(cones))


def enumerate_system_points(sys: FlipSystem, depth: int, width: int) -> List[SystemPoint]:
    return [SystemPoint(a, level) for a in enumerate_points(sys.base, depth, width) for level in (0, 1)]


def sampled_oscillation(sys: FlipSystem, fn: SystemFunction, x: SystemPoint, A: DerivativeSet = None,
                        max_k: int = 64, depth: int = 2, width: int = 4) -> Fraction:
    """Cone oracle: least sampled diameter of fn over cones k <= max_k around x, restricted to A."""
    values = []
    for k in range(max_k + 1):
        cone = neighborhood_cone(sys.base, x.base, k)
        points = [SystemPoint(b, x.level) for b in enumerate_cone(sys.base, cone, depth, width)]
        if A is not None:
            points = [p for p in points if contains_point(sys, A, p)]
        images = [apply(sys, fn, p) for p in points]
        values.append(max(system_distance(sys, p, q) for p in images for q in images))
    return min(values)


def checkpoint_stages(rank: Ordinal) -> List[Ordinal]:
    """Finitely many stages up to rank, covering every limit part of it."""
    stages = {Ordinal.natural(n) for n in range(3)}
    prefix = ZERO
    for e, c in rank.terms:
        for i in range(c):
            prefix = add(prefix, Ordinal.omega_power(e))
            stages.update({prefix, successor(prefix), successor(successor(prefix))})
            if is_limit(prefix):
                stages.update(fundamental_sequence(prefix, n) for n in range(3))
    return sorted(s for s in stages if s <= rank)


def verify_rank_theorem(sys: FlipSystem, eps: Fraction = Fraction(1, 2), depth: int = 3, width: int = 6) -> Report:
    """Compare the eps-derivative chain of the parity flip with the CB chain of the carrier."""
    logger = logging.getLogger(__name__)
    report = Report('betarank')
    cb = successor(sys.base.seed)
    beta = beta_rank(sys, PARITY_FLIP)
    report.add('beta-rank', beta == cb, 'beta={} cb={}'.format(format_ordinal(beta), format_ordinal(cb)))
    report.add('beta-rank-at-eps', beta_rank_at_eps(sys, PARITY_FLIP, eps) == cb,
               'eps={} beta={}'.format(eps, format_ordinal(beta_rank_at_eps(sys, PARITY_FLIP, eps))))
    chain = eps_chain(sys, PARITY_FLIP, eps)
    points = enumerate_system_points(sys, depth, width)
    agree = 0
    total = 0
    for stage in checkpoint_stages(cb):
        cb_set = iterated_derivative(sys.base, stage)
        eps_set = chain.stage(stage)
        equal = cb_set == eps_set
        report.add('stage-{}'.format(format_ordinal(stage)), equal, 'stage {} cb={} eps={} equal={}'.format(
            format_ordinal(stage), cb_set, eps_set, 'true' if equal else 'false'))
        for x in points:
            total += 1
            agree += contains(sys.base, cb_set, x.base) == contains_point(sys, eps_set, x)
    report.add('membership', agree == total, 'agree={}/{} points={}'.format(agree, total, len(points)))
    logger.info("Rank theorem over {}: {} failed checks.".format(sys.base, len(report.failed)))
    return report


def verify_ellis(sys: FlipSystem, seed: int = 0, samples: int = 1000, size: int = 20,
                 depth: int = 3, width: int = 4) -> Report:
    """Audit clopen level swaps approximating the parity flip on random finite samples.

    Every approximant must agree with the parity flip on its sample and act
    as an involutive bijection on a fixed enumeration of the carrier.
    """
    logger = logging.getLogger(__name__)
    rng = random.Random(seed)
    report = Report('ellis')
    pool = enumerate_points(sys.base, depth, width + 1)
    carrier = enumerate_system_points(sys, depth, width)
    size = min(size, len(pool))
    agree = bijective = involutive = 0
    for _ in range(samples):
        bases = rng.sample(pool, rng.randint(0, size))
        sample = [SystemPoint(a, rng.randint(0, 1)) for a in bases]
        swap = ellis_approximant(sys, sample)
        agree += all(apply(sys, swap, x) == apply(sys, PARITY_FLIP, x) for x in sample)
        images = [apply(sys, swap, x) for x in carrier]
        bijective += set(images) == set(carrier) and len(set(images)) == len(carrier)
        involutive += all(apply(sys, swap, y) == x for x, y in zip(carrier, images))
    report.add('agreement', agree == samples, 'agree={}/{} size<={}'.format(agree, samples, size))
    report.add('bijective', bijective == samples, 'agree={}/{} carrier={}'.format(bijective, samples, len(carrier)))
    report.add('involutive', involutive == samples, 'agree={}/{}'.format(involutive, samples))
    logger.info("Ellis suite over {}: {} failed checks.".format(sys.base, len(report.failed)))
    return report
