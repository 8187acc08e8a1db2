# coding: utf-8
"""Tests for encoded countable compact spaces."""
import itertools

from fractions import Fraction

import pytest

from tamedynfw.core.ordinal import ZERO, Ordinal, parse_ordinal, successor
from tamedynfw.core.cbspace import (
    EMPTY, TOP, AddressError, CBSpace, FiniteSet, PointAddress, RankFilter,
    TransfiniteChain, build_space, cb_derivative, cb_rank, cone_image_interval,
    contains, distance, embed_point, enumerate_points, iterated_derivative,
    neighborhood_cone, point_rank, sample_cone_diameter, separating_cones,
    sub_space)

TARGET_RANKS = ["2", "3", "5", "w+1", "w+2", "w*2+1", "w^2+1"]


def addr(*steps):
    return PointAddress(steps)


def test_build_space_single_point():
    space = build_space(parse_ordinal("1"))
    assert space.seed == ZERO
    assert enumerate_points(space, 3, 3) == [TOP]
    assert embed_point(space, TOP) == 0


def test_build_space_rank_two():
    space = build_space(parse_ordinal("2"))
    assert cb_rank(space) == parse_ordinal("2")
    assert [embed_point(space, addr(n)) for n in range(3)] == [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]
    assert all(point_rank(space, addr(n)) == ZERO for n in range(5))


def test_build_space_omega_plus_one():
    space = build_space(parse_ordinal("w+1"))
    assert point_rank(space, TOP) == parse_ordinal("w")
    assert point_rank(space, addr(5)) == 5
    chain = [iterated_derivative(space, Ordinal.natural(i)) for i in range(7)]
    assert all(contains(space, s, addr(5)) for s in chain[:6])
    assert not contains(space, chain[6], addr(5))
    assert contains(space, iterated_derivative(space, parse_ordinal("w")), TOP)


@pytest.mark.parametrize("rank", ["0", "w", "w^2*2"])
def test_build_space_rejects_non_successor(rank):
    with pytest.raises(ValueError, match="compact"):
        build_space(parse_ordinal(rank))


@pytest.mark.parametrize("rank", TARGET_RANKS)
def test_cb_rank(rank):
    alpha = parse_ordinal(rank)
    assert cb_rank(build_space(alpha)) == alpha


def test_cb_derivative():
    space = CBSpace(Ordinal.natural(3))
    assert cb_derivative(space, FiniteSet((TOP, addr(1)))) == EMPTY
    assert cb_derivative(space, EMPTY) == EMPTY
    assert cb_derivative(space, RankFilter(ZERO)) == RankFilter(Ordinal.natural(1))
    assert cb_derivative(space, RankFilter(Ordinal.natural(2))) == RankFilter(Ordinal.natural(3))
    assert cb_derivative(space, RankFilter(Ordinal.natural(3))) == EMPTY


def test_rank_filter_two_has_only_the_center_as_limit_point():
    space = CBSpace(Ordinal.natural(3))
    points = enumerate_points(space, 4, 4)
    survivors = [a for a in points if contains(space, RankFilter(Ordinal.natural(2)), a)]
    for a in survivors:
        others = [b for b in survivors if b != a]
        nearest = min(distance(space, a, b) for b in others)
        if point_rank(space, a) == 2:
            # isolated within the filter: its whole cone holds no other survivor
            cone = neighborhood_cone(space, a, 0)
            assert not any(cone.contains(b) for b in others)
            assert nearest > 0
        else:
            assert a == TOP
    # the center is approached by rank-2 copies
    assert [distance(space, TOP, addr(n)) for n in range(4)] == [Fraction(1, n + 2) for n in range(4)]
    assert cb_derivative(space, RankFilter(Ordinal.natural(2))) == RankFilter(Ordinal.natural(3))


@pytest.mark.parametrize("rank", TARGET_RANKS)
def test_rank_derivative_coherence(rank):
    space = build_space(parse_ordinal(rank))
    width = 6 if space.seed.is_natural else 4
    for a in enumerate_points(space, 4, width):
        beta = point_rank(space, a)
        assert contains(space, iterated_derivative(space, beta), a)
        assert not contains(space, iterated_derivative(space, successor(beta)), a)


def test_point_rank_of_leaf():
    space = CBSpace(parse_ordinal("w*2"))
    leaves = [a for a in enumerate_points(space, 4, 3) if point_rank(space, a) == ZERO]
    assert len(leaves) > 0
    for a in leaves:
        with pytest.raises(AddressError):
            point_rank(space, a.child(0))


@pytest.mark.parametrize("seed", ["1", "3", "w", "w*2+1"])
def test_embedding_injective_and_bounded(seed):
    space = CBSpace(parse_ordinal(seed), (Fraction(1, 3), Fraction(2, 3)))
    points = enumerate_points(space, 3, 4)
    images = [embed_point(space, a) for a in points]
    assert len(set(images)) == len(points)
    assert all(Fraction(1, 3) <= x <= Fraction(2, 3) for x in images)
    assert embed_point(space, TOP) == Fraction(1, 3)


def test_embed_copy_rule():
    space = CBSpace(Ordinal.natural(1))
    assert Fraction(1, 3) <= embed_point(space, addr(1)) <= Fraction(1, 2)
    assert distance(space, addr(1), addr(1)) == 0


def test_enumerate_points():
    assert enumerate_points(CBSpace(ZERO), 5, 5) == [TOP]
    assert enumerate_points(CBSpace(Ordinal.natural(1)), 1, 2) == [TOP, addr(0), addr(1)]
    assert len(enumerate_points(CBSpace(Ordinal.natural(2)), 2, 3)) == 13


def test_copies_are_scaled_affine_images():
    space = CBSpace(Ordinal.natural(3))
    copy = sub_space(space, addr(2))
    standalone = CBSpace(copy.seed)
    scale = Fraction(1, 3) - Fraction(1, 4)
    points = enumerate_points(standalone, 2, 3)
    for p, q in itertools.combinations(points, 2):
        lifted_p, lifted_q = PointAddress((2,) + p.steps), PointAddress((2,) + q.steps)
        assert distance(space, lifted_p, lifted_q) == scale * distance(standalone, p, q)


def test_leaf_cone_is_singleton():
    space = CBSpace(Ordinal.natural(1))
    cone = neighborhood_cone(space, addr(3), 7)
    lo, hi = cone_image_interval(space, cone)
    assert lo == hi == embed_point(space, addr(3))
    assert [b for b in enumerate_points(space, 2, 8) if cone.contains(b)] == [addr(3)]


@pytest.mark.parametrize("k", [0, 1, 5, 20])
def test_center_cone_diameter(k):
    space = CBSpace(Ordinal.natural(1))
    cone = neighborhood_cone(space, TOP, k)
    lo, hi = cone_image_interval(space, cone)
    assert hi - lo <= Fraction(1, k + 1)
    assert sample_cone_diameter(space, cone, 1, 10) <= Fraction(1, k + 1)


@pytest.mark.parametrize("seed", ["2", "w+1"])
def test_cones_are_clopen(seed):
    space = CBSpace(parse_ordinal(seed))
    points = enumerate_points(space, 3, 5)
    for a in points[:12]:
        for k in (0, 2):
            cone = neighborhood_cone(space, a, k)
            lo, hi = cone_image_interval(space, cone)
            for b in points:
                x = embed_point(space, b)
                inside = (x == lo) if lo == hi else (lo <= x < hi)
                assert cone.contains(b) == inside


def test_separating_cones_are_disjoint():
    space = CBSpace(parse_ordinal("w+1"))
    points = enumerate_points(space, 2, 4)
    cones = separating_cones(space, points)
    for c1, c2 in itertools.combinations(cones, 2):
        assert c1.is_disjoint(c2)
    for cone, a in zip(cones, points):
        assert cone.address == a


def test_transfinite_chain_limit_stage():
    space = CBSpace(parse_ordinal("w*2"))
    assert iterated_derivative(space, parse_ordinal("w")) == RankFilter(parse_ordinal("w"))
    assert iterated_derivative(space, parse_ordinal("w*2+1")) == EMPTY


def test_transfinite_chain_of_finite_set():
    space = CBSpace(Ordinal.natural(2))
    chain = TransfiniteChain(lambda s: cb_derivative(space, s), FiniteSet((TOP,)), space.seed)
    assert chain.stage(ZERO) == FiniteSet((TOP,))
    assert chain.stage(parse_ordinal("w")) == EMPTY
    assert chain.least_empty_stage() == 1


def test_address_parsing():
    assert PointAddress.from_string("1,2,3") == addr(1, 2, 3)
    assert PointAddress.from_string("") == TOP
    assert str(addr(4, 0)) == "4,0"
    with pytest.raises(AddressError):
        PointAddress.from_string("1,x")
    with pytest.raises(AddressError):
        addr(-1)
