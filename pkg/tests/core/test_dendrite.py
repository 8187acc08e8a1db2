# coding: utf-8
"""Tests for finite dendrite stages."""
import itertools
import random

from fractions import Fraction

import pytest

from tamedynfw.core.dendrite import (
    Color, EndpointAddress, EndpointKind, GeometricPoint, ResolutionError, Role, TreeStage, Vertex, arm_blocks,
    attached_length, block_of, extend_arm, lift_point,
    build_convex_cover, build_twocolor_stage, build_wazewski_stage, check_stage, classify_endpoint,
    density_shadow, diameter, dyadic_marks, monochromatic_arcs, path_distance, random_point, refine_twocolor,
    refine_wazewski, type_witness)
from tamedynfw.report import Status


def v(i):
    return GeometricPoint(i)


@pytest.fixture
def star():
    return build_wazewski_stage([3], 0, 2)


@pytest.fixture
def unit_star():
    return TreeStage([Vertex(i) for i in range(4)], {(0, i): Fraction(1) for i in range(1, 4)})


def test_wazewski_star(star):
    assert len(star.vertices) == 4
    assert star.degree(0) == 3
    assert star.leaves() == [1, 2, 3]
    assert all(star.role(i) == Role.ENDPOINT for i in (1, 2, 3))
    assert star.bonding is None
    assert check_stage(star).exit_status == 0


def test_wazewski_refinement():
    previous = build_wazewski_stage([3, 4], 0, 2)
    stage = build_wazewski_stage([3, 4], 1, 2)
    assert len(stage.edges) == 18
    assert len(stage.vertices) == 19
    assert sorted({stage.degree(w) for w in stage.vertices if stage.role(w) == Role.RAMIFICATION}) == [3, 4]
    assert [degrees for _, degrees in density_shadow(previous, stage)] == [[3, 4]] * 3
    pendants = [length for (a, b), length in stage.edges.items()
                if any(stage.degree(x) == 1 and stage.vertices[x].born == 1 for x in (a, b))]
    assert set(pendants) == {Fraction(1, 8)}
    report = check_stage(stage)
    assert report.exit_status == 0
    assert [c.id for c in report.checks] == ['tree', 'orders', 'diameter-decay']


def test_wazewski_omega_marker():
    stage = build_wazewski_stage(['3', 'w'], 1, 4)
    assert stage.params['degrees'] == [3, 6]
    assert stage.params['omega_degree'] == 6
    assert check_stage(stage).exit_status == 0


@pytest.mark.parametrize("orders", [[2], ['x'], []])
def test_wazewski_rejects_orders(orders):
    with pytest.raises(ValueError):
        build_wazewski_stage(orders, 1, 2)


def test_stage_rejects_non_trees():
    vertices = [Vertex(i) for i in range(3)]
    with pytest.raises(ValueError):
        TreeStage(vertices, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
    with pytest.raises(ValueError):
        TreeStage(vertices, {(0, 1): 1, (1, 2): 0})


def test_geometric_point_validation():
    with pytest.raises(ValueError):
        GeometricPoint(2, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        GeometricPoint(1, 2, Fraction(1))
    p = GeometricPoint(0, 1, Fraction(1, 2))
    assert str(p) == 'e0-1@1/2'
    assert GeometricPoint.from_string(str(p)) == p
    assert GeometricPoint.from_string('v7') == v(7)


def test_distances_and_arcs(star):
    p = star.point_on_edge(0, 1, Fraction(1, 4))
    assert p == GeometricPoint(0, 1, Fraction(1, 2))
    assert star.point_on_edge(1, 0, Fraction(1, 4)) == p
    assert star.distance(p, v(2)) == Fraction(3, 4)
    arc = star.arc_between(p, v(2))
    assert arc.points == (p, v(0), v(2))
    assert arc.length == Fraction(3, 4)
    assert star.point_along(arc, Fraction(1, 2)) == GeometricPoint(0, 2, Fraction(1, 2))
    assert star.diameter() == 1


def test_midpoint(star):
    assert star.midpoint(v(1), v(2), v(3)) == v(0)
    p = star.point_on_edge(0, 1, Fraction(1, 4))
    assert star.midpoint(v(1), p, v(2)) == p


def test_midpoint_is_symmetric():
    stage = build_wazewski_stage([3], 1, 2)
    rng = random.Random(3)
    for _ in range(100):
        x1, x2, x3 = (random_point(stage, rng) for _ in range(3))
        m = stage.midpoint(x1, x2, x3)
        assert m == stage.midpoint(x2, x3, x1) == stage.midpoint(x3, x1, x2)
        assert stage.is_between(x1, m, x2)
        assert stage.is_between(x2, m, x3)
        assert stage.is_between(x1, m, x3)


def test_components(star):
    branches = star.components_at(v(0))
    assert len(branches) == star.order_of(v(0)) == 3
    assert all(b.contains(v(0)) for b in branches)
    p = star.point_on_edge(0, 1, Fraction(1, 4))
    assert star.order_of(p) == 2
    assert star.order_of(v(1)) == 1
    toward_center, toward_leaf = star.components_at(p)
    assert toward_center.contains(v(2)) and toward_center.contains(v(3))
    assert not toward_center.contains(v(1))
    assert toward_leaf.contains(v(1)) and not toward_leaf.contains(v(0))

    c = star.component_toward(v(0), v(2))
    assert c.contains(v(2)) and c.contains(v(0))
    assert not c.contains(v(1))
    assert star.component_toward(p, v(1)) == toward_leaf
    with pytest.raises(ValueError):
        star.component_toward(p, p)


def test_between_region(star):
    p = star.point_on_edge(0, 1, Fraction(1, 4))
    q = star.point_on_edge(0, 2, Fraction(1, 4))
    region = star.between_region(p, q)
    assert region.contains(v(0)) and region.contains(v(3))
    assert not region.contains(v(1)) and not region.contains(v(2))
    assert region.is_convex()
    assert region.diameter() == Fraction(3, 4)
    assert region.boundary() == [p, q]
    # endpoints see the whole tree between them
    assert star.between_region(v(1), v(2)) == star.whole_region()


def test_convex_cover_regression(unit_star):
    cover = build_convex_cover(unit_star, 1)
    assert len(cover.regions) == 22
    assert cover.boundary_count == 42
    assert cover.covers()
    assert all(r.diameter() <= Fraction(1, 4) for r in cover.regions)
    assert all(r.is_convex() for r in cover.regions)


def test_convex_cover_single_region(unit_star):
    cover = build_convex_cover(unit_star, 8)
    assert len(cover.regions) == 1
    assert cover.boundary_count == 0


@pytest.mark.parametrize("eps", [Fraction(1, 2), Fraction(1, 5)])
def test_convex_cover_of_refined_stage(eps):
    stage = build_wazewski_stage([3, 4], 1, 2)
    cover = build_convex_cover(stage, eps)
    assert cover.covers()
    for region in cover.regions:
        assert region.diameter() <= eps / 4
        assert region.is_convex()


def test_convex_cover_rejects_eps():
    with pytest.raises(ValueError):
        build_convex_cover(build_wazewski_stage([3], 0, 1), 0)


def test_dyadic_marks():
    assert dyadic_marks(0, 1) == [Fraction(1, 4)]
    assert dyadic_marks(1, 1) == [Fraction(5, 8)]
    assert dyadic_marks(0, 2) == [Fraction(1, 8), Fraction(1, 4)]
    assert dyadic_marks(1, 2) == [Fraction(9, 16), Fraction(5, 8)]


def test_twocolor_base_stage():
    stage = build_twocolor_stage(0, 1)
    assert len(stage.vertices) == 13
    assert stage.degree(0) == 4
    assert stage.color(0) == Color.RED
    assert len(stage.arms) == 4
    arm = stage.arms[0]
    assert [stage.color(x) for x in arm.marks] == [Color.RED, Color.GREEN]
    assert [stage.label(x) for x in arm.marks] == [Fraction(1, 4), Fraction(5, 8)]
    assert arm.length == Fraction(1, 2)
    assert stage.diameter() == 1
    assert stage.bonding is None


def test_twocolor_stage_one():
    stage = build_twocolor_stage(1, 1)
    assert len(stage.vertices) == 49
    assert len(stage.arms) == 16
    assert sum(1 for arm in stage.arms if arm.kind == 'T1') == 4
    for x in stage.vertices:
        if stage.is_mark(x) and stage.vertices[x].born == 0:
            assert stage.degree(x) == (4 if stage.color(x) == Color.RED else 3)
    t1 = next(arm for arm in stage.arms if arm.kind == 'T1')
    assert [stage.color(x) for x in t1.marks] == [Color.GREEN, Color.RED]
    assert t1.length == Fraction(1, 8)
    bonding = stage.bonding
    assert set(bonding.values()) == {x for x, vx in stage.vertices.items() if vx.born == 0}
    assert all(bonding[x] == t1.root for x in t1.vertices)


@pytest.mark.parametrize("depth, m", [(0, 1), (1, 2), (2, 1)])
def test_check_twocolor_stage(depth, m):
    report = check_stage(build_twocolor_stage(depth, m))
    assert report.exit_status == 0
    assert all(c.status == Status.PASS for c in report.checks)


def test_monochromatic_arcs():
    arcs = monochromatic_arcs(build_twocolor_stage(1, 1))
    assert arcs[Color.RED] is not None
    assert arcs[Color.GREEN] is None
    stage = build_twocolor_stage(2, 1)
    arcs = monochromatic_arcs(stage)
    for color in (Color.RED, Color.GREEN):
        arc = arcs[color]
        inner = [p.u for p in arc.points[1:-1] if p.is_vertex and stage.role(p.u) == Role.RAMIFICATION]
        assert all(stage.color(x) == color for x in inner)
        assert stage.color(arc.start.u) == stage.color(arc.end.u) == color


@pytest.fixture(scope='module')
def deep_stage():
    return build_twocolor_stage(3, 2)


@pytest.mark.parametrize("kind, expected", [
    ('red', EndpointKind.RED_SO_FAR),
    ('green', EndpointKind.GREEN_SO_FAR),
    ('alternating', EndpointKind.ALTERNATING)])
def test_type_witnesses(deep_stage, kind, expected):
    witnesses = [type_witness(deep_stage, kind, ''.join(bits)) for bits in itertools.product('01', repeat=3)]
    assert len({w.last for w in witnesses}) == 8
    for w in witnesses:
        assert w.depth == 3
        assert classify_endpoint(deep_stage, w) == expected
    for a, b in itertools.combinations(witnesses, 2):
        assert a.last not in deep_stage.descendants(b.last)
        assert not deep_stage.descendants(a.last) & deep_stage.descendants(b.last)


def test_classify_short_threads(deep_stage):
    root = type_witness(deep_stage, 'red', '')
    assert classify_endpoint(deep_stage, root) == EndpointKind.UNDETERMINED
    assert classify_endpoint(deep_stage, type_witness(deep_stage, 'red', '1')) == EndpointKind.RED_SO_FAR
    assert classify_endpoint(deep_stage, type_witness(deep_stage, 'alternating', '0')) == \
        EndpointKind.UNDETERMINED


def test_classify_rejects_bad_threads(deep_stage):
    red = type_witness(deep_stage, 'red', '00')
    green = type_witness(deep_stage, 'green', '00')
    with pytest.raises(ValueError):
        classify_endpoint(deep_stage, EndpointAddress((red.thread[0], green.thread[1])))
    with pytest.raises(ValueError):
        classify_endpoint(build_wazewski_stage([3], 1, 2), red)
    with pytest.raises(ValueError):
        EndpointAddress(())


def test_witness_resolution():
    with pytest.raises(ResolutionError):
        type_witness(build_twocolor_stage(1, 2), 'red', '01')
    with pytest.raises(ResolutionError):
        type_witness(build_twocolor_stage(2, 1), 'green', '0')
    with pytest.raises(ValueError):
        type_witness(build_twocolor_stage(1, 2), 'blue', '0')


def test_witness_without_green_block():
    # a single block per arm carries red marks only
    stage = build_twocolor_stage(1, 2, blocks=1)
    with pytest.raises(ResolutionError):
        type_witness(stage, 'green', '')
    assert type_witness(stage, 'red', '').depth == 0


def test_single_step_refinement():
    assert refine_wazewski(build_wazewski_stage([3, 4], 1, 2)) == build_wazewski_stage([3, 4], 2, 2)
    assert refine_twocolor(build_twocolor_stage(1, 1)) == build_twocolor_stage(2, 1)
    with pytest.raises(ValueError):
        refine_twocolor(build_wazewski_stage([3], 0, 1))


def test_path_distance_matches_arcs():
    stage = build_wazewski_stage([3, 4], 1, 2)
    rng = random.Random(11)
    for _ in range(50):
        x, y = random_point(stage, rng), random_point(stage, rng)
        assert path_distance(stage, x, y) == stage.arc_between(x, y).length
        assert path_distance(stage, x, x) == 0
    u, w = sorted(stage.edges)[0]
    assert path_distance(stage, GeometricPoint(u), GeometricPoint(w)) == stage.edges[(u, w)]
    assert diameter(stage.whole_region()) == stage.diameter()


def test_vertex_types():
    stage = build_twocolor_stage(0, 1)
    assert stage.vertex_type(0) == (4, Color.RED)
    assert stage.vertex_type(1) == (4, Color.RED)
    assert stage.vertex_type(2) == (3, Color.GREEN)
    assert stage.vertex_type(3) == (1, Color.NONE)
    assert stage.is_bare(1) and stage.is_bare(2)
    assert not stage.is_bare(0) and not stage.is_bare(3)
    refined = refine_twocolor(stage)
    assert refined.vertex_type(1) == (4, Color.RED)
    assert not refined.is_bare(1)


def test_branches(star):
    assert star.in_branch(0, 1, 1)
    assert not star.in_branch(0, 1, 2)
    assert star.in_branch(1, 0, 2)
    stage = build_twocolor_stage(0, 1)
    arm = stage.branch_types(0, 1)
    assert arm[(4, Color.RED)] == 1 and arm[(3, Color.GREEN)] == 1 and arm[(1, Color.NONE)] == 1
    assert arm['bare'] == 2
    rest = stage.branch_types(1, 0)
    assert rest[(4, Color.RED)] == 4 and rest[(3, Color.GREEN)] == 3 and rest[(1, Color.NONE)] == 3
    assert rest['bare'] == 6


def test_local_wazewski_refinement():
    stage = build_wazewski_stage([3], 0, 1)
    refined = refine_wazewski(stage, [(0, 1)])
    assert refined.index == 1
    assert len(refined.vertices) == 6
    assert refined.distance(v(0), v(1)) == Fraction(1, 2)
    assert refined.length(0, 2) == Fraction(1, 2)
    new = [w for w in refined.vertices if refined.vertices[w].born == 1]
    assert sorted(refined.degree(w) for w in new) == [1, 3]
    deeper = refine_wazewski(refined, [edge for edge in refined.edges if 1 in edge])
    assert min(deeper.edges.values()) == Fraction(1, 16)
    with pytest.raises(ValueError):
        refine_wazewski(stage, [(1, 2)])


def test_local_twocolor_refinement():
    stage = build_twocolor_stage(0, 1)
    refined = refine_twocolor(stage, [1, 2])
    assert refined.degree(1) == 4 and refined.degree(2) == 3
    assert refined.is_bare(4)
    assert [arm.kind for arm in refined.attached_arms(1)] == ['T0', 'T0']
    assert [arm.kind for arm in refined.attached_arms(2)] == ['T1']
    assert all(arm.length == Fraction(1, 8) for arm in refined.arms if arm.born == 1)
    with pytest.raises(ValueError):
        refine_twocolor(refined, [1])
    with pytest.raises(ValueError):
        refine_twocolor(stage, [3])


def test_block_of():
    assert block_of(Fraction(1, 4)) == 0
    assert block_of(Fraction(5, 8)) == 1
    assert block_of(Fraction(7, 10)) == 2
    with pytest.raises(ValueError):
        block_of(1)


def test_extend_arm():
    stage = build_twocolor_stage(0, 1)
    arm = stage.arm_of(3)
    assert arm_blocks(stage, arm) == 2
    extended = extend_arm(stage, 3, 4)
    longer = extended.arm_of(3)
    assert arm_blocks(extended, longer) == 4
    assert longer.length == arm.length
    assert [extended.color(x) for x in longer.marks] == [Color.RED, Color.GREEN, Color.RED, Color.GREEN]
    assert [block_of(extended.label(x)) for x in longer.marks] == [0, 1, 2, 3]
    assert all(extended.is_bare(x) for x in longer.marks)
    for a, b in itertools.combinations(sorted(stage.vertices), 2):
        assert extended.vertex_distance(a, b) == stage.vertex_distance(a, b)
    assert extend_arm(stage, 3, 2) is stage
    with pytest.raises(ValueError):
        extend_arm(stage, 2, 4)


def test_attached_length():
    stage = extend_arm(build_twocolor_stage(0, 1), 3, 4)
    marks = stage.arm_of(3).marks
    assert [attached_length(stage, x) for x in marks] == [
        Fraction(1, 8), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)]
    refined = refine_twocolor(stage, [marks[2]])
    assert all(arm.length == Fraction(1, 16) for arm in refined.attached_arms(marks[2]))


def test_lift_point():
    stage = build_twocolor_stage(0, 1)
    extended = extend_arm(stage, 3, 4)
    x = stage.point_on_edge(2, 3, stage.length(2, 3) / 2)
    lifted = lift_point(stage, extended, x)
    assert extended.distance(v(2), lifted) == stage.distance(v(2), x)
    assert extended.distance(v(3), lifted) == stage.distance(v(3), x)
    assert lift_point(stage, extended, v(2)) == v(2)
    y = stage.point_on_edge(0, 1, Fraction(1, 16))
    assert lift_point(stage, extended, y) == y
    coarse = refine_wazewski(build_wazewski_stage([3], 0, 1), [(0, 1)])
    with pytest.raises(ValueError):
        lift_point(coarse, build_wazewski_stage([3], 0, 1), coarse.point_on_edge(0, 4, Fraction(1, 8)))
