"""
Tests for polygon-level operations: simplicity, general position,
perturbation, crossing enumeration and crossing order
"""

import random
from fractions import Fraction

import pytest

from src.constructions.generators import gen_star
from src.core.errors import (
    EdgeDoesNotCross,
    InvalidParams,
    InvalidPolygon,
    NotInGeneralPosition,
    PerturbationFailed,
)
from src.geometry.kernel import Orientation, Point, Segment, lerp, orient
from src.geometry.polygon import (
    EdgeRef,
    Polygon,
    PolygonTag,
    VertexRef,
    ViolationKind,
    bounding_box,
    count_line_crossings,
    crossing_order_along,
    crossing_report,
    edges_crossing,
    enumerate_crossings,
    general_position,
    is_simple,
    order_along_q_edges,
    perturb_to_general_position,
    self_crossing_points,
    self_position,
)
from src.search.oracle import random_polygon

P, Q = PolygonTag.P, PolygonTag.Q


def triangle(*coords) -> Polygon:
    return Polygon.from_coordinates(coords)


class TestPolygon:
    def test_needs_three_vertices(self):
        with pytest.raises(InvalidPolygon):
            Polygon.from_coordinates([(0, 0), (1, 0)])

    def test_zero_length_edge_rejected(self):
        with pytest.raises(InvalidPolygon):
            Polygon.from_coordinates([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_closing_edge(self, unit_square):
        assert unit_square.edge(3) == Segment(Point(0, 1), Point(0, 0))

    def test_adjacency_wraps(self, unit_square):
        assert unit_square.adjacent(0, 3)
        assert unit_square.adjacent(1, 2)
        assert not unit_square.adjacent(0, 2)
        assert not unit_square.adjacent(1, 1)

    def test_refs_print_compactly(self):
        assert str(EdgeRef(P, 3)) == "P3"
        assert str(VertexRef(Q, 0)) == "Qv0"


class TestIsSimple:
    def test_unit_square(self, unit_square):
        assert is_simple(unit_square)

    def test_bowtie(self):
        assert not is_simple(Polygon.from_coordinates([(0, 0), (2, 2), (2, 0), (0, 2)]))

    def test_pentagram(self):
        star = gen_star(5, [Fraction(i, 5) for i in range(5)])
        assert not is_simple(star)
        assert len(self_crossing_points(star)) == 5

    def test_vertex_touching_edge(self):
        # vertex 3 touches edge 0 from above
        assert not is_simple(Polygon.from_coordinates([(0, 0), (4, 0), (4, 2), (2, 0), (0, 2)]))

    def test_adjacent_fold_back(self):
        assert not is_simple(Polygon.from_coordinates([(0, 0), (2, 0), (1, 0), (1, 3)]))

    def test_straight_vertex_is_allowed(self):
        assert is_simple(Polygon.from_coordinates([(0, 0), (1, 0), (2, 0), (2, 2)]))

    def test_heptagon_is_simple(self, figure4):
        heptagon, triangle_ = figure4
        assert is_simple(heptagon) and is_simple(triangle_)


class TestGeneralPosition:
    def test_figure4_ok(self, figure4):
        assert general_position(*figure4).ok

    def test_disjoint_ok(self, disjoint_triangles):
        assert general_position(*disjoint_triangles).ok

    def test_identical_triangles_share_vertices(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        report = general_position(t, t)
        assert not report.ok
        assert ViolationKind.SHARED_VERTEX in report.kinds()
        assert ViolationKind.COLLINEAR_OVERLAP in report.kinds()
        assert len(set(report.violations)) == len(report.violations)

    def test_vertex_on_edge(self):
        p = triangle((0, 0), (4, 0), (2, 3))
        q = triangle((2, 0), (3, -2), (1, -2))
        report = general_position(p, q)
        assert report.kinds() == {ViolationKind.VERTEX_ON_EDGE}
        violation = report.violations[0]
        assert violation.vertices == (VertexRef(Q, 0), VertexRef(P, 0), VertexRef(P, 1))
        assert violation.point == Point(2, 0)

    def test_concurrent_crossings(self):
        # both edges of q through (1, 1), where p's diagonal also passes
        p = Polygon.from_coordinates([(0, 0), (2, 2), (3, 0)])
        q = Polygon.from_coordinates([(0, 2), (2, 0), (2, 1), (0, 1)])
        report = general_position(p, q)
        assert ViolationKind.CONCURRENT_CROSSINGS in report.kinds()
        concurrent = [v for v in report.violations if v.kind is ViolationKind.CONCURRENT_CROSSINGS]
        assert concurrent[0].point == Point(1, 1)

    def test_self_touch(self):
        bent = Polygon.from_coordinates([(0, 0), (2, 0), (1, 0), (1, 3)])
        far = triangle((10, 10), (12, 10), (11, 12))
        assert ViolationKind.SELF_TOUCH in general_position(bent, far).kinds()

    def test_self_position_ignores_other_polygon(self):
        assert self_position(triangle((0, 0), (4, 0), (0, 4))).ok
        star = gen_star(7, [Fraction(i, 7) for i in range(7)])
        assert self_position(star, Q).ok

    def test_report_lists_involved_vertices(self):
        p = triangle((0, 0), (4, 0), (2, 3))
        q = triangle((2, 0), (3, -2), (1, -2))
        assert general_position(p, q).involved_vertices() == {VertexRef(Q, 0), VertexRef(P, 0), VertexRef(P, 1)}

    def test_describe(self):
        p = triangle((0, 0), (4, 0), (2, 3))
        q = triangle((2, 0), (3, -2), (1, -2))
        assert general_position(p, q).violations[0].describe() == "VertexOnEdge: Qv0, Pv0, Pv1 at (2, 0)"


class TestPerturbation:
    def test_already_general_is_unchanged(self, figure4):
        p, q = perturb_to_general_position(*figure4, seed=3)
        assert p is figure4[0] and q is figure4[1]

    def test_identical_triangles(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        p, q = perturb_to_general_position(t, t, seed=1, magnitude=Fraction(1, 1000))
        assert general_position(p, q).ok

    def test_offsets_are_bounded(self):
        p0 = triangle((0, 0), (4, 0), (2, 3))
        q0 = triangle((2, 0), (3, -2), (1, -2))
        magnitude = Fraction(1, 1000)
        p, q = perturb_to_general_position(p0, q0, seed=5, magnitude=magnitude)
        assert general_position(p, q).ok
        for before, after in zip(p0.vertices + q0.vertices, p.vertices + q.vertices):
            assert abs(after.x - before.x) <= magnitude
            assert abs(after.y - before.y) <= magnitude
        # the untouched vertex keeps its place
        assert p.vertices[2] == p0.vertices[2]

    def test_deterministic_in_seed(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        assert perturb_to_general_position(t, t, seed=9) == perturb_to_general_position(t, t, seed=9)

    def test_rejects_non_positive_magnitude(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        with pytest.raises(InvalidParams):
            perturb_to_general_position(t, t, seed=1, magnitude=0)

    def test_gives_up_after_retries(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        with pytest.raises(PerturbationFailed):
            perturb_to_general_position(t, t, seed=1, retries=0)


class TestCrossings:
    def test_figure4_total(self, figure4):
        assert crossing_report(*figure4).total == 12

    def test_total_is_symmetric(self, figure4):
        heptagon, triangle_ = figure4
        assert crossing_report(triangle_, heptagon).total == 12

    def test_disjoint(self, disjoint_triangles):
        assert crossing_report(*disjoint_triangles).total == 0

    def test_degenerate_pair_rejected(self):
        t = triangle((0, 0), (4, 0), (0, 4))
        with pytest.raises(NotInGeneralPosition) as info:
            crossing_report(t, t)
        assert not info.value.report.ok

    def test_enumerate_skips_the_check(self):
        p = triangle((0, 0), (4, 0), (2, 3))
        q = triangle((2, 0), (3, -2), (1, -2))
        assert enumerate_crossings(p, q).total == 0

    def test_crossing_points_are_exact(self, figure4):
        points = {(c.p_edge.index, c.q_edge.index): c.point for c in crossing_report(*figure4).crossings}
        assert points[(2, 1)] == Point(Fraction(16, 7), Fraction(4, 7))
        assert points[(6, 0)] == Point(-3, -2)

    def test_edges_crossing(self, figure4):
        p, q = figure4
        assert edges_crossing(EdgeRef(Q, 0), p, q) == {EdgeRef(P, i) for i in (1, 2, 4, 6)}
        assert edges_crossing(EdgeRef(Q, 1), p, q) == {EdgeRef(P, i) for i in (0, 1, 2, 3)}
        assert edges_crossing(EdgeRef(Q, 2), p, q) == {EdgeRef(P, i) for i in (0, 3, 4, 6)}

    def test_edges_crossing_needs_q_edge(self, figure4):
        with pytest.raises(InvalidParams):
            edges_crossing(EdgeRef(P, 0), *figure4)

    def test_edges_crossing_out_of_range(self, figure4):
        with pytest.raises(InvalidParams):
            edges_crossing(EdgeRef(Q, 3), *figure4)

    def test_edges_crossing_map_sums_to_total(self, figure4):
        report = crossing_report(*figure4)
        table = report.edges_crossing_map(3)
        assert sum(len(refs) for refs in table.values()) == report.total
        assert len(report.pairs()) == report.total


class TestCrossingOrder:
    @pytest.fixture
    def comb_over_line(self):
        q = triangle((0, 0), (10, 0), (5, -5))
        p = Polygon.from_coordinates([(2, 1), (2, -1), (5, -1), (5, 1), (7, 1), (7, -1), (8, -1), (8, 2)])
        return p, q

    def test_order_from_source(self, comb_over_line):
        p, q = comb_over_line
        others = [EdgeRef(P, 4), EdgeRef(P, 0), EdgeRef(P, 2)]
        assert crossing_order_along(EdgeRef(Q, 0), others, p, q) == [EdgeRef(P, 0), EdgeRef(P, 2), EdgeRef(P, 4)]

    def test_non_crossing_edge(self, comb_over_line):
        p, q = comb_over_line
        with pytest.raises(EdgeDoesNotCross):
            crossing_order_along(EdgeRef(Q, 0), [EdgeRef(P, 1)], p, q)

    def test_same_polygon_edge(self, comb_over_line):
        p, q = comb_over_line
        with pytest.raises(EdgeDoesNotCross):
            crossing_order_along(EdgeRef(Q, 0), [EdgeRef(Q, 1)], p, q)

    def test_order_along_figure4_edges(self, figure4):
        p, q = figure4
        orders = order_along_q_edges(p, q, crossing_report(p, q))
        assert orders[0] == [EdgeRef(P, i) for i in (6, 4, 2, 1)]
        assert orders[1] == [EdgeRef(P, i) for i in (1, 2, 3, 0)]
        assert orders[2] == [EdgeRef(P, i) for i in (0, 3, 4, 6)]


class TestHelpers:
    def test_line_crossings_of_square(self, unit_square):
        line = Segment(Point(-1, Fraction(1, 2)), Point(2, Fraction(1, 2)))
        assert count_line_crossings(unit_square, line) == 2

    def test_bounding_box(self, disjoint_triangles):
        assert bounding_box(disjoint_triangles) == (0, 0, 12, 12)


def long_line(rng, grid):
    """A segment through two random rational points, extended far past the grid"""
    while True:
        a = Point(Fraction(rng.randint(0, 7 * grid), 7), Fraction(rng.randint(0, 7 * grid), 7))
        b = Point(Fraction(rng.randint(0, 7 * grid), 7), Fraction(rng.randint(0, 7 * grid), 7))
        if a != b:
            break
    reach = Fraction(100 * grid)
    return Segment(lerp(a, b, -reach), lerp(a, b, reach + 1))


class TestLineParity:
    def test_random_polygons_cross_a_line_evenly(self):
        rng = random.Random(31)
        checked = 0
        while checked < 300:
            n, grid = rng.randint(3, 8), rng.randint(4, 9)
            poly = random_polygon(n, grid, rng.random() < 0.5, rng.randrange(2**32))
            line = long_line(rng, grid)
            if any(orient(line.source, line.target, v) is Orientation.COLLINEAR for v in poly.vertices):
                continue
            checked += 1
            assert count_line_crossings(poly, line) % 2 == 0

    def test_odd_polygon_edge_misses_an_edge(self):
        rng = random.Random(32)
        for _ in range(100):
            n = rng.choice([3, 5, 7])
            poly = random_polygon(n, 8, False, rng.randrange(2**32))
            line = long_line(rng, 8)
            if any(orient(line.source, line.target, v) is Orientation.COLLINEAR for v in poly.vertices):
                continue
            assert count_line_crossings(poly, line) <= n - 1
