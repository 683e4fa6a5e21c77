"""
Tests for the grid kernel and the search oracle

Desk-scale runs only; the (3, 5) exhaustive run and the larger
randomized sweeps carry the slow marker.
"""

import math

import pytest

from src.core.errors import BudgetExceeded, InvalidParams, SamplingBudgetExhausted
from src.geometry.kernel import Point
from src.geometry.polygon import crossing_report, general_position, is_simple
from src.search.grid import (
    InnerPolygons,
    SegmentTable,
    cyclic_orders,
    grid_symmetries,
    order_count,
    predicate_estimate,
)
from src.search.oracle import (
    SearchConfig,
    SearchMode,
    certify_never_exceeds,
    random_polygon,
    search_max,
)


def exhaustive(p, q, simple=True, grid=5, **kwargs):
    return SearchConfig(p=p, q=q, require_simple=simple, grid=grid, mode=SearchMode.EXHAUSTIVE, **kwargs)


def randomized(p, q, simple=True, grid=6, **kwargs):
    return SearchConfig(p=p, q=q, require_simple=simple, grid=grid, mode=SearchMode.RANDOMIZED, **kwargs)


class TestGridHelpers:
    def test_cyclic_orders(self):
        assert cyclic_orders(3) == [(0, 1, 2)]
        assert len(cyclic_orders(5)) == order_count(5) == 12

    def test_symmetries_stay_on_grid(self):
        grid = 4
        points = {(x, y) for x in range(grid) for y in range(grid)}
        images = set()
        for sym in grid_symmetries(grid):
            assert {sym(x, y) for x, y in points} == points
            images.add(sym(0, 1))
        assert len(images) == 8

    def test_estimate_grows_with_grid(self):
        assert predicate_estimate(3, 3, 5) < 10**8
        assert predicate_estimate(5, 5, 7) > 10**8


class TestSegmentTable:
    @pytest.fixture(scope="class")
    def table(self):
        return SegmentTable(3)

    def seg(self, table, a, b):
        return table.segment_of(table.points.index(a), table.points.index(b))

    def test_size(self, table):
        assert table.size == math.comb(9, 2)

    def test_proper_crossing(self, table):
        s, t = self.seg(table, (0, 0), (2, 2)), self.seg(table, (0, 2), (2, 0))
        assert table.proper[s, t] and table.proper[t, s]
        assert not table.bad_contact[s, t]

    def test_crossing_point_id_is_shared(self, table):
        diagonals = (self.seg(table, (0, 0), (2, 2)), self.seg(table, (0, 2), (2, 0)))
        cross = (self.seg(table, (0, 1), (2, 1)), self.seg(table, (1, 0), (1, 2)))
        assert table.point_id[diagonals] == table.point_id[cross]
        assert table.crossing_points[table.point_id[diagonals]].tolist() == [1, 1, 1]

    def test_touching(self, table):
        s, t = self.seg(table, (0, 0), (2, 0)), self.seg(table, (1, 0), (1, 2))
        assert table.bad_contact[s, t] and not table.proper[s, t]

    def test_overlap(self, table):
        s, t = self.seg(table, (0, 0), (2, 0)), self.seg(table, (1, 0), (2, 0))
        assert table.overlap[s, t]
        u = self.seg(table, (0, 0), (1, 0))
        assert not table.overlap[t, u]

    def test_segments_through(self, table):
        mask = table.segments_through([Point(1, 1)])
        assert mask[self.seg(table, (0, 0), (2, 2))]
        assert not mask[self.seg(table, (0, 0), (2, 0))]

    def test_inner_triangles(self, table):
        inner = InnerPolygons(table, 3, require_simple=True)
        # 84 point triples, 8 of them collinear
        assert len(inner) == 76


class TestRandomPolygon:
    def test_simple_and_deterministic(self):
        poly = random_polygon(5, 10, True, 7)
        assert len(poly) == 5 and is_simple(poly)
        assert random_polygon(5, 10, True, 7) == poly

    def test_vertices_on_grid(self):
        poly = random_polygon(6, 4, False, 3)
        assert len(set(poly.vertices)) == 6
        assert all(0 <= v.x < 4 and 0 <= v.y < 4 and v.x.denominator == 1 for v in poly.vertices)

    def test_too_many_points(self):
        with pytest.raises(InvalidParams):
            random_polygon(10, 3, True, 0)

    def test_sampling_budget(self, restore_config, monkeypatch):
        restore_config({"SAMPLING_BUDGET": 5})
        monkeypatch.setattr("src.search.oracle.is_simple", lambda poly: False)
        with pytest.raises(SamplingBudgetExhausted):
            random_polygon(4, 5, True, 1)


class TestSearchConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(p=2, q=3), dict(p=3, q=3, grid=2), dict(p=10, q=3, grid=3), dict(p=3, q=3, workers=0)],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(InvalidParams):
            SearchConfig(**kwargs)

    def test_to_dict(self):
        assert exhaustive(3, 4).to_dict()["mode"] == "exhaustive"


class TestExhaustive:
    def test_two_triangles(self):
        result = search_max(exhaustive(3, 3))
        assert result.best_total == 6
        assert result.achieved_bound
        assert crossing_report(*result.witness).total == 6

    def test_triangle_and_quadrilateral(self):
        result = search_max(exhaustive(3, 4))
        assert result.best_total == 8
        p, q = result.witness
        assert (len(p), len(q)) == (3, 4)
        assert is_simple(p) and is_simple(q)

    def test_requested_order_kept(self):
        result = search_max(exhaustive(4, 3))
        assert (len(result.witness[0]), len(result.witness[1])) == (4, 3)

    def test_non_simple_certified(self):
        report = certify_never_exceeds(exhaustive(3, 3, simple=False))
        assert report.passed
        assert report.result.best_total == 6
        assert report.evaluated > 0

    def test_witness_in_general_position(self):
        result = search_max(exhaustive(3, 3, grid=4))
        assert general_position(*result.witness).ok

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceeded):
            search_max(exhaustive(5, 5, grid=7))

    def test_explicit_budget(self):
        with pytest.raises(BudgetExceeded):
            search_max(exhaustive(3, 3, budget=1000))

    @pytest.mark.slow
    def test_triangle_and_pentagon(self):
        result = search_max(exhaustive(3, 5))
        assert result.best_total == 10

    @pytest.mark.slow
    def test_certify_triangle_and_pentagon(self):
        assert certify_never_exceeds(exhaustive(3, 5)).passed


class TestRandomized:
    def test_deterministic(self):
        first = search_max(randomized(3, 4, seed=3, iterations=200))
        second = search_max(randomized(3, 4, seed=3, iterations=200))
        assert first.best_total == second.best_total
        assert first.witness == second.witness
        assert first.evaluated == second.evaluated

    def test_never_beats_bound(self):
        result = search_max(randomized(5, 5, seed=11, iterations=300))
        assert 0 <= result.best_total <= 18
        assert crossing_report(*result.witness).total == result.best_total

    def test_workers_merge_deterministically(self):
        config = randomized(3, 5, seed=5, iterations=200, workers=2)
        first, second = search_max(config), search_max(config)
        assert first.best_total == second.best_total
        assert first.witness == second.witness

    def test_certify(self):
        report = certify_never_exceeds(randomized(3, 5, simple=False, seed=2, iterations=200))
        assert report.passed
        assert report.to_dict()["passed"] is True

    def test_result_document(self):
        data = search_max(randomized(3, 3, seed=1, iterations=50)).to_dict()
        assert data["bound"]["value"] == 6
        assert data["config"]["mode"] == "randomized"
        assert set(data["witness"]) == {"p", "q"}

    @pytest.mark.slow
    @pytest.mark.parametrize("p,q", [(5, 5), (5, 7), (7, 7)])
    def test_odd_odd_sweep(self, p, q):
        report = certify_never_exceeds(randomized(p, q, grid=8, seed=p * q, iterations=20_000, workers=4))
        assert report.passed
        assert report.result.best_total <= (p - 1) * (q - 1) + 2
