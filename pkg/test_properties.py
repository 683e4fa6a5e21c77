"""
Seeded property checks over random polygon pairs

Every pair in general position must have an even crossing count no
larger than its closed-form bound; simple odd pairs must also admit a
q-edge triple sharing at most one crossing p-edge.
"""

import random

import pytest

from src.analysis.bounds import audit_bound_chain, find_triple, max_intersections
from src.core.errors import PerturbationFailed
from src.geometry.polygon import crossing_report, is_simple, perturb_to_general_position
from src.search.oracle import random_polygon

DESK_PAIRS = 200
FULL_PAIRS = 10_000


def random_pairs(count, seed, simple):
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        p, q = rng.randint(3, 8), rng.randint(3, 8)
        grid = rng.randint(4, 9)
        p_poly = random_polygon(p, grid, simple, rng.randrange(2**32))
        q_poly = random_polygon(q, grid, simple, rng.randrange(2**32))
        try:
            p_poly, q_poly = perturb_to_general_position(p_poly, q_poly, seed=rng.randrange(2**32))
        except PerturbationFailed:
            continue
        if simple and not (is_simple(p_poly) and is_simple(q_poly)):
            continue
        produced += 1
        yield p_poly, q_poly


def check_pair(p_poly, q_poly, simple):
    report = crossing_report(p_poly, q_poly)
    bound = max_intersections(len(p_poly), len(q_poly), simple).value
    assert report.total % 2 == 0
    assert report.total <= bound
    assert crossing_report(q_poly, p_poly).total == report.total

    per_edge = report.edges_crossing_map(len(q_poly))
    assert sum(len(refs) for refs in per_edge.values()) == report.total
    limit = len(p_poly) - 1 if len(p_poly) % 2 else len(p_poly)
    assert all(len(refs) <= limit for refs in per_edge.values())

    if simple and len(p_poly) % 2 and len(q_poly) % 2:
        assert find_triple(p_poly, q_poly).size <= 1
        assert audit_bound_chain(p_poly, q_poly).passed


@pytest.mark.parametrize("simple", [True, False])
def test_random_pairs(simple):
    for p_poly, q_poly in random_pairs(DESK_PAIRS, seed=2024, simple=simple):
        check_pair(p_poly, q_poly, simple)


@pytest.mark.slow
@pytest.mark.parametrize("simple", [True, False])
def test_random_pairs_full(simple):
    for p_poly, q_poly in random_pairs(FULL_PAIRS, seed=7, simple=simple):
        check_pair(p_poly, q_poly, simple)
