"""
Search oracle

Brute-force and randomized searches over small grid configurations.
They never prove a maximum; they look for pairs that beat the closed
form bounds and confirm the generators' witnesses are optimal at desk
scale.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..analysis.bounds import BoundSpec, max_intersections
from ..config.settings import get_config
from ..core.errors import (
    BudgetExceeded,
    InvalidParams,
    OracleMismatch,
    PerturbationFailed,
    SamplingBudgetExhausted,
)
from ..geometry.kernel import Point, format_rational
from ..geometry.polygon import (
    Polygon,
    crossing_report,
    enumerate_crossings,
    is_simple,
    perturb_to_general_position,
)
from ..utils.logger import PerformanceLogger, get_logger
from .grid import (
    InnerPolygons,
    SegmentTable,
    canonical_outer_polygons,
    inner_polygon,
    predicate_estimate,
    score_outer,
)

logger = get_logger(__name__)

Pair = Tuple[Polygon, Polygon]


class SearchMode(Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOMIZED = "randomized"


@dataclass
class SearchConfig:
    p: int
    q: int
    require_simple: bool = True
    grid: int = 5
    mode: SearchMode = SearchMode.RANDOMIZED
    seed: int = 0
    iterations: int = 1000
    workers: int = 1
    progress: Optional[bool] = None
    budget: Optional[int] = None

    def __post_init__(self):
        if self.progress is None:
            self.progress = get_config().SEARCH_PROGRESS
        if self.p < 3 or self.q < 3:
            raise InvalidParams(f"polygons need at least 3 vertices, got p={self.p}, q={self.q}")
        if self.grid < 3:
            raise InvalidParams(f"grid side must be at least 3, got {self.grid}")
        if max(self.p, self.q) > self.grid * self.grid:
            raise InvalidParams(f"a {self.grid}×{self.grid} grid has fewer than {max(self.p, self.q)} points")
        if self.iterations < 0 or self.workers < 1:
            raise InvalidParams("iterations must be non-negative and workers positive")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "require_simple": self.require_simple,
            "grid": self.grid,
            "mode": self.mode.value,
            "seed": self.seed,
            "iterations": self.iterations,
            "workers": self.workers,
        }


def encode_polygon(poly: Polygon) -> List[List[str]]:
    return [[format_rational(v.x), format_rational(v.y)] for v in poly.vertices]


def _pair_key(pair: Pair) -> Tuple:
    return tuple(tuple((v.x, v.y) for v in poly.vertices) for poly in pair)


@dataclass
class Finding:
    """A pair that breaks the bound or the crossing parity"""

    kind: str
    total: int
    pair: Pair

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "total": self.total,
            "p": encode_polygon(self.pair[0]),
            "q": encode_polygon(self.pair[1]),
        }


@dataclass
class SearchResult:
    config: SearchConfig
    best_total: int
    witness: Optional[Pair]
    evaluated: int
    bound: BoundSpec
    violations: List[Finding] = field(default_factory=list)
    achieved_bound: bool = field(init=False)

    def __post_init__(self):
        self.achieved_bound = self.best_total == self.bound.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "best_total": self.best_total,
            "witness": {
                "p": encode_polygon(self.witness[0]),
                "q": encode_polygon(self.witness[1]),
            } if self.witness else None,
            "evaluated": self.evaluated,
            "bound": self.bound.to_dict(),
            "achieved_bound": self.achieved_bound,
            "violations": [f.to_dict() for f in self.violations],
        }


@dataclass
class CertificationReport:
    result: SearchResult
    violations: List[Finding]
    parity_violations: List[Finding]

    @property
    def evaluated(self) -> int:
        return self.result.evaluated

    @property
    def passed(self) -> bool:
        return not self.violations and not self.parity_violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            **self.result.to_dict(),
            "violations": [f.to_dict() for f in self.violations],
            "parity_violations": [f.to_dict() for f in self.parity_violations],
            "passed": self.passed,
        }


class _Tally:
    """Running best and every bound or parity breach seen by one search stream"""

    def __init__(self, bound: BoundSpec):
        self.bound = bound
        self.evaluated = 0
        self.best_total = -1
        self.witness: Optional[Pair] = None
        self.over_bound: List[Finding] = []
        self.odd: List[Finding] = []

    def record_breaches(self, pair: Pair, total: int):
        if total > self.bound.value:
            logger.warning(f"pair with {total} crossings exceeds bound {self.bound.value}")
            self.over_bound.append(Finding("over_bound", total, pair))
        if total % 2:
            logger.warning(f"pair with odd crossing total {total}")
            self.odd.append(Finding("odd_total", total, pair))

    def observe(self, pair: Pair, total: int):
        self.evaluated += 1
        self.record_breaches(pair, total)
        if total > self.best_total:
            self.best_total, self.witness = total, pair

    @classmethod
    def merged(cls, bound: BoundSpec, tallies: Sequence["_Tally"]) -> "_Tally":
        merged = cls(bound)
        for tally in tallies:
            merged.evaluated += tally.evaluated
            merged.over_bound += tally.over_bound
            merged.odd += tally.odd
            if tally.witness is None:
                continue
            if (tally.best_total > merged.best_total
                    or (tally.best_total == merged.best_total and _pair_key(tally.witness) < _pair_key(merged.witness))):
                merged.best_total, merged.witness = tally.best_total, tally.witness
        return merged


def _angular_order(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Sort points by exact angle around their centroid"""
    cx = Fraction(sum(x for x, _ in points), len(points))
    cy = Fraction(sum(y for _, y in points), len(points))

    def half(dx: Fraction, dy: Fraction) -> int:
        if dx == 0 and dy == 0:
            return -1
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(a, b) -> int:
        ax, ay, bx, by = a[0] - cx, a[1] - cy, b[0] - cx, b[1] - cy
        ha, hb = half(ax, ay), half(bx, by)
        if ha != hb:
            return -1 if ha < hb else 1
        turn = ax * by - ay * bx
        if turn != 0:
            return -1 if turn > 0 else 1
        da, db = ax * ax + ay * ay, bx * bx + by * by
        return (da > db) - (da < db)

    return sorted(points, key=cmp_to_key(compare))


def random_polygon(n: int, grid: int, simple: bool, seed: int) -> Polygon:
    """
    Polygon on n distinct points of the grid, deterministic in seed

    For simple polygons each sample is tried in drawn order and then
    sorted by angle around its centroid; samples are redrawn until one
    passes is_simple or the sampling budget runs out.
    """
    if n < 3 or grid < 3:
        raise InvalidParams(f"need n ≥ 3 and grid ≥ 3, got n={n}, grid={grid}")
    if n > grid * grid:
        raise InvalidParams(f"a {grid}×{grid} grid has fewer than {n} points")

    rng = random.Random(seed)
    budget = get_config().SAMPLING_BUDGET
    for _ in range(budget):
        points = [(i // grid, i % grid) for i in rng.sample(range(grid * grid), n)]
        poly = Polygon.from_coordinates(points)
        if not simple or is_simple(poly):
            return poly
        poly = Polygon.from_coordinates(_angular_order(points))
        if is_simple(poly):
            return poly
    raise SamplingBudgetExhausted(f"no simple {n}-gon found on a {grid}×{grid} grid in {budget} samples")


def _evaluate(pair: Pair, rng: random.Random, config: SearchConfig) -> Optional[Tuple[Pair, int]]:
    """Count a sampled pair, perturbing it once if it is degenerate"""
    try:
        p_poly, q_poly = perturb_to_general_position(pair[0], pair[1], seed=rng.randrange(2**32), retries=1)
    except PerturbationFailed:
        logger.debug("skipping a pair still degenerate after perturbation")
        return None
    if config.require_simple and not (is_simple(p_poly) and is_simple(q_poly)):
        return None
    return (p_poly, q_poly), enumerate_crossings(p_poly, q_poly).total


def _move(pair: Pair, rng: random.Random, config: SearchConfig) -> Optional[Pair]:
    """Move one vertex of one polygon to a random grid point"""
    which = rng.randrange(2)
    poly = pair[which]
    index = rng.randrange(len(poly))
    target = Point(rng.randrange(config.grid), rng.randrange(config.grid))
    if target in poly.vertices:
        return None
    vertices = list(poly.vertices)
    vertices[index] = target
    moved = Polygon(tuple(vertices))
    if config.require_simple and not is_simple(moved):
        return None
    return (moved, pair[1]) if which == 0 else (pair[0], moved)


def _climb(config: SearchConfig, bound: BoundSpec, worker: int, iterations: int) -> _Tally:
    """One hill-climbing stream seeded with seed + worker"""
    rng = random.Random(config.seed + worker)
    patience = get_config().HILL_CLIMB_PATIENCE
    tally = _Tally(bound)
    current: Optional[Pair] = None
    current_total = -1
    stale = 0

    for _ in range(iterations):
        restarting = current is None or stale >= patience
        if restarting:
            candidate = (
                random_polygon(config.p, config.grid, config.require_simple, rng.randrange(2**32)),
                random_polygon(config.q, config.grid, config.require_simple, rng.randrange(2**32)),
            )
        else:
            candidate = _move(current, rng, config)
            if candidate is None:
                stale += 1
                continue

        scored = _evaluate(candidate, rng, config)
        if scored is None:
            if restarting:
                current = None
            else:
                stale += 1
            continue

        evaluated_pair, total = scored
        tally.observe(evaluated_pair, total)
        if restarting or total > current_total:
            current, current_total, stale = candidate, total, 0
        else:
            if total == current_total:
                current = candidate
            stale += 1

    return tally


def _randomized(config: SearchConfig, bound: BoundSpec) -> _Tally:
    base, extra = divmod(config.iterations, config.workers)
    shares = [base + (1 if i < extra else 0) for i in range(config.workers)]
    if config.workers == 1:
        return _climb(config, bound, 0, shares[0])
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        tallies = list(pool.map(lambda i: _climb(config, bound, i, shares[i]), range(config.workers)))
    return _Tally.merged(bound, tallies)


def _exhaustive(config: SearchConfig, bound: BoundSpec) -> _Tally:
    outer_n, inner_n = min(config.p, config.q), max(config.p, config.q)
    outer_is_p = config.p <= config.q
    budget = config.budget or get_config().SEARCH_BUDGET
    estimate = predicate_estimate(outer_n, inner_n, config.grid)
    if estimate > budget:
        raise BudgetExceeded(
            f"exhaustive ({config.p}, {config.q}) on a {config.grid}×{config.grid} grid needs ~{estimate:,} predicate calls, budget is {budget:,}"
        )

    table = SegmentTable(config.grid)
    inner = InnerPolygons(table, inner_n, config.require_simple)
    tally = _Tally(bound)

    def oriented(outer: Polygon, other: Polygon) -> Pair:
        return (outer, other) if outer_is_p else (other, outer)

    outers = canonical_outer_polygons(table, outer_n, config.require_simple)
    for indices, outer in tqdm(outers, desc="outer polygons", unit="poly", disable=not config.progress):
        score, totals = score_outer(table, inner, indices, outer, bound.value)
        if score.evaluated == 0:
            continue
        tally.evaluated += score.evaluated
        for k in sorted(set(score.over_bound.tolist()) | set(score.odd.tolist())):
            tally.record_breaches(oriented(outer, inner_polygon(table, inner, k)), int(totals[k]))
        if score.best_total > tally.best_total:
            tally.best_total = score.best_total
            tally.witness = oriented(outer, inner_polygon(table, inner, score.best_inner))

    if tally.witness is not None:
        replayed = crossing_report(*tally.witness).total
        if replayed != tally.best_total:
            raise OracleMismatch(f"grid kernel counted {tally.best_total} crossings, exact replay gives {replayed}")
    return tally


def _run(config: SearchConfig) -> Tuple[_Tally, BoundSpec]:
    bound = max_intersections(config.p, config.q, config.require_simple)
    with PerformanceLogger(f"{config.mode.value} search ({config.p}, {config.q}) grid={config.grid}"):
        if config.mode is SearchMode.EXHAUSTIVE:
            tally = _exhaustive(config, bound)
        else:
            tally = _randomized(config, bound)
    logger.info(
        f"{config.mode.value} search ({config.p}, {config.q}): best {tally.best_total} of bound {bound.value} "
        f"over {tally.evaluated} pairs"
    )
    return tally, bound


def _result(config: SearchConfig, tally: _Tally, bound: BoundSpec) -> SearchResult:
    return SearchResult(
        config=config,
        best_total=max(tally.best_total, 0),
        witness=tally.witness,
        evaluated=tally.evaluated,
        bound=bound,
        violations=list(tally.over_bound),
    )


def search_max(config: SearchConfig) -> SearchResult:
    """Best crossing count found for the configuration, with its witness pair"""
    tally, bound = _run(config)
    return _result(config, tally, bound)


def certify_never_exceeds(config: SearchConfig) -> CertificationReport:
    """Run the search and report every evaluated pair that beats the bound or has an odd total"""
    tally, bound = _run(config)
    report = CertificationReport(_result(config, tally, bound), tally.over_bound, tally.odd)
    if report.passed:
        logger.info(f"certified: no pair among {report.evaluated} exceeds {bound.value}")
    else:
        logger.warning(f"certification failed: {len(report.violations)} over bound, {len(report.parity_violations)} odd")
    return report
