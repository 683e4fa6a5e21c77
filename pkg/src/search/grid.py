"""
Integer grid kernel for exhaustive search

Every polygon in an exhaustive run has its vertices on the G×G integer
grid, so every edge is one of the C(G², 2) grid segments. The kernel
tabulates, once per grid, how each pair of segments meets (proper
crossing, improper contact, collinear overlap, and the exact crossing
point), and then scores a fixed outer polygon against every inner
polygon with numpy gathers over those tables.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from ..geometry.kernel import Point
from ..geometry.polygon import Polygon, is_simple, self_crossing_points, self_position
from ..utils.logger import get_logger

logger = get_logger(__name__)

GridPoint = Tuple[int, int]


def grid_points(grid: int) -> List[GridPoint]:
    """Grid points in index order: index = x·G + y"""
    return [(x, y) for x in range(grid) for y in range(grid)]


def grid_symmetries(grid: int):
    """The 8 symmetries of the square grid as point maps"""
    top = grid - 1
    return [
        lambda x, y: (x, y),
        lambda x, y: (top - x, y),
        lambda x, y: (x, top - y),
        lambda x, y: (top - x, top - y),
        lambda x, y: (y, x),
        lambda x, y: (top - y, x),
        lambda x, y: (y, top - x),
        lambda x, y: (top - y, top - x),
    ]


def cyclic_orders(n: int) -> List[Tuple[int, ...]]:
    """Vertex orders of an n-set up to rotation and reflection: (n−1)!/2 of them"""
    return [(0,) + rest for rest in permutations(range(1, n)) if rest[0] < rest[-1]]


def order_count(n: int) -> int:
    return math.factorial(n - 1) // 2


def predicate_estimate(outer_n: int, inner_n: int, grid: int) -> int:
    """
    Predicate calls an exhaustive run will make

    Segment-pair tables, one pass over all grid segments per canonical
    outer polygon and an n² self-check per inner polygon.
    """
    points = grid * grid
    segments = math.comb(points, 2)
    outer = math.ceil(math.comb(points, outer_n) * order_count(outer_n) / 8)
    inner = math.comb(points, inner_n) * order_count(inner_n)
    return segments * segments + outer * segments * outer_n + inner * inner_n * inner_n


def _in_box(lo: np.ndarray, hi: np.ndarray, value: np.ndarray) -> np.ndarray:
    return (lo <= value) & (value <= hi)


class SegmentTable:
    """Pairwise relations between all segments of the G×G grid"""

    def __init__(self, grid: int):
        self.grid = grid
        self.points = grid_points(grid)
        n_points = len(self.points)
        pairs = np.array(list(combinations(range(n_points), 2)), dtype=np.int64)
        coords = np.array(self.points, dtype=np.int64)

        self.seg_of = np.full((n_points, n_points), -1, dtype=np.int64)
        ids = np.arange(len(pairs))
        self.seg_of[pairs[:, 0], pairs[:, 1]] = ids
        self.seg_of[pairs[:, 1], pairs[:, 0]] = ids

        ax, ay = coords[pairs[:, 0], 0], coords[pairs[:, 0], 1]
        bx, by = coords[pairs[:, 1], 0], coords[pairs[:, 1], 1]
        self.ax, self.ay, self.bx, self.by = ax, ay, bx, by

        # row s, column t: orientation of t's endpoints against s
        rx, ry = (bx - ax)[:, None], (by - ay)[:, None]
        d1 = rx * (ay[None, :] - ay[:, None]) - ry * (ax[None, :] - ax[:, None])
        d2 = rx * (by[None, :] - ay[:, None]) - ry * (bx[None, :] - ax[:, None])
        d3, d4 = d1.T, d2.T

        self.proper = (np.sign(d1) * np.sign(d2) < 0) & (np.sign(d3) * np.sign(d4) < 0)

        min_x, max_x = np.minimum(ax, bx)[:, None], np.maximum(ax, bx)[:, None]
        min_y, max_y = np.minimum(ay, by)[:, None], np.maximum(ay, by)[:, None]
        t_source_on = (d1 == 0) & _in_box(min_x, max_x, ax[None, :]) & _in_box(min_y, max_y, ay[None, :])
        t_target_on = (d2 == 0) & _in_box(min_x, max_x, bx[None, :]) & _in_box(min_y, max_y, by[None, :])
        touching = t_source_on | t_target_on | t_source_on.T | t_target_on.T
        self.bad_contact = touching & ~self.proper

        collinear = (d1 == 0) & (d2 == 0)
        overlap_x = np.maximum(min_x, min_x.T) < np.minimum(max_x, max_x.T)
        overlap_y = np.maximum(min_y, min_y.T) < np.minimum(max_y, max_y.T)
        self.overlap = collinear & (overlap_x | overlap_y)

        self._index_crossing_points()

    @property
    def size(self) -> int:
        return len(self.ax)

    def _index_crossing_points(self):
        """Give every distinct proper crossing point an id, stored as reduced (X, Y, W) with W > 0"""
        s, t = np.nonzero(np.triu(self.proper))
        rx, ry = self.bx[s] - self.ax[s], self.by[s] - self.ay[s]
        ux, uy = self.bx[t] - self.ax[t], self.by[t] - self.ay[t]
        den = rx * uy - ry * ux
        lam = (self.ax[t] - self.ax[s]) * uy - (self.ay[t] - self.ay[s]) * ux
        X = self.ax[s] * den + lam * rx
        Y = self.ay[s] * den + lam * ry
        W = den
        sign = np.where(W < 0, -1, 1)
        X, Y, W = X * sign, Y * sign, W * sign
        g = np.gcd(np.gcd(X, Y), W)
        g[g == 0] = 1
        homogeneous = np.stack([X // g, Y // g, W // g], axis=1)

        self.point_id = np.full(self.proper.shape, -1, dtype=np.int64)
        if len(s) == 0:
            self.crossing_points = np.zeros((0, 3), dtype=np.int64)
            return
        unique, inverse = np.unique(homogeneous, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        self.point_id[s, t] = inverse
        self.point_id[t, s] = inverse
        self.crossing_points = unique

    def segment_of(self, a: int, b: int) -> int:
        return int(self.seg_of[a, b])

    def points_on(self, homogeneous: np.ndarray, segments: Sequence[int]) -> np.ndarray:
        """Which (X, Y, W) points lie on any of the given closed segments"""
        X, Y, W = homogeneous[:, 0], homogeneous[:, 1], homogeneous[:, 2]
        hit = np.zeros(len(homogeneous), dtype=bool)
        for seg in segments:
            ax, ay, bx, by = self.ax[seg], self.ay[seg], self.bx[seg], self.by[seg]
            on_line = (bx - ax) * (Y - ay * W) - (by - ay) * (X - ax * W) == 0
            in_x = _in_box(min(ax, bx) * W, max(ax, bx) * W, X)
            in_y = _in_box(min(ay, by) * W, max(ay, by) * W, Y)
            hit |= on_line & in_x & in_y
        return hit

    def segments_through(self, points: Sequence[Point]) -> np.ndarray:
        """Mask over all grid segments passing through any of the given exact points"""
        mask = np.zeros(self.size, dtype=bool)
        for point in points:
            w = math.lcm(point.x.denominator, point.y.denominator)
            X, Y = int(point.x * w), int(point.y * w)
            on_line = (self.bx - self.ax) * (Y - self.ay * w) - (self.by - self.ay) * (X - self.ax * w) == 0
            in_x = _in_box(np.minimum(self.ax, self.bx) * w, np.maximum(self.ax, self.bx) * w, X)
            in_y = _in_box(np.minimum(self.ay, self.by) * w, np.maximum(self.ay, self.by) * w, Y)
            mask |= on_line & in_x & in_y
        return mask


class InnerPolygons:
    """
    Every polygon on n grid points, one per vertex cycle up to rotation
    and reflection, with self-degenerate ones removed
    """

    def __init__(self, table: SegmentTable, n: int, require_simple: bool):
        n_points = len(table.points)
        sets = np.array(list(combinations(range(n_points), n)), dtype=np.int64).reshape(-1, n)
        vertices = np.concatenate([sets[:, list(order)] for order in cyclic_orders(n)])
        edges = table.seg_of[vertices, np.roll(vertices, -1, axis=1)]

        adjacent = [(j, (j + 1) % n) for j in range(n)]
        separate = [(j, k) for j, k in combinations(range(n), 2) if (j, k) not in adjacent and (k, j) not in adjacent]

        degenerate = np.zeros(len(vertices), dtype=bool)
        for j, k in adjacent:
            degenerate |= table.overlap[edges[:, j], edges[:, k]]
        for j, k in separate:
            degenerate |= table.bad_contact[edges[:, j], edges[:, k]]

        if separate:
            ids = np.stack([table.point_id[edges[:, j], edges[:, k]] for j, k in separate], axis=1)
        else:
            ids = np.full((len(vertices), 0), -1, dtype=np.int64)
        ordered = np.sort(ids, axis=1)
        degenerate |= ((ordered[:, 1:] == ordered[:, :-1]) & (ordered[:, 1:] >= 0)).any(axis=1)

        keep = ~degenerate
        if require_simple:
            keep &= ~(ids >= 0).any(axis=1)

        self.n = n
        self.vertices = vertices[keep]
        self.edges = edges[keep]
        ids = ids[keep]
        rows, cols = np.nonzero(ids >= 0)
        self.crossing_owner = rows
        self.crossing_point = ids[rows, cols]
        logger.debug(f"{len(self.vertices)} inner {n}-gons kept of {len(vertices)}")

    def __len__(self) -> int:
        return len(self.vertices)


def canonical_outer_polygons(table: SegmentTable, n: int, require_simple: bool) -> Iterator[Tuple[Tuple[int, ...], Polygon]]:
    """
    Outer polygons up to the grid symmetries

    A vertex set is kept when it is the smallest of its 8 images; all of
    its cyclic orders are then yielded, skipping self-degenerate ones.
    """
    symmetries = grid_symmetries(table.grid)
    for combo in combinations(range(len(table.points)), n):
        chosen = [table.points[i] for i in combo]
        images = [tuple(sorted(sym(x, y) for x, y in chosen)) for sym in symmetries]
        if tuple(chosen) != min(images):
            continue
        for order in cyclic_orders(n):
            indices = tuple(combo[k] for k in order)
            poly = Polygon.from_coordinates(table.points[i] for i in indices)
            if require_simple and not is_simple(poly):
                continue
            if not self_position(poly).ok:
                continue
            yield indices, poly


@dataclass
class OuterScore:
    """Scores of one outer polygon against all inner polygons"""

    evaluated: int
    best_total: int
    best_inner: int
    over_bound: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    odd: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


def score_outer(
    table: SegmentTable,
    inner: InnerPolygons,
    outer_indices: Tuple[int, ...],
    outer: Polygon,
    bound: int,
) -> Tuple[OuterScore, np.ndarray]:
    """
    Crossing totals of one outer polygon against every inner polygon

    Returns the score summary and the per-inner totals, with -1 marking
    pairs that are not in general position.
    """
    n = len(outer_indices)
    outer_edges = [table.segment_of(outer_indices[i], outer_indices[(i + 1) % n]) for i in range(n)]

    per_segment = table.proper[outer_edges].sum(axis=0)
    bad = table.bad_contact[outer_edges].any(axis=0)
    own_points = self_crossing_points(outer)
    if own_points:
        bad |= table.segments_through(own_points)

    totals = per_segment[inner.edges].sum(axis=1)
    degenerate = bad[inner.edges].any(axis=1)
    if len(inner.crossing_point):
        on_outer = table.points_on(table.crossing_points, outer_edges)
        hit = on_outer[inner.crossing_point]
        degenerate[inner.crossing_owner[hit]] = True

    totals = np.where(degenerate, -1, totals)
    valid = ~degenerate
    evaluated = int(valid.sum())
    if evaluated == 0:
        return OuterScore(0, -1, -1), totals

    best_inner = int(np.argmax(totals))
    return (
        OuterScore(
            evaluated=evaluated,
            best_total=int(totals[best_inner]),
            best_inner=best_inner,
            over_bound=np.nonzero(totals > bound)[0],
            odd=np.nonzero(valid & (totals % 2 == 1))[0],
        ),
        totals,
    )


def inner_polygon(table: SegmentTable, inner: InnerPolygons, index: int) -> Polygon:
    return Polygon.from_coordinates(table.points[int(i)] for i in inner.vertices[index])
