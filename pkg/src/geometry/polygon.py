"""
Polygon-level operations

Simplicity, general-position validation and repair, crossing
enumeration between two polygons, the per-edge crossing sets E_P(e)
and the order of crossings along a directed edge.
"""

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..config.settings import get_config
from ..core.errors import (
    DegenerateSegment,
    EdgeDoesNotCross,
    InvalidParams,
    InvalidPolygon,
    NotInGeneralPosition,
    PerturbationFailed,
)
from ..utils.logger import get_logger
from .kernel import (
    Point,
    RationalLike,
    Segment,
    as_rational,
    collinear_overlap,
    crossing_point,
    segments_cross_properly,
    segments_intersect,
)

logger = get_logger(__name__)


class PolygonTag(str, Enum):
    """Which polygon of a pair an edge or vertex belongs to"""

    P = "P"
    Q = "Q"

    @property
    def other(self) -> "PolygonTag":
        return PolygonTag.Q if self is PolygonTag.P else PolygonTag.P


@dataclass(frozen=True)
class Polygon:
    """Cyclic vertex sequence; edge i joins vertex i to vertex (i+1) mod n"""

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 3:
            raise InvalidPolygon(f"a polygon needs at least 3 vertices, got {len(vertices)}")
        for i, vertex in enumerate(vertices):
            if vertex == vertices[(i + 1) % len(vertices)]:
                raise InvalidPolygon(f"edge {i} has zero length (vertex {vertex} repeated)")

    @classmethod
    def from_coordinates(cls, coordinates: Iterable[Tuple[RationalLike, RationalLike]]) -> "Polygon":
        return cls(tuple(Point(as_rational(x), as_rational(y)) for x, y in coordinates))

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> Tuple[Segment, ...]:
        n = len(self.vertices)
        return tuple(Segment(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))

    def edge(self, index: int) -> Segment:
        return self.edges[index]

    def adjacent(self, i: int, j: int) -> bool:
        """True if edges i and j share a vertex"""
        n = len(self.vertices)
        return i != j and ((i - j) % n == 1 or (j - i) % n == 1)

    def translated(self, dx: Fraction, dy: Fraction) -> "Polygon":
        return Polygon(tuple(Point(v.x + dx, v.y + dy) for v in self.vertices))

    def coordinates(self) -> List[Tuple[Fraction, Fraction]]:
        return [(v.x, v.y) for v in self.vertices]


@dataclass(frozen=True, order=True)
class EdgeRef:
    polygon_tag: PolygonTag
    index: int

    def __str__(self) -> str:
        return f"{self.polygon_tag.value}{self.index}"


@dataclass(frozen=True, order=True)
class VertexRef:
    polygon_tag: PolygonTag
    index: int

    def __str__(self) -> str:
        return f"{self.polygon_tag.value}v{self.index}"


@dataclass(frozen=True)
class Crossing:
    p_edge: EdgeRef
    q_edge: EdgeRef
    point: Point


@dataclass
class CrossingReport:
    """Every proper crossing between the edges of P and the edges of Q"""

    crossings: List[Crossing]
    total: int = -1

    def __post_init__(self):
        if self.total < 0:
            self.total = len(self.crossings)
        if self.total != len(self.crossings):
            raise ValueError("total must equal the number of recorded crossings")

    def edges_crossing_map(self, q_size: int) -> Dict[int, Set[EdgeRef]]:
        """q-edge index → set of crossing p-edges"""
        table: Dict[int, Set[EdgeRef]] = {j: set() for j in range(q_size)}
        for crossing in self.crossings:
            table[crossing.q_edge.index].add(crossing.p_edge)
        return table

    def pairs(self) -> Set[Tuple[int, int]]:
        return {(c.p_edge.index, c.q_edge.index) for c in self.crossings}


class ViolationKind(Enum):
    VERTEX_ON_EDGE = "VertexOnEdge"
    SHARED_VERTEX = "SharedVertex"
    COLLINEAR_OVERLAP = "CollinearOverlap"
    CONCURRENT_CROSSINGS = "ConcurrentCrossings"
    SELF_TOUCH = "SelfTouch"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    vertices: Tuple[VertexRef, ...]
    point: Optional[Point] = None

    def describe(self) -> str:
        where = f" at {self.point}" if self.point is not None else ""
        return f"{self.kind.value}: {', '.join(str(v) for v in self.vertices)}{where}"


@dataclass
class GeneralPositionReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def involved_vertices(self) -> Set[VertexRef]:
        return {vertex for violation in self.violations for vertex in violation.vertices}

    def kinds(self) -> Set[ViolationKind]:
        return {violation.kind for violation in self.violations}


def is_simple(poly: Polygon) -> bool:
    """
    No two non-adjacent edges meet (touching included) and no two
    adjacent edges overlap beyond their shared vertex.
    """
    edges = poly.edges
    for i, j in combinations(range(len(edges)), 2):
        if poly.adjacent(i, j):
            if collinear_overlap(edges[i], edges[j]):
                return False
        elif segments_intersect(edges[i], edges[j]):
            return False
    return True


def _edge_vertices(tag: PolygonTag, poly: Polygon, index: int) -> Tuple[VertexRef, VertexRef]:
    return VertexRef(tag, index), VertexRef(tag, (index + 1) % len(poly))


def _own_violations(tag: PolygonTag, poly: Polygon, found: Set[Violation]):
    vertices, edges = poly.vertices, poly.edges
    n = len(vertices)
    for i, j in combinations(range(n), 2):
        if vertices[i] == vertices[j]:
            found.add(Violation(ViolationKind.SELF_TOUCH, (VertexRef(tag, i), VertexRef(tag, j)), vertices[i]))
    for i, edge in enumerate(edges):
        for k, vertex in enumerate(vertices):
            if k in (i, (i + 1) % n) or vertex in (edge.source, edge.target):
                continue
            if edge.contains_point(vertex):
                found.add(Violation(ViolationKind.SELF_TOUCH, (VertexRef(tag, k),) + _edge_vertices(tag, poly, i), vertex))
    for i, j in combinations(range(n), 2):
        if collinear_overlap(edges[i], edges[j]):
            kind = ViolationKind.SELF_TOUCH if poly.adjacent(i, j) else ViolationKind.COLLINEAR_OVERLAP
            found.add(Violation(kind, _edge_vertices(tag, poly, i) + _edge_vertices(tag, poly, j)))


def _cross_violations(p: Polygon, q: Polygon, found: Set[Violation]):
    for i, u in enumerate(p.vertices):
        for j, v in enumerate(q.vertices):
            if u == v:
                found.add(Violation(ViolationKind.SHARED_VERTEX, (VertexRef(PolygonTag.P, i), VertexRef(PolygonTag.Q, j)), u))
    for tag, own, other in ((PolygonTag.P, p, q), (PolygonTag.Q, q, p)):
        for k, vertex in enumerate(own.vertices):
            for i, edge in enumerate(other.edges):
                if vertex in (edge.source, edge.target):
                    continue
                if edge.contains_point(vertex):
                    found.add(Violation(
                        ViolationKind.VERTEX_ON_EDGE,
                        (VertexRef(tag, k),) + _edge_vertices(tag.other, other, i),
                        vertex,
                    ))
    for i, s in enumerate(p.edges):
        for j, t in enumerate(q.edges):
            if collinear_overlap(s, t):
                found.add(Violation(
                    ViolationKind.COLLINEAR_OVERLAP,
                    _edge_vertices(PolygonTag.P, p, i) + _edge_vertices(PolygonTag.Q, q, j),
                ))


def _concurrency_violations(polygons: Dict[PolygonTag, Polygon], found: Set[Violation]):
    tagged = [(tag, poly, i, e) for tag, poly in polygons.items() for i, e in enumerate(poly.edges)]
    points: Dict[Point, Set[Tuple[PolygonTag, int]]] = {}
    for (tag_a, poly_a, a, s), (tag_b, poly_b, b, t) in combinations(tagged, 2):
        if tag_a == tag_b and poly_a.adjacent(a, b):
            continue
        point = crossing_point(s, t)
        if point is not None:
            points.setdefault(point, set()).update({(tag_a, a), (tag_b, b)})
    for point, edge_set in points.items():
        if len(edge_set) > 2:
            refs: Tuple[VertexRef, ...] = ()
            for tag, index in sorted(edge_set):
                refs += _edge_vertices(tag, polygons[tag], index)
            found.add(Violation(ViolationKind.CONCURRENT_CROSSINGS, tuple(sorted(set(refs))), point))


def _report(found: Set[Violation]) -> GeneralPositionReport:
    ordered = sorted(found, key=lambda v: (v.kind.value, v.vertices, v.point or Point(0, 0)))
    return GeneralPositionReport(ordered)


def general_position(p: Polygon, q: Polygon) -> GeneralPositionReport:
    """Validate that the pair is in general position, listing every violation"""
    found: Set[Violation] = set()
    _own_violations(PolygonTag.P, p, found)
    _own_violations(PolygonTag.Q, q, found)
    _cross_violations(p, q, found)
    _concurrency_violations({PolygonTag.P: p, PolygonTag.Q: q}, found)
    return _report(found)


def self_position(poly: Polygon, tag: PolygonTag = PolygonTag.P) -> GeneralPositionReport:
    """The single-polygon part of general_position: self touches, overlaps and concurrent self-crossings"""
    found: Set[Violation] = set()
    _own_violations(tag, poly, found)
    _concurrency_violations({tag: poly}, found)
    return _report(found)


def self_crossing_points(poly: Polygon) -> List[Point]:
    """Points where two non-adjacent edges of poly cross properly"""
    edges = poly.edges
    points = []
    for i, j in combinations(range(len(edges)), 2):
        if not poly.adjacent(i, j):
            point = crossing_point(edges[i], edges[j])
            if point is not None:
                points.append(point)
    return points


def _offset_polygon(poly: Polygon, tag: PolygonTag, targets: Set[VertexRef], offsets: Dict[VertexRef, Point]) -> Polygon:
    vertices = list(poly.vertices)
    for ref in targets:
        if ref.polygon_tag is tag:
            vertices[ref.index] = vertices[ref.index] + offsets[ref]
    return Polygon(tuple(vertices))


def perturb_to_general_position(
    p: Polygon,
    q: Polygon,
    seed: int,
    magnitude: Optional[Fraction] = None,
    retries: Optional[int] = None,
) -> Tuple[Polygon, Polygon]:
    """
    Move violating vertices by seeded random rational offsets bounded by
    magnitude until the pair is in general position.
    """
    config = get_config()
    magnitude = config.PERTURBATION_MAGNITUDE if magnitude is None else as_rational(magnitude)
    retries = config.PERTURBATION_RETRIES if retries is None else retries
    if magnitude <= 0:
        raise InvalidParams("perturbation magnitude must be positive")

    report = general_position(p, q)
    if report.ok:
        return p, q

    rng = random.Random(seed)
    steps = config.PERTURBATION_STEPS
    targets = report.involved_vertices()
    for attempt in range(retries):
        offsets = {
            ref: Point(magnitude * Fraction(rng.randint(-steps, steps), steps),
                       magnitude * Fraction(rng.randint(-steps, steps), steps))
            for ref in sorted(targets)
        }
        try:
            candidate_p = _offset_polygon(p, PolygonTag.P, targets, offsets)
            candidate_q = _offset_polygon(q, PolygonTag.Q, targets, offsets)
        except (InvalidPolygon, DegenerateSegment):
            continue
        report = general_position(candidate_p, candidate_q)
        if report.ok:
            logger.debug(f"general position reached after {attempt + 1} attempt(s), {len(targets)} vertices moved")
            return candidate_p, candidate_q
        targets |= report.involved_vertices()

    raise PerturbationFailed(f"no general-position perturbation found in {retries} attempts", report)


def enumerate_crossings(p: Polygon, q: Polygon) -> CrossingReport:
    """Exhaustive O(pq) crossing enumeration without the general-position check"""
    crossings = []
    for i, s in enumerate(p.edges):
        for j, t in enumerate(q.edges):
            point = crossing_point(s, t)
            if point is not None:
                crossings.append(Crossing(EdgeRef(PolygonTag.P, i), EdgeRef(PolygonTag.Q, j), point))
    return CrossingReport(crossings)


def require_general_position(p: Polygon, q: Polygon):
    report = general_position(p, q)
    if not report.ok:
        raise NotInGeneralPosition(report)


def crossing_report(p: Polygon, q: Polygon) -> CrossingReport:
    """All proper crossings between edges of p and edges of q"""
    require_general_position(p, q)
    return enumerate_crossings(p, q)


def _check_ref(ref: EdgeRef, poly: Polygon):
    if not 0 <= ref.index < len(poly):
        raise InvalidParams(f"edge {ref} out of range for a {len(poly)}-gon")


def edges_crossing(e: EdgeRef, p: Polygon, q: Polygon) -> FrozenSet[EdgeRef]:
    """E_P(e): the edges of p properly crossing edge e of q"""
    if e.polygon_tag is not PolygonTag.Q:
        raise InvalidParams(f"E_P(e) is defined for edges of Q, got {e}")
    _check_ref(e, q)
    report = crossing_report(p, q)
    return frozenset(c.p_edge for c in report.crossings if c.q_edge == e)


def crossing_order_along(e: EdgeRef, others: Iterable[EdgeRef], p: Polygon, q: Polygon) -> List[EdgeRef]:
    """Sort the edges crossing e by where they cross it, from e's source to its target"""
    own = q if e.polygon_tag is PolygonTag.Q else p
    other = p if e.polygon_tag is PolygonTag.Q else q
    _check_ref(e, own)
    directed = own.edge(e.index)
    keyed = []
    for ref in others:
        if ref.polygon_tag is e.polygon_tag:
            raise EdgeDoesNotCross(f"{ref} belongs to the same polygon as {e}")
        _check_ref(ref, other)
        point = crossing_point(directed, other.edge(ref.index))
        if point is None:
            raise EdgeDoesNotCross(f"{ref} does not cross {e}")
        keyed.append((directed.parameter_of(point), ref))
    keyed.sort()
    return [ref for _, ref in keyed]


def order_along_q_edges(p: Polygon, q: Polygon, report: CrossingReport) -> Dict[int, List[EdgeRef]]:
    """For every q-edge, its crossing p-edges in order along the directed edge"""
    by_edge: Dict[int, List[Tuple[Fraction, EdgeRef]]] = {j: [] for j in range(len(q))}
    for crossing in report.crossings:
        directed = q.edge(crossing.q_edge.index)
        by_edge[crossing.q_edge.index].append((directed.parameter_of(crossing.point), crossing.p_edge))
    return {j: [ref for _, ref in sorted(items)] for j, items in by_edge.items()}


def count_line_crossings(poly: Polygon, line: Segment) -> int:
    """Number of edges of poly properly crossed by the segment"""
    return sum(1 for edge in poly.edges if segments_cross_properly(edge, line))


def bounding_box(polygons: Sequence[Polygon]) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [v.x for poly in polygons for v in poly.vertices]
    ys = [v.y for poly in polygons for v in poly.vertices]
    return min(xs), min(ys), max(xs), max(ys)
