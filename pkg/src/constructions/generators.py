"""
Extremal polygon constructions

One generator per parity class. Each builds a pair of polygons with
exact rational coordinates that attains the maximum crossing count for
its class, and every pair is re-counted before it is returned.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

from ..analysis.bounds import CaseTag, max_intersections
from ..config.settings import get_config
from ..core.errors import ConstructionFailed, InvalidParams, NotInGeneralPosition, SlotCollision
from ..geometry.kernel import Point, RationalLike, as_rational, cross, lerp
from ..geometry.polygon import Polygon, crossing_report, general_position, is_simple
from ..utils.logger import PerformanceLogger, get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class CombParams:
    """Triangle ABC whose base BC is replaced by a comb reaching up to line g"""

    apex: Point
    base_left: Point
    base_right: Point
    g_height_fraction: Fraction = Fraction(9, 10)

    def __post_init__(self):
        if cross(self.apex, self.base_left, self.base_right) == 0:
            raise InvalidParams("comb triangle vertices are collinear")
        if not 0 < self.g_height_fraction < 1:
            raise InvalidParams(f"g_height_fraction must lie in (0, 1), got {self.g_height_fraction}")


@dataclass(frozen=True)
class ZigzagParams:
    base_y: Fraction = Fraction(0)
    spike_height: Fraction = Fraction(10)
    spike_epsilon: Fraction = Fraction(1)
    x_start: Fraction = Fraction(0)
    x_step: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("base_y", "spike_height", "spike_epsilon", "x_start", "x_step"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.spike_height <= 0:
            raise InvalidParams("spike_height must be positive")
        if not 0 < self.spike_epsilon < self.spike_height:
            raise InvalidParams("spike_epsilon must lie strictly between 0 and spike_height")
        if self.x_step <= 0:
            raise InvalidParams("x_step must be positive")

    @classmethod
    def from_config(cls) -> "ZigzagParams":
        config = get_config()
        height = config.ZIGZAG_SPIKE_HEIGHT
        return cls(spike_height=height, spike_epsilon=height * config.ZIGZAG_EPSILON_RATIO)


@dataclass(frozen=True)
class ExtremalPair:
    p_poly: Polygon
    q_poly: Polygon
    claimed_total: int
    case_tag: CaseTag

    @property
    def simple(self) -> bool:
        return self.case_tag is not CaseTag.ODD_ODD_GENERAL

    def to_document(self):
        from ..interface.document import PolygonDocument

        return PolygonDocument.from_pair(self.p_poly, self.q_poly)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": len(self.p_poly),
            "q": len(self.q_poly),
            "claimed_total": self.claimed_total,
            "case": self.case_tag.value,
        }


def _verified(p_poly: Polygon, q_poly: Polygon, case_tag: CaseTag) -> ExtremalPair:
    """Re-count the pair and check it against the bound for its class"""
    simple = case_tag is not CaseTag.ODD_ODD_GENERAL
    bound = max_intersections(len(p_poly), len(q_poly), simple)
    if bound.case_tag is not case_tag:
        raise ConstructionFailed(f"pair ({len(p_poly)}, {len(q_poly)}) belongs to {bound.case_tag.value}, not {case_tag.value}")
    try:
        total = crossing_report(p_poly, q_poly).total
    except NotInGeneralPosition as e:
        raise ConstructionFailed(f"{case_tag.value} construction is degenerate: {e.message}", e.report)

    if total != bound.value:
        raise ConstructionFailed(f"{case_tag.value} construction for ({len(p_poly)}, {len(q_poly)}) has {total} crossings, expected {bound.value}")
    for poly in (p_poly, q_poly):
        if is_simple(poly) != (simple or len(poly) == 3):
            raise ConstructionFailed(f"{case_tag.value} construction produced a polygon with the wrong simplicity")

    logger.debug(f"{case_tag.value} ({len(p_poly)}, {len(q_poly)}) verified with {total} crossings")
    return ExtremalPair(p_poly, q_poly, total, case_tag)


def _require(condition: bool, message: str):
    if not condition:
        raise InvalidParams(message)


def gen_comb(n: int, params: CombParams) -> Polygon:
    """
    Triangle with its base edge replaced by a comb

    The comb alternates between n/2 equally spaced points on the base
    (B first, C last) and n/2 − 1 equally spaced points on the line g
    parallel to the base near the apex.
    """
    _require(n >= 4 and n % 2 == 0, f"comb needs an even vertex count ≥ 4, got {n}")
    k = n // 2
    a, b, c = params.apex, params.base_left, params.base_right
    f = params.g_height_fraction
    g_left, g_right = lerp(b, a, f), lerp(c, a, f)

    vertices = [a, b]
    for j in range(1, k):
        vertices.append(lerp(g_left, g_right, Fraction(j, k)))
        vertices.append(lerp(b, c, Fraction(j, k - 1)))
    return Polygon(tuple(vertices))


def gen_zigzag(n: int, params: ZigzagParams) -> Polygon:
    """
    Spike chain over a horizontal base, closed by the base segment

    Vertex i sits at x_start + i·x_step. The two ends lie on the base,
    odd vertices are spike tips and the other even vertices are valleys
    spike_epsilon above the base.
    """
    _require(n >= 3 and n % 2 == 1, f"zig-zag needs an odd vertex count ≥ 3, got {n}")
    vertices = []
    for i in range(n):
        if i in (0, n - 1):
            y = params.base_y
        elif i % 2:
            y = params.base_y + params.spike_height
        else:
            y = params.base_y + params.spike_epsilon
        vertices.append(Point(params.x_start + i * params.x_step, y))
    return Polygon(tuple(vertices))


def gen_even_even_pair(p: int, q: int) -> ExtremalPair:
    """Two combs crossed like a plus sign; every edge crosses every edge"""
    _require(p >= 4 and q >= 4 and p % 2 == 0 and q % 2 == 0, f"even-even needs even p, q ≥ 4, got ({p}, {q})")
    f = get_config().COMB_G_FRACTION
    upright = CombParams(Point(0, 10), Point(-1, 0), Point(1, 0), f)
    turned = CombParams(Point(10, Fraction(9, 2)), Point(-5, 8), Point(-5, 1), f)
    with PerformanceLogger(f"even-even construction ({p}, {q})"):
        return _verified(gen_comb(p, upright), gen_comb(q, turned), CaseTag.EVEN_EVEN)


def gen_even_odd_pair(p: int, q: int) -> ExtremalPair:
    """
    A comb lying on its side whose edges cut every spike of a zig-zag

    The zig-zag's base edge is the only edge left uncrossed. Odd p with
    even q is built with the roles swapped and returned in the requested
    order.
    """
    _require(p >= 3 and q >= 3 and (p + q) % 2 == 1, f"even-odd needs one even and one odd count ≥ 3, got ({p}, {q})")
    even, odd = (p, q) if p % 2 == 0 else (q, p)
    _require(even >= 4, f"even polygon needs at least 4 vertices, got {even}")

    zigzag = gen_zigzag(odd, ZigzagParams.from_config())
    spikes = (odd - 1) // 2
    comb = gen_comb(even, CombParams(
        apex=Point(3 * spikes + 1, 5),
        base_left=Point(-1, 8),
        base_right=Point(-1, 2),
        g_height_fraction=get_config().COMB_G_FRACTION,
    ))
    with PerformanceLogger(f"even-odd construction ({p}, {q})"):
        if p % 2 == 0:
            return _verified(comb, zigzag, CaseTag.EVEN_ODD)
        return _verified(zigzag, comb, CaseTag.EVEN_ODD)


def slot_point(slot: Fraction, denominator: int) -> Point:
    """Rational point on the unit circle near angle 2π·slot"""
    if slot == Fraction(1, 2):
        return Point(-1, 0)
    t = Fraction(math.tan(math.pi * float(slot))).limit_denominator(denominator)
    return Point((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def star_step(n: int) -> int:
    return (n - 1) // 2


def gen_star(n: int, slots: Sequence[RationalLike]) -> Polygon:
    """Star polygon joining each circle slot to the one (n−1)/2 positions further on"""
    _require(n >= 3 and n % 2 == 1, f"star needs an odd vertex count ≥ 3, got {n}")
    values = [as_rational(s) for s in slots]
    _require(len(values) == n, f"expected {n} slots, got {len(values)}")
    for a, b in zip(values, values[1:]):
        if a == b:
            raise SlotCollision(f"slot {a} appears twice")
        _require(a < b, "slots must be strictly increasing")
    _require(all(0 <= s < 1 for s in values), "slots must lie in [0, 1)")

    circle = [slot_point(s, get_config().STAR_TAN_DENOMINATOR) for s in values]
    if len(set(circle)) != n:
        raise SlotCollision("two slots map to the same circle point")
    k = star_step(n)
    return Polygon(tuple(circle[(j * k) % n] for j in range(n)))


def star_chords(slots: Sequence[Fraction]) -> List[Tuple[Fraction, Fraction]]:
    """Slot pairs joined by the star polygon's edges, in edge order"""
    n, k = len(slots), star_step(len(slots))
    return [(slots[(j * k) % n], slots[((j + 1) * k) % n]) for j in range(n)]


def interleaving_count(p_slots: Sequence[Fraction], q_slots: Sequence[Fraction]) -> int:
    """
    Crossings between two star polygons counted from slot order alone

    Two chords of a circle cross iff exactly one endpoint of one lies
    strictly inside the arc spanned by the other.
    """
    total = 0
    q_chords = star_chords(q_slots)
    for a, b in star_chords(p_slots):
        lo, hi = min(a, b), max(a, b)
        for c, d in q_chords:
            if (lo < c < hi) != (lo < d < hi):
                total += 1
    return total


def star_pair_slots(p: int, q: int, epsilon: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
    p_slots = [Fraction(i, p) for i in range(p)]
    q_slots = [Fraction(j, q) + epsilon for j in range(q)]
    return p_slots, q_slots


def gen_odd_odd_general_pair(p: int, q: int) -> ExtremalPair:
    """
    Two star polygons on one circle with interleaved slots

    The larger polygon's slots are shifted by ε = 1/(2pq), which keeps
    all p + q slots distinct and in the intended cyclic order.
    """
    _require(p >= 3 and q >= 3 and p % 2 == 1 and q % 2 == 1, f"odd-odd needs odd p, q ≥ 3, got ({p}, {q})")
    small, large = min(p, q), max(p, q)
    epsilon = Fraction(1, 2 * small * large)

    with PerformanceLogger(f"odd-odd general construction ({p}, {q})"):
        for _ in range(get_config().STAR_OFFSET_RETRIES + 1):
            small_slots, large_slots = star_pair_slots(small, large, epsilon)
            small_poly, large_poly = gen_star(small, small_slots), gen_star(large, large_slots)
            if general_position(small_poly, large_poly).ok:
                break
            logger.debug(f"star pair ({p}, {q}) degenerate at ε={epsilon}, halving")
            epsilon /= 2
        else:
            raise ConstructionFailed(f"no non-degenerate star offset found for ({p}, {q})")

        if p <= q:
            return _verified(small_poly, large_poly, CaseTag.ODD_ODD_GENERAL)
        return _verified(large_poly, small_poly, CaseTag.ODD_ODD_GENERAL)


def gen_odd_odd_simple_pair(p: int, q: int) -> ExtremalPair:
    """
    Two zig-zags with all spikes crossing pairwise

    P stands upright. Q is a zig-zag mapped by a rational affine map
    that lays its spikes along +x across P's spikes and shears its base
    so the base crosses P's base and P's first spike. Q's last spike
    dips below P's base and misses P's first spike.
    """
    _require(p >= 3 and q >= 3 and p % 2 == 1 and q % 2 == 1, f"odd-odd needs odd p, q ≥ 3, got ({p}, {q})")
    m, n = (p - 1) // 2, (q - 1) // 2
    rate = 2 * m + n
    half = Fraction(1, 2)

    p_poly = gen_zigzag(p, ZigzagParams(spike_height=2 * n * rate + 2, spike_epsilon=half))
    local = gen_zigzag(q, ZigzagParams(spike_height=rate, spike_epsilon=half))

    x0 = Fraction(1, 4) - n
    y_top = 2 * n * rate - half

    def place(v: Point) -> Point:
        return Point(x0 + v.x / 2 + v.y, y_top - rate * v.x)

    q_poly = Polygon(tuple(place(v) for v in local.vertices))
    with PerformanceLogger(f"odd-odd simple construction ({p}, {q})"):
        return _verified(p_poly, q_poly, CaseTag.ODD_ODD_SIMPLE)


FIGURE4_TRIANGLE = ((-4, -2), (4, -2), (0, 4))
FIGURE4_HEPTAGON = ((-3, 3), (3, 3), (3, -3), (2, 2), (-2, 2), (-2, -3), (-3, -3))


def gen_figure4_counterexample() -> Tuple[Polygon, Polygon]:
    """
    Heptagon P and triangle Q where every pair of triangle edges is
    crossed by exactly two heptagon edges
    """
    return Polygon.from_coordinates(FIGURE4_HEPTAGON), Polygon.from_coordinates(FIGURE4_TRIANGLE)


GENERATORS: Dict[CaseTag, Callable[[int, int], ExtremalPair]] = {
    CaseTag.EVEN_EVEN: gen_even_even_pair,
    CaseTag.EVEN_ODD: gen_even_odd_pair,
    CaseTag.ODD_ODD_GENERAL: gen_odd_odd_general_pair,
    CaseTag.ODD_ODD_SIMPLE: gen_odd_odd_simple_pair,
}


def applicable_cases(p: int, q: int) -> List[CaseTag]:
    """Parity classes a (p, q) pair can be built in"""
    if p % 2 == 0 and q % 2 == 0:
        return [CaseTag.EVEN_EVEN]
    if (p + q) % 2 == 1:
        return [CaseTag.EVEN_ODD]
    return [CaseTag.ODD_ODD_GENERAL, CaseTag.ODD_ODD_SIMPLE]


def generate_pair(case: CaseTag, p: int, q: int) -> ExtremalPair:
    return GENERATORS[case](p, q)
