"""
Exact arithmetic kernel

Rationals, points, segments and the orientation / crossing predicates
every higher layer is built on. All arithmetic is carried out over
fractions.Fraction, so no predicate ever rounds.
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from ..core.errors import DegenerateSegment, InvalidParams

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a canonical Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParams(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidParams(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """
    Parse the "num/den" serialization

    Integer shorthand ("5") and the Unicode minus sign are accepted;
    decimals and zero denominators are rejected.
    """
    match = _RATIONAL_PATTERN.match(text.strip().replace("−", "-"))
    if match is None:
        raise InvalidParams(f"malformed rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InvalidParams(f"zero denominator: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Serialize as "num/den", integers included ("5/1")"""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point:
    """A point with exact rational coordinates"""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        if not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", as_rational(self.x))
        if not isinstance(self.y, Fraction):
            object.__setattr__(self, "y", as_rational(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, factor: Fraction) -> "Point":
        return Point(self.x * factor, self.y * factor)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    """The point a + t·(b − a)"""
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


class Orientation(Enum):
    """Turn direction of an ordered point triple"""

    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1

    def reversed(self) -> "Orientation":
        return Orientation(-self.value)


def cross(a: Point, b: Point, c: Point) -> Fraction:
    """Exact cross product (b − a) × (c − a)"""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> Orientation:
    value = cross(a, b, c)
    if value > 0:
        return Orientation.COUNTERCLOCKWISE
    if value < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


@dataclass(frozen=True)
class Segment:
    """A closed straight segment between two distinct points"""

    source: Point
    target: Point

    def __post_init__(self):
        if self.source == self.target:
            raise DegenerateSegment(f"zero-length segment at {self.source}")

    def reversed(self) -> "Segment":
        return Segment(self.target, self.source)

    def contains_point(self, point: Point) -> bool:
        """True if point lies on the closed segment"""
        if cross(self.source, self.target, point) != 0:
            return False
        return (
            min(self.source.x, self.target.x) <= point.x <= max(self.source.x, self.target.x)
            and min(self.source.y, self.target.y) <= point.y <= max(self.source.y, self.target.y)
        )

    def parameter_of(self, point: Point) -> Fraction:
        """Position of a collinear point along the segment: 0 at source, 1 at target"""
        dx = self.target.x - self.source.x
        dy = self.target.y - self.source.y
        return ((point.x - self.source.x) * dx + (point.y - self.source.y) * dy) / (dx * dx + dy * dy)


def segments_cross_properly(s: Segment, t: Segment) -> bool:
    """True iff the open interiors of s and t meet in exactly one point"""
    d1 = cross(s.source, s.target, t.source)
    d2 = cross(s.source, s.target, t.target)
    if d1 == 0 or d2 == 0 or (d1 > 0) == (d2 > 0):
        return False
    d3 = cross(t.source, t.target, s.source)
    d4 = cross(t.source, t.target, s.target)
    if d3 == 0 or d4 == 0 or (d3 > 0) == (d4 > 0):
        return False
    return True


def segments_intersect(s: Segment, t: Segment) -> bool:
    """True iff the closed segments share at least one point (touching included)"""
    d1 = cross(s.source, s.target, t.source)
    d2 = cross(s.source, s.target, t.target)
    d3 = cross(t.source, t.target, s.source)
    d4 = cross(t.source, t.target, s.target)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and s.contains_point(t.source))
        or (d2 == 0 and s.contains_point(t.target))
        or (d3 == 0 and t.contains_point(s.source))
        or (d4 == 0 and t.contains_point(s.target))
    )


def collinear_overlap(s: Segment, t: Segment) -> bool:
    """True iff s and t lie on one line and share more than a single point"""
    if cross(s.source, s.target, t.source) != 0 or cross(s.source, s.target, t.target) != 0:
        return False
    lo = max(min(s.parameter_of(s.source), s.parameter_of(s.target)),
             min(s.parameter_of(t.source), s.parameter_of(t.target)))
    hi = min(max(s.parameter_of(s.source), s.parameter_of(s.target)),
             max(s.parameter_of(t.source), s.parameter_of(t.target)))
    return lo < hi


def crossing_point(s: Segment, t: Segment) -> Optional[Point]:
    """The exact intersection point of a proper crossing, None otherwise"""
    if not segments_cross_properly(s, t):
        return None
    rx, ry = s.target.x - s.source.x, s.target.y - s.source.y
    ux, uy = t.target.x - t.source.x, t.target.y - t.source.y
    denominator = rx * uy - ry * ux
    lam = ((t.source.x - s.source.x) * uy - (t.source.y - s.source.y) * ux) / denominator
    return Point(s.source.x + lam * rx, s.source.y + lam * ry)
