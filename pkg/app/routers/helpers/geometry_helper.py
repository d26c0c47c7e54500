"""Plane primitives shared by every other helper.

All types are frozen pydantic models, so they are hashable, comparable and can
be returned straight from the HTTP routers. Coordinates must be finite.
"""
import math

from pydantic import BaseModel, ConfigDict, FiniteFloat, model_validator

from .errors import DegenerateSegment

UNIT_NORM_TOLERANCE = 1e-12


class ToleranceProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    abs_eps: FiniteFloat = 1e-9
    rel_eps: FiniteFloat = 1e-9
    degeneracy_eps: FiniteFloat = 1e-12

    @model_validator(mode="after")
    def check_ordering(self):
        if min(self.abs_eps, self.rel_eps, self.degeneracy_eps) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.abs_eps < self.degeneracy_eps:
            raise ValueError("abs_eps must be at least degeneracy_eps")
        return self


DEFAULT_TOLERANCE = ToleranceProfile()


class Point(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: FiniteFloat
    y: FiniteFloat

    def __init__(self, x: float, y: float, **data):
        super().__init__(x=x, y=y, **data)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __repr__(self) -> str:
        return f"Point({self.x!r}, {self.y!r})"


class Segment(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: Point
    b: Point

    @classmethod
    def between(cls, a: Point, b: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> "Segment":
        if dist(a, b) <= tol.degeneracy_eps:
            raise DegenerateSegment(f"segment endpoints coincide at ({a.x}, {a.y})")
        return cls(a=a, b=b)

    @property
    def length(self) -> float:
        return dist(self.a, self.b)

    @property
    def midpoint(self) -> Point:
        return midpoint(self.a, self.b)

    @property
    def unit(self) -> tuple[float, float]:
        """Unit vector pointing from a to b."""
        length = self.length
        return (self.b.x - self.a.x) / length, (self.b.y - self.a.y) / length


class Line(BaseModel):
    model_config = ConfigDict(frozen=True)

    anchor: Point
    direction: tuple[FiniteFloat, FiniteFloat]

    @model_validator(mode="after")
    def check_unit_direction(self):
        norm = math.hypot(*self.direction)
        if abs(norm - 1.0) > UNIT_NORM_TOLERANCE:
            raise ValueError(f"line direction must be a unit vector, got norm {norm}")
        return self

    @classmethod
    def from_direction(cls, anchor: Point, dx: float, dy: float) -> "Line":
        norm = math.hypot(dx, dy)
        if norm == 0.0:
            raise ValueError("line direction must be non-zero")
        return cls(anchor=anchor, direction=(dx / norm, dy / norm))

    @classmethod
    def through(cls, p: Point, q: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> "Line":
        segment = Segment.between(p, q, tol)
        return cls(anchor=p, direction=segment.unit)

    @classmethod
    def perpendicular_at(cls, anchor: Point, direction: tuple[float, float]) -> "Line":
        """Line through anchor, turned a quarter turn counter-clockwise from direction."""
        dx, dy = direction
        return cls.from_direction(anchor, -dy, dx)

    def point_at(self, t: float) -> Point:
        return Point(self.anchor.x + t * self.direction[0], self.anchor.y + t * self.direction[1])

    def signed_offset(self, p: Point) -> float:
        """Coordinate of the projection of p along the line, measured from the anchor."""
        return (p.x - self.anchor.x) * self.direction[0] + (p.y - self.anchor.y) * self.direction[1]


class Circle(BaseModel):
    model_config = ConfigDict(frozen=True)

    center: Point
    radius: FiniteFloat

    @model_validator(mode="after")
    def check_radius(self):
        if self.radius <= 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")
        return self


def dist(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)


def lerp(p: Point, q: Point, t: float) -> Point:
    """Point p + t (q - p); t may fall outside [0, 1]."""
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def foot_of_perpendicular(line: Line, p: Point) -> Point:
    return line.point_at(line.signed_offset(p))


def distance_to_line(line: Line, p: Point) -> float:
    dx, dy = line.direction
    return abs((p.x - line.anchor.x) * dy - (p.y - line.anchor.y) * dx)


def line_intersection(l1: Line, l2: Line, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Point | None:
    """Meeting point of two lines, None when they are parallel."""
    (d1x, d1y), (d2x, d2y) = l1.direction, l2.direction
    cross = d1x * d2y - d1y * d2x
    if abs(cross) <= tol.degeneracy_eps:
        return None
    wx = l2.anchor.x - l1.anchor.x
    wy = l2.anchor.y - l1.anchor.y
    t = (wx * d2y - wy * d2x) / cross
    return l1.point_at(t)


def to_frame(origin: Point, toward: Point, p: Point) -> tuple[float, float]:
    """Coordinates of p in the frame centred at origin with its x-axis along origin -> toward."""
    ux, uy = Segment.between(origin, toward).unit
    rx, ry = p.x - origin.x, p.y - origin.y
    return rx * ux + ry * uy, -rx * uy + ry * ux


def approx_eq(u: float, v: float, scale: float, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> bool:
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    return abs(u - v) <= tol.abs_eps * scale + tol.rel_eps * max(abs(u), abs(v))


def clip_line(line: Line, xmin: float, ymin: float, xmax: float, ymax: float) -> tuple[float, float] | None:
    """Parameter interval of the line inside an axis-aligned box (Liang-Barsky), None if it misses."""
    (dx, dy), anchor = line.direction, line.anchor
    t_low, t_high = -math.inf, math.inf
    for delta, origin, low, high in ((dx, anchor.x, xmin, xmax), (dy, anchor.y, ymin, ymax)):
        if delta == 0.0:
            if origin < low or origin > high:
                return None
            continue
        t1, t2 = (low - origin) / delta, (high - origin) / delta
        t_low, t_high = max(t_low, min(t1, t2)), min(t_high, max(t1, t2))
    if t_low > t_high:
        return None
    return t_low, t_high
