"""Triangle quantities and numeric checks of the median, projection, bisector,
centroid and circumcenter identities.

Side names follow the vertex labels: a = BC, b = CA, c = AB. Every per-vertex
operation takes a vertex selector and works on the cyclic relabelling that
puts the selected vertex first.
"""
import logging
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict

from .errors import DegenerateTriangle, IdentityViolation
from .geometry_helper import (
    DEFAULT_TOLERANCE,
    Line,
    Point,
    ToleranceProfile,
    approx_eq,
    dist,
    distance_to_line,
    foot_of_perpendicular,
    lerp,
    line_intersection,
    midpoint,
)

logger = logging.getLogger(__name__)


class Vertex(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class Triangle(BaseModel):
    model_config = ConfigDict(frozen=True)

    va: Point
    vb: Point
    vc: Point

    @classmethod
    def build(cls, va: Point, vb: Point, vc: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> "Triangle":
        triangle = cls(va=va, vb=vb, vc=vc)
        check_triangle(triangle, tol)
        return triangle

    @property
    def perimeter(self) -> float:
        return dist(self.vb, self.vc) + dist(self.vc, self.va) + dist(self.va, self.vb)

    @property
    def twice_signed_area(self) -> float:
        return (self.vb.x - self.va.x) * (self.vc.y - self.va.y) - (self.vb.y - self.va.y) * (self.vc.x - self.va.x)

    def roles(self, vertex: Vertex) -> tuple[Point, Point, Point]:
        """(apex, first, second): the selected vertex followed by the other two in cyclic order."""
        vertex = Vertex(vertex)
        if vertex is Vertex.A:
            return self.va, self.vb, self.vc
        if vertex is Vertex.B:
            return self.vb, self.vc, self.va
        return self.vc, self.va, self.vb


class TriangleMetrics(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    m_a: float
    m_b: float
    m_c: float
    centroid: Point
    circumcenter: Point
    circumradius: float


class BisectorFeet(BaseModel):
    """Interior and exterior bisector feet; exterior is None when it lies at infinity."""

    model_config = ConfigDict(frozen=True)

    interior: Point
    exterior: Point | None

    @property
    def exterior_at_infinity(self) -> bool:
        return self.exterior is None


def check_triangle(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> None:
    perimeter = t.perimeter
    if abs(t.twice_signed_area) <= tol.degeneracy_eps * perimeter * perimeter:
        raise DegenerateTriangle(
            f"vertices ({t.va.x}, {t.va.y}), ({t.vb.x}, {t.vb.y}), ({t.vc.x}, {t.vc.y}) are collinear"
        )


def _expect(label: str, measured: float, expected: float, scale: float, tol: ToleranceProfile) -> None:
    if not approx_eq(measured, expected, scale, tol):
        raise IdentityViolation(f"{label}: measured {measured!r}, expected {expected!r}")


def centroid(t: Triangle) -> Point:
    return Point((t.va.x + t.vb.x + t.vc.x) / 3.0, (t.va.y + t.vb.y + t.vc.y) / 3.0)


def circumcenter(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Point:
    """Intersection of the perpendicular bisectors of AB and AC."""
    check_triangle(t, tol)
    bisector_ab = Line.perpendicular_at(midpoint(t.va, t.vb), _unit(t.va, t.vb))
    bisector_ac = Line.perpendicular_at(midpoint(t.va, t.vc), _unit(t.va, t.vc))
    center = line_intersection(bisector_ab, bisector_ac, tol)
    if center is None:
        raise DegenerateTriangle("perpendicular bisectors are parallel")
    return center


def _unit(p: Point, q: Point) -> tuple[float, float]:
    length = dist(p, q)
    return (q.x - p.x) / length, (q.y - p.y) / length


def _sides(t: Triangle) -> tuple[float, float, float]:
    return dist(t.vb, t.vc), dist(t.vc, t.va), dist(t.va, t.vb)


def metrics(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> TriangleMetrics:
    check_triangle(t, tol)
    a, b, c = _sides(t)
    scale = t.perimeter ** 2
    medians = {}
    for vertex, (opposite, adjacent_1, adjacent_2) in zip(Vertex, ((a, b, c), (b, c, a), (c, a, b))):
        apex, first, second = t.roles(vertex)
        measured = dist(apex, midpoint(first, second))
        from_theorem = (2 * adjacent_1 ** 2 + 2 * adjacent_2 ** 2 - opposite ** 2) / 4.0
        _expect(f"median theorem at {vertex.value}", measured ** 2, from_theorem, scale, tol)
        medians[vertex] = measured

    center = circumcenter(t, tol)
    radius = dist(center, t.va)
    for vertex_point in (t.vb, t.vc):
        _expect("circumradius", dist(center, vertex_point), radius, t.perimeter, tol)

    return TriangleMetrics(
        a=a,
        b=b,
        c=c,
        m_a=medians[Vertex.A],
        m_b=medians[Vertex.B],
        m_c=medians[Vertex.C],
        centroid=centroid(t),
        circumcenter=center,
        circumradius=radius,
    )


def median_projection(t: Triangle, vertex: Vertex = Vertex.A, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """Signed projection n of the median from vertex onto the opposite side, with c^2 - b^2 = 2 a n.

    Positive when the foot of the altitude lies on the second vertex's side of the midpoint.
    """
    check_triangle(t, tol)
    apex, first, second = t.roles(vertex)
    opposite = dist(first, second)
    near, far = dist(apex, first), dist(apex, second)
    n = (near ** 2 - far ** 2) / (2.0 * opposite)

    side = Line.through(first, second, tol)
    foot = foot_of_perpendicular(side, apex)
    projected = side.signed_offset(foot) - side.signed_offset(midpoint(first, second))
    _expect(f"projection theorem at {Vertex(vertex).value}", projected, n, t.perimeter, tol)
    return n


def bisector_feet(t: Triangle, vertex: Vertex = Vertex.A, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> BisectorFeet:
    """Feet D, E of the interior and exterior bisectors from vertex, DB/DC = EB/EC = c/b."""
    check_triangle(t, tol)
    apex, first, second = t.roles(vertex)
    near, far = dist(apex, first), dist(apex, second)
    interior = lerp(first, second, near / (near + far))
    if abs(near - far) <= tol.rel_eps * max(near, far):
        logger.warning(f"adjacent sides at {Vertex(vertex).value} are equal, exterior bisector foot is at infinity")
        return BisectorFeet(interior=interior, exterior=None)
    exterior = lerp(first, second, near / (near - far))
    return BisectorFeet(interior=interior, exterior=exterior)


def classify_bisector_point(
    t: Triangle, vertex: Vertex, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE
) -> Literal["interior", "exterior"] | None:
    """Converse of the bisector theorem: a point of the opposite line dividing it in the
    ratio of the adjacent sides is the interior foot when inside the side, the exterior foot otherwise."""
    check_triangle(t, tol)
    apex, first, second = t.roles(vertex)
    side = Line.through(first, second, tol)
    opposite = dist(first, second)
    if distance_to_line(side, x) > tol.abs_eps * opposite:
        return None
    to_second = dist(x, second)
    if to_second <= tol.degeneracy_eps * opposite:
        return None
    if not approx_eq(dist(x, first) / to_second, dist(apex, first) / dist(apex, second), 1.0, tol):
        return None
    offset = side.signed_offset(x)
    return "interior" if 0.0 < offset < opposite else "exterior"


def sum_squared_medians(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    m = metrics(t, tol)
    total = m.m_a ** 2 + m.m_b ** 2 + m.m_c ** 2
    _expect("sum of squared medians", total, 0.75 * (m.a ** 2 + m.b ** 2 + m.c ** 2), t.perimeter ** 2, tol)
    return total


def centroid_sum_squares(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """GA^2 + GB^2 + GC^2, checked against a third of the squared sides and 4/9 of the squared medians."""
    m = metrics(t, tol)
    g = m.centroid
    total = dist(g, t.va) ** 2 + dist(g, t.vb) ** 2 + dist(g, t.vc) ** 2
    scale = t.perimeter ** 2
    _expect("centroid distances vs sides", total, (m.a ** 2 + m.b ** 2 + m.c ** 2) / 3.0, scale, tol)
    _expect("centroid distances vs medians", total, 4.0 / 9.0 * (m.m_a ** 2 + m.m_b ** 2 + m.m_c ** 2), scale, tol)
    return total


def leibniz_value(t: Triangle, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """XA^2 + XB^2 + XC^2, checked against the centroid sum plus 3 XG^2."""
    base = centroid_sum_squares(t, tol)
    total = dist(x, t.va) ** 2 + dist(x, t.vb) ** 2 + dist(x, t.vc) ** 2
    xg2 = dist(x, centroid(t)) ** 2
    scale = max(t.perimeter, dist(x, centroid(t))) ** 2
    _expect("leibniz identity", total, base + 3.0 * xg2, scale, tol)
    return total


def circumcenter_centroid_gap(t: Triangle, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """OG^2 from coordinates, checked against R^2 - (a^2 + b^2 + c^2) / 9."""
    m = metrics(t, tol)
    gap = dist(m.circumcenter, m.centroid) ** 2
    expected = m.circumradius ** 2 - (m.a ** 2 + m.b ** 2 + m.c ** 2) / 9.0
    _expect("circumcenter to centroid distance", gap, expected, m.circumradius ** 2, tol)
    return gap


def median_length(t: Triangle, vertex: Vertex) -> float:
    apex, first, second = t.roles(vertex)
    return dist(apex, midpoint(first, second))


def centroid_median_ratio(t: Triangle, vertex: Vertex) -> float:
    """GV / m_V, which is 2/3 for every vertex."""
    apex, _, _ = t.roles(vertex)
    return dist(centroid(t), apex) / median_length(t, vertex)


def bisector_ratio(t: Triangle, vertex: Vertex) -> float:
    apex, first, second = t.roles(vertex)
    return dist(apex, first) / dist(apex, second)
