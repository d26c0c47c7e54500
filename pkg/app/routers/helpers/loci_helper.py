"""The three loci attached to a pair of points A, B.

* Apollonius: XA / XB = lambda, a circle on the conjugate pair, or the
  mediatrix when lambda = 1.
* Sum of squares: XA^2 + XB^2 = k2, a circle about the midpoint, a single
  point or nothing.
* Difference of squares: XA^2 - XB^2 = c, a line perpendicular to AB.

Signed offsets are measured along the unit vector from A to B.
"""
import logging
import math
from typing import Annotated, Callable, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, FiniteFloat

from .errors import NegativeConstant
from .geometry_helper import (
    DEFAULT_TOLERANCE,
    Circle,
    Line,
    Point,
    Segment,
    ToleranceProfile,
    dist,
    distance_to_line,
    midpoint,
)
from .harmonic_helper import ConjugatePair, Ratio, as_ratio, harmonic_conjugates

logger = logging.getLogger(__name__)

ResidualFunction = Callable[[np.ndarray], np.ndarray]

# Ratios whose circle is this many times larger than AB are reported as near-degenerate.
HUGE_CIRCLE_FACTOR = 1e6


class CircleLocus(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["circle"] = "circle"
    circle: Circle

    def distances(self, xs: np.ndarray) -> np.ndarray:
        center = np.array([self.circle.center.x, self.circle.center.y])
        return np.abs(np.hypot(*(xs - center).T) - self.circle.radius)

    def sample(self, count: int = 360) -> np.ndarray:
        angles = 2.0 * np.pi * np.arange(count) / count
        c = self.circle
        return np.column_stack((c.center.x + c.radius * np.cos(angles), c.center.y + c.radius * np.sin(angles)))


class LineLocus(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["line"] = "line"
    line: Line

    def distances(self, xs: np.ndarray) -> np.ndarray:
        dx, dy = self.line.direction
        rel = xs - np.array([self.line.anchor.x, self.line.anchor.y])
        return np.abs(rel[:, 0] * dy - rel[:, 1] * dx)

    def sample(self, count: int = 100, t_min: float = -1.0, t_max: float = 1.0) -> np.ndarray:
        ts = np.linspace(t_min, t_max, count)
        dx, dy = self.line.direction
        return np.column_stack((self.line.anchor.x + ts * dx, self.line.anchor.y + ts * dy))


class PointLocus(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["point"] = "point"
    point: Point

    def distances(self, xs: np.ndarray) -> np.ndarray:
        return np.hypot(xs[:, 0] - self.point.x, xs[:, 1] - self.point.y)

    def sample(self, count: int = 1) -> np.ndarray:
        return np.array([[self.point.x, self.point.y]])


class EmptyLocus(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["empty"] = "empty"

    def distances(self, xs: np.ndarray) -> np.ndarray:
        return np.full(len(xs), np.inf)

    def sample(self, count: int = 0) -> np.ndarray:
        return np.empty((0, 2))


Locus = Annotated[Union[CircleLocus, LineLocus, PointLocus, EmptyLocus], Field(discriminator="kind")]


def distance_to(locus: Locus, x: Point) -> float:
    if isinstance(locus, LineLocus):
        return distance_to_line(locus.line, x)
    if isinstance(locus, CircleLocus):
        return abs(dist(locus.circle.center, x) - locus.circle.radius)
    if isinstance(locus, PointLocus):
        return dist(locus.point, x)
    return math.inf


def locus_contains(locus: Locus, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE, scale: float = 1.0) -> bool:
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    return distance_to(locus, x) <= tol.abs_eps * scale


class ApolloniusResult(BaseModel):
    """Apollonius locus together with the closed-form quantities of its circle.

    For lambda = 1 the locus is the mediatrix and the circle fields are None.
    """

    model_config = ConfigDict(frozen=True)

    locus: Locus
    conjugates: ConjugatePair | None = None
    center_offset_AO: float | None = None
    center_offset_OB: float | None = None
    radius: float | None = None


class ApolloniusSpec(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["apollonius"] = "apollonius"
    ratio: Ratio


class SumSquaresSpec(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["sumsq"] = "sumsq"
    k2: FiniteFloat


class DiffSquaresSpec(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["diffsq"] = "diffsq"
    c: FiniteFloat


LocusSpec = Annotated[Union[ApolloniusSpec, SumSquaresSpec, DiffSquaresSpec], Field(discriminator="kind")]


def _mediatrix(segment: Segment) -> LineLocus:
    return LineLocus(line=Line.perpendicular_at(segment.midpoint, segment.unit))


def apollonius_locus(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> ApolloniusResult:
    segment = Segment.between(a, b, tol)
    ratio = as_ratio(r)
    if ratio.is_unit(tol):
        logger.debug(f"apollonius ratio {ratio} is unit, returning the mediatrix")
        return ApolloniusResult(locus=_mediatrix(segment))

    conjugates = harmonic_conjugates(a, b, ratio, tol)
    center = midpoint(conjugates.internal, conjugates.external)
    radius = dist(conjugates.internal, conjugates.external) / 2.0
    if radius > HUGE_CIRCLE_FACTOR * segment.length:
        logger.warning(f"apollonius ratio {ratio} is close to 1, circle radius {radius:.3e}")
    logger.debug(f"apollonius circle for ratio {ratio}: center ({center.x}, {center.y}), radius {radius}")
    return ApolloniusResult(
        locus=CircleLocus(circle=Circle(center=center, radius=radius)),
        conjugates=conjugates,
        center_offset_AO=dist(a, center),
        center_offset_OB=dist(center, b),
        radius=radius,
    )


def apollonius_frame_equation(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """(h, radius) of (x - h)^2 + y^2 = radius^2 in the frame with origin A and x-axis along AB."""
    ab = Segment.between(a, b, tol).length
    ratio = as_ratio(r)
    if ratio.is_unit(tol):
        raise ValueError("the unit ratio locus is a line, not a circle")
    m, n = ratio.m, ratio.n
    return m * m * ab / (m * m - n * n), m * n * ab / abs(m * m - n * n)


def sum_squares_locus(a: Point, b: Point, k2: float, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Locus:
    segment = Segment.between(a, b, tol)
    if k2 < 0:
        raise NegativeConstant(f"sum of squares constant must be non-negative, got {k2}")
    ab2 = segment.length ** 2
    d2 = k2 / 2.0 - ab2 / 4.0
    center = segment.midpoint
    if abs(d2) <= tol.abs_eps * ab2:
        return PointLocus(point=center)
    if d2 < 0:
        return EmptyLocus()
    return CircleLocus(circle=Circle(center=center, radius=math.sqrt(d2)))


def diff_squares_locus(a: Point, b: Point, c: float, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> LineLocus:
    segment = Segment.between(a, b, tol)
    ux, uy = segment.unit
    offset = c / (2.0 * segment.length)
    o = segment.midpoint
    foot = Point(o.x + offset * ux, o.y + offset * uy)
    return LineLocus(line=Line.perpendicular_at(foot, (ux, uy)))


def construct(spec: LocusSpec, a: Point, b: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Locus:
    if isinstance(spec, ApolloniusSpec):
        return apollonius_locus(a, b, spec.ratio, tol).locus
    if isinstance(spec, SumSquaresSpec):
        return sum_squares_locus(a, b, spec.k2, tol)
    return diff_squares_locus(a, b, spec.c, tol)


def residual_scale(spec: LocusSpec, a: Point, b: Point) -> float:
    """AB for the linear Apollonius residual, AB^2 for the quadratic ones."""
    ab = dist(a, b)
    return ab if isinstance(spec, ApolloniusSpec) else ab * ab


def residual_function(spec: LocusSpec, a: Point, b: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> ResidualFunction:
    """Vectorized residual over an (N, 2) array whose zero set is the locus."""
    Segment.between(a, b, tol)
    pa = np.array([a.x, a.y])
    pb = np.array([b.x, b.y])

    if isinstance(spec, ApolloniusSpec):
        lam = spec.ratio.value

        def residual(xs: np.ndarray) -> np.ndarray:
            return np.hypot(*(xs - pa).T) - lam * np.hypot(*(xs - pb).T)

    elif isinstance(spec, SumSquaresSpec):
        k2 = spec.k2

        def residual(xs: np.ndarray) -> np.ndarray:
            return np.sum((xs - pa) ** 2, axis=1) + np.sum((xs - pb) ** 2, axis=1) - k2

    else:
        c = spec.c

        def residual(xs: np.ndarray) -> np.ndarray:
            return np.sum((xs - pa) ** 2, axis=1) - np.sum((xs - pb) ** 2, axis=1) - c

    return residual


def _quadratic_form(spec: LocusSpec) -> tuple[float, float, float]:
    """(alpha, beta, const) with alpha XA^2 + beta XB^2 - const = 0 on the locus."""
    if isinstance(spec, ApolloniusSpec):
        return 1.0, -spec.ratio.value ** 2, 0.0
    if isinstance(spec, SumSquaresSpec):
        return 1.0, 1.0, spec.k2
    return 1.0, -1.0, spec.c


def distance_estimate_function(spec: LocusSpec, a: Point, b: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> ResidualFunction:
    """Squared-distance form of the predicate divided by its gradient norm.

    Every locus is the zero set of alpha XA^2 + beta XB^2 - const. On lines the
    quotient is the signed distance; on circles of radius R it is
    (rho^2 - R^2) / (2 rho) for a point at distance rho from the centre, so a
    point with |estimate| <= band lies within 2 band of the circle.
    """
    ab = Segment.between(a, b, tol).length
    alpha, beta, const = _quadratic_form(spec)
    pa = np.array([a.x, a.y])
    pb = np.array([b.x, b.y])
    floor = tol.degeneracy_eps * ab

    def estimate(xs: np.ndarray) -> np.ndarray:
        da, db = xs - pa, xs - pb
        q = alpha * np.sum(da ** 2, axis=1) + beta * np.sum(db ** 2, axis=1) - const
        gradient = 2.0 * (alpha * da + beta * db)
        # the gradient vanishes only at a circle's centre
        return q / np.maximum(np.hypot(*gradient.T), floor)

    return estimate


def membership_residual(spec: LocusSpec, a: Point, b: Point, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """Apollonius: XA - lambda XB; sum of squares: XA^2 + XB^2 - k2; difference: XA^2 - XB^2 - c."""
    residual = residual_function(spec, a, b, tol)
    return float(residual(np.array([[x.x, x.y]]))[0])
