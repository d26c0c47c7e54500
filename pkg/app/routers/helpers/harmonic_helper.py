"""Internal and external division of a segment, harmonic conjugates and the
variation of the distance ratio XA/XB along line AB."""
import logging
import math
from typing import Sequence

import numpy as np
import pyparsing as pp
from pydantic import BaseModel, ConfigDict, FiniteFloat

from .errors import NonPositiveRatio, PoleAtB, UnitRatio
from .geometry_helper import (
    DEFAULT_TOLERANCE,
    Point,
    Segment,
    ToleranceProfile,
    dist,
    lerp,
)

logger = logging.getLogger(__name__)

# integer pair m/n, shared with the scene grammar
RATIO_PAIR = pp.Word(pp.nums)("m") + pp.Suppress("/") + pp.Word(pp.nums)("n")
_REAL = pp.pyparsing_common.fnumber


class Ratio(BaseModel):
    """Positive ratio m/n. Integer pairs are kept as given so closed forms stay exact."""

    model_config = ConfigDict(frozen=True)

    m: FiniteFloat
    n: FiniteFloat = 1.0
    is_exact: bool = False

    @classmethod
    def of(cls, m: float, n: float = 1.0) -> "Ratio":
        if not (math.isfinite(m) and math.isfinite(n)) or m <= 0 or n <= 0:
            raise NonPositiveRatio(f"ratio terms must be positive and finite, got {m}/{n}")
        exact = float(m).is_integer() and float(n).is_integer()
        return cls(m=m, n=n, is_exact=exact)

    @classmethod
    def parse(cls, text: str) -> "Ratio":
        """Accepts an integer pair "m/n" or a positive real such as "1.5"."""
        try:
            pair = RATIO_PAIR.parse_string(text, parse_all=True)
            return cls.of(int(pair["m"]), int(pair["n"]))
        except pp.ParseException:
            pass
        try:
            value = float(_REAL.parse_string(text, parse_all=True)[0])
        except pp.ParseException:
            raise NonPositiveRatio(f"malformed ratio {text!r}") from None
        ratio = cls.of(value)
        return ratio.model_copy(update={"is_exact": False})

    @property
    def value(self) -> float:
        return self.m / self.n

    def inverse(self) -> "Ratio":
        return Ratio(m=self.n, n=self.m, is_exact=self.is_exact)

    def is_unit(self, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> bool:
        return abs(self.m - self.n) <= tol.rel_eps * max(self.m, self.n)

    def __str__(self) -> str:
        if self.is_exact:
            return f"{int(self.m)}/{int(self.n)}"
        return f"{self.value!r}"


class ConjugatePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    internal: Point
    external: Point


def as_ratio(value: "Ratio | float | str") -> Ratio:
    if isinstance(value, Ratio):
        return value
    if isinstance(value, str):
        return Ratio.parse(value)
    return Ratio.of(float(value))


def divide_internal(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Point:
    """P on segment AB with PA/PB = r, i.e. AP = m/(m+n) AB."""
    Segment.between(a, b, tol)
    ratio = as_ratio(r)
    return lerp(a, b, ratio.m / (ratio.m + ratio.n))


def divide_external(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Point:
    """Q on line AB outside the segment with QA/QB = r, i.e. signed AQ = m/(m-n) AB.

    Q lies beyond B when r > 1 and beyond A when r < 1.
    """
    Segment.between(a, b, tol)
    ratio = as_ratio(r)
    if ratio.is_unit(tol):
        raise UnitRatio(f"ratio {ratio} has no finite external division point")
    return lerp(a, b, ratio.m / (ratio.m - ratio.n))


def harmonic_conjugates(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> ConjugatePair:
    ratio = as_ratio(r)
    external = divide_external(a, b, ratio, tol)
    return ConjugatePair(internal=divide_internal(a, b, ratio, tol), external=external)


def conjugate_segment_ratios(a: Point, b: Point, r: "Ratio | float", tol: ToleranceProfile = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """Closed forms PB = n/(m+n) AB and QB = n/|m-n| AB."""
    ab = Segment.between(a, b, tol).length
    ratio = as_ratio(r)
    if ratio.is_unit(tol):
        raise UnitRatio(f"ratio {ratio} has no finite external division point")
    return ratio.n / (ratio.m + ratio.n) * ab, ratio.n / abs(ratio.m - ratio.n) * ab


def ratio_at(a: Point, b: Point, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    ab = Segment.between(a, b, tol).length
    xb = dist(x, b)
    if xb < tol.degeneracy_eps * ab:
        raise PoleAtB(f"ratio XA/XB is unbounded at B ({b.x}, {b.y})")
    return dist(x, a) / xb


def signed_division_ratio(a: Point, b: Point, x: Point, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """Signed AX/XB for x on line AB: positive inside the segment, negative outside."""
    segment = Segment.between(a, b, tol)
    ux, uy = segment.unit
    t = ((x.x - a.x) * ux + (x.y - a.y) * uy) / segment.length
    if abs(1.0 - t) < tol.degeneracy_eps:
        raise PoleAtB(f"signed ratio is unbounded at B ({b.x}, {b.y})")
    return t / (1.0 - t)


def ratio_profile(a: Point, b: Point, offsets: Sequence[float], tol: ToleranceProfile = DEFAULT_TOLERANCE) -> np.ndarray:
    """XA/XB for X = A + t (B - A) at each t in offsets; inf where X falls on B."""
    Segment.between(a, b, tol)
    t = np.asarray(offsets, dtype=float)
    # along the line XA = |t| AB and XB = |t - 1| AB
    xa = np.abs(t)
    xb = np.abs(t - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        profile = np.where(xb < tol.degeneracy_eps, np.inf, xa / np.where(xb == 0.0, 1.0, xb))
    logger.debug(f"ratio profile over {t.size} offsets")
    return profile
