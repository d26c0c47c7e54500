"""Scene files: a line-oriented description of points, loci and triangles.

Grammar, one statement per line, `#` starts a comment:

    point <name> <x> <y>
    locus apollonius <A> <B> <m>/<n>
    locus sumsq <A> <B> <k2>
    locus diffsq <A> <B> <c>
    triangle <A> <B> <C> [identity ...]
    window <xmin> <ymin> <xmax> <ymax>

Names must be declared by a `point` line before they are referenced. The
first error stops the parse and is reported with its line and column.
"""
import logging
import math
from typing import Annotated, Literal, Union

import pyparsing as pp
from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

from .errors import IdentityViolation, SceneParseError
from .geometry_helper import DEFAULT_TOLERANCE, Point, ToleranceProfile, dist
from .harmonic_helper import RATIO_PAIR, Ratio
from .loci_helper import (
    ApolloniusResult,
    ApolloniusSpec,
    DiffSquaresSpec,
    Locus,
    LocusSpec,
    SumSquaresSpec,
    apollonius_locus,
    construct,
)
from .oracle_helper import DEFAULT_BAND, DEFAULT_STEP_FACTOR, DEFAULT_WORKERS, GridSpec, VerificationReport, verify_construction
from . import triangle_helper
from .triangle_helper import Triangle, TriangleMetrics, Vertex

logger = logging.getLogger(__name__)

MAX_DIRECTIVES = 64
LOCUS_KINDS = ("apollonius", "sumsq", "diffsq")
IDENTITIES = ("median", "projection", "bisector", "median_sum", "centroid", "leibniz", "circumcenter")

_WORD = pp.Regex(r"\S+").parse_with_tabs()
_NAME = pp.Word(pp.alphas + "_", pp.alphanums + "_")
_NUMBER = pp.pyparsing_common.fnumber


class Window(BaseModel):
    model_config = ConfigDict(frozen=True)

    xmin: FiniteFloat
    ymin: FiniteFloat
    xmax: FiniteFloat
    ymax: FiniteFloat

    @model_validator(mode="after")
    def check_extent(self):
        if self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError("window must have positive width and height")
        return self


class LocusDirective(BaseModel):
    model_config = ConfigDict(frozen=True)
    directive: Literal["locus"] = "locus"
    a: str
    b: str
    spec: LocusSpec


class TriangleDirective(BaseModel):
    model_config = ConfigDict(frozen=True)
    directive: Literal["triangle"] = "triangle"
    vertices: tuple[str, str, str]
    identities: tuple[str, ...] = ()

    @property
    def selected(self) -> tuple[str, ...]:
        return self.identities or IDENTITIES


Directive = Annotated[Union[LocusDirective, TriangleDirective], Field(discriminator="directive")]


class Scene(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: dict[str, Point] = {}
    directives: tuple[Directive, ...] = ()
    window: Window | None = None


class _Token:
    __slots__ = ("text", "column")

    def __init__(self, text: str, column: int):
        self.text = text
        self.column = column


def _tokenize(line: str) -> list[_Token]:
    body = line.split("#", 1)[0]
    return [_Token(tokens[0], start + 1) for tokens, start, _ in _WORD.scan_string(body)]


def _number(token: _Token, line_no: int) -> float:
    try:
        value = float(_NUMBER.parse_string(token.text, parse_all=True)[0])
    except pp.ParseException:
        value = None
    # overflowing literals such as 1e400 parse to inf
    if value is None or not math.isfinite(value):
        raise SceneParseError(line_no, token.column, f"malformed number {token.text!r}")
    return value


def _ratio(token: _Token, line_no: int) -> Ratio:
    try:
        parsed = RATIO_PAIR.parse_string(token.text, parse_all=True)
    except pp.ParseException:
        raise SceneParseError(line_no, token.column, f"malformed ratio {token.text!r}, expected m/n") from None
    m, n = int(parsed["m"]), int(parsed["n"])
    if m == 0 or n == 0:
        raise SceneParseError(line_no, token.column, f"ratio {token.text!r} must have positive terms")
    return Ratio.of(m, n)


def _expect_arity(tokens: list[_Token], count: int, line_no: int, at_least: bool = False) -> None:
    given = len(tokens) - 1
    if given == count or (at_least and given > count):
        return
    keyword = tokens[0]
    expected = f"at least {count}" if at_least else str(count)
    raise SceneParseError(line_no, keyword.column, f"{keyword.text} expects {expected} arguments, got {given}")


def _declared(points: dict[str, Point], token: _Token, line_no: int) -> str:
    if token.text not in points:
        raise SceneParseError(line_no, token.column, f"undeclared name {token.text}")
    return token.text


def parse_scene(source: str) -> Scene:
    points: dict[str, Point] = {}
    directives: list = []
    window = None

    for line_no, line in enumerate(source.splitlines(), start=1):
        tokens = _tokenize(line)
        if not tokens:
            continue
        keyword = tokens[0]

        if keyword.text == "point":
            _expect_arity(tokens, 3, line_no)
            name = tokens[1]
            try:
                _NAME.parse_string(name.text, parse_all=True)
            except pp.ParseException:
                raise SceneParseError(line_no, name.column, f"malformed name {name.text!r}") from None
            if name.text in points:
                raise SceneParseError(line_no, name.column, f"duplicate name {name.text}")
            points[name.text] = Point(_number(tokens[2], line_no), _number(tokens[3], line_no))
            continue

        if keyword.text == "window":
            _expect_arity(tokens, 4, line_no)
            if window is not None:
                raise SceneParseError(line_no, keyword.column, "duplicate window")
            xmin, ymin, xmax, ymax = (_number(token, line_no) for token in tokens[1:])
            if xmax <= xmin or ymax <= ymin:
                raise SceneParseError(line_no, keyword.column, "window must have positive width and height")
            window = Window(xmin=xmin, ymin=ymin, xmax=xmax, ymax=ymax)
            continue

        if keyword.text == "locus":
            _expect_arity(tokens, 4, line_no)
            kind = tokens[1]
            if kind.text not in LOCUS_KINDS:
                raise SceneParseError(line_no, kind.column, f"unknown locus kind {kind.text!r}")
            a = _declared(points, tokens[2], line_no)
            b = _declared(points, tokens[3], line_no)
            if kind.text == "apollonius":
                spec = ApolloniusSpec(ratio=_ratio(tokens[4], line_no))
            elif kind.text == "sumsq":
                spec = SumSquaresSpec(k2=_number(tokens[4], line_no))
            else:
                spec = DiffSquaresSpec(c=_number(tokens[4], line_no))
            directive = LocusDirective(a=a, b=b, spec=spec)

        elif keyword.text == "triangle":
            _expect_arity(tokens, 3, line_no, at_least=True)
            vertices = tuple(_declared(points, token, line_no) for token in tokens[1:4])
            for token in tokens[4:]:
                if token.text not in IDENTITIES:
                    raise SceneParseError(line_no, token.column, f"unknown identity {token.text!r}")
            directive = TriangleDirective(vertices=vertices, identities=tuple(t.text for t in tokens[4:]))

        else:
            raise SceneParseError(line_no, keyword.column, f"unknown keyword {keyword.text!r}")

        if len(directives) == MAX_DIRECTIVES:
            raise SceneParseError(line_no, keyword.column, f"too many directives, the limit is {MAX_DIRECTIVES}")
        directives.append(directive)

    logger.debug(f"parsed scene with {len(points)} points and {len(directives)} directives")
    return Scene(points=points, directives=tuple(directives), window=window)


def format_scene(scene: Scene) -> str:
    """Canonical text form; parse_scene(format_scene(s)) == s."""
    lines = [f"point {name} {p.x!r} {p.y!r}" for name, p in scene.points.items()]
    for directive in scene.directives:
        if isinstance(directive, TriangleDirective):
            lines.append(" ".join(("triangle",) + directive.vertices + directive.identities))
            continue
        lines.append(_locus_line(directive))
    if scene.window is not None:
        w = scene.window
        lines.append(f"window {w.xmin!r} {w.ymin!r} {w.xmax!r} {w.ymax!r}")
    return "\n".join(lines) + "\n"


class LocusOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    directive: LocusDirective
    a: Point
    b: Point
    locus: Locus
    apollonius: ApolloniusResult | None = None


class TriangleOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    directive: TriangleDirective
    triangle: Triangle
    metrics: TriangleMetrics


class SceneCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    passed: bool
    detail: str = ""
    report: VerificationReport | None = None


def evaluate_scene(scene: Scene, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> list[LocusOutcome | TriangleOutcome]:
    outcomes: list[LocusOutcome | TriangleOutcome] = []
    for directive in scene.directives:
        if isinstance(directive, LocusDirective):
            a, b = scene.points[directive.a], scene.points[directive.b]
            if isinstance(directive.spec, ApolloniusSpec):
                result = apollonius_locus(a, b, directive.spec.ratio, tol)
                outcomes.append(LocusOutcome(directive=directive, a=a, b=b, locus=result.locus, apollonius=result))
            else:
                outcomes.append(LocusOutcome(directive=directive, a=a, b=b, locus=construct(directive.spec, a, b, tol)))
        else:
            triangle = Triangle.build(*(scene.points[name] for name in directive.vertices), tol=tol)
            outcomes.append(
                TriangleOutcome(directive=directive, triangle=triangle, metrics=triangle_helper.metrics(triangle, tol))
            )
    return outcomes


def _triangle_identity(identity: str, triangle: Triangle, scene: Scene, tol: ToleranceProfile) -> None:
    if identity == "median":
        triangle_helper.metrics(triangle, tol)
    elif identity == "projection":
        for vertex in Vertex:
            triangle_helper.median_projection(triangle, vertex, tol)
    elif identity == "bisector":
        for vertex in Vertex:
            feet = triangle_helper.bisector_feet(triangle, vertex, tol)
            if triangle_helper.classify_bisector_point(triangle, vertex, feet.interior, tol) != "interior":
                raise IdentityViolation(f"interior bisector foot at {vertex.value} fails the side ratio")
            if feet.exterior is not None and triangle_helper.classify_bisector_point(triangle, vertex, feet.exterior, tol) != "exterior":
                raise IdentityViolation(f"exterior bisector foot at {vertex.value} fails the side ratio")
    elif identity == "median_sum":
        triangle_helper.sum_squared_medians(triangle, tol)
    elif identity == "centroid":
        triangle_helper.centroid_sum_squares(triangle, tol)
    elif identity == "leibniz":
        for point in scene.points.values():
            triangle_helper.leibniz_value(triangle, point, tol)
    elif identity == "circumcenter":
        triangle_helper.circumcenter_centroid_gap(triangle, tol)


def _locus_line(directive: LocusDirective) -> str:
    spec = directive.spec
    if isinstance(spec, ApolloniusSpec):
        parameter = str(spec.ratio)
    elif isinstance(spec, SumSquaresSpec):
        parameter = repr(spec.k2)
    else:
        parameter = repr(spec.c)
    return f"locus {spec.kind} {directive.a} {directive.b} {parameter}"


def verify_scene(
    scene: Scene,
    tol: ToleranceProfile = DEFAULT_TOLERANCE,
    grid_step: float | None = None,
    band: float = DEFAULT_BAND,
    sample_cap: int | None = None,
    workers: int = DEFAULT_WORKERS,
) -> list[SceneCheck]:
    """Oracle check for every locus directive and identity checks for every triangle directive.

    band is in units of AB and applies to the distance estimate of each
    predicate; grid_step defaults to 0.05 AB per directive.
    """
    checks: list[SceneCheck] = []
    for outcome in evaluate_scene(scene, tol):
        if isinstance(outcome, LocusOutcome):
            directive = outcome.directive
            extra = {} if sample_cap is None else {"sample_cap": sample_cap}
            grid = None
            if scene.window is not None:
                w = scene.window
                step = grid_step if grid_step is not None else DEFAULT_STEP_FACTOR * dist(outcome.a, outcome.b)
                grid = GridSpec(min_corner=Point(w.xmin, w.ymin), max_corner=Point(w.xmax, w.ymax), step=step, **extra)
            report = verify_construction(
                directive.spec,
                outcome.a,
                outcome.b,
                tol,
                locus=outcome.locus,
                grid=grid,
                step=grid_step,
                band=band,
                workers=workers,
                **extra,
            )
            checks.append(SceneCheck(label=_locus_line(directive), passed=report.passed, detail=outcome.locus.kind, report=report))
            continue

        directive = outcome.directive
        for identity in directive.selected:
            label = f"triangle {' '.join(directive.vertices)} {identity}"
            try:
                _triangle_identity(identity, outcome.triangle, scene, tol)
            except IdentityViolation as e:
                logger.warning(f"{label}: {e}")
                checks.append(SceneCheck(label=label, passed=False, detail=str(e)))
                continue
            checks.append(SceneCheck(label=label, passed=True, detail="holds"))
    return checks
