"""Command-line front end: scene rendering, verification and direct computations.

Exit codes: 0 success, 1 scene parse error, 2 geometric degeneracy or bad flag,
3 verification failure, 4 I/O failure.
"""
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Optional

import numpy as np
import pandas as pd
import typer
from rich.console import Console
from rich.markup import escape

from app.config import configure_logging, get_settings
from app.routers.helpers import harmonic_helper, loci_helper, scene_helper, svg_helper, triangle_helper
from app.routers.helpers.errors import GeometryError, IdentityViolation, SceneParseError
from app.routers.helpers.geometry_helper import Point
from app.routers.helpers.harmonic_helper import Ratio
from app.routers.helpers.loci_helper import CircleLocus, EmptyLocus, LineLocus, PointLocus
from app.routers.helpers.triangle_helper import Triangle, Vertex

logger = logging.getLogger(__name__)

EXIT_PARSE = 1
EXIT_GEOMETRY = 2
EXIT_VERIFY = 3
EXIT_IO = 4

app = typer.Typer(add_completion=False, no_args_is_help=True, help="Two-point loci, harmonic division and triangle identities.")
err = Console(stderr=True)


def fmt(value: float) -> str:
    text = f"{value:.9g}"
    return "0" if text == "-0" else text


def fmt_point(p: Point) -> str:
    return f"({fmt(p.x)}, {fmt(p.y)})"


def parse_point(text: str) -> Point:
    try:
        x, y = (float(part) for part in text.split(","))
        return Point(x, y)
    except ValueError:
        raise typer.BadParameter(f"expected x,y with two finite numbers, got {text!r}") from None


def parse_ratio(text: str) -> Ratio:
    try:
        return Ratio.parse(text)
    except GeometryError as e:
        raise typer.BadParameter(str(e)) from None


def positive_step(value: Optional[float]) -> Optional[float]:
    if value is not None and not value > 0:
        raise typer.BadParameter("grid step must be positive")
    return value


PointOption = Annotated[Point, typer.Option(parser=parse_point, metavar="X,Y")]


@contextmanager
def exit_codes():
    """Maps domain errors raised inside the block to the documented exit codes."""
    try:
        yield
    except SceneParseError as e:
        err.print(f"[red]parse error[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_PARSE)
    except IdentityViolation as e:
        err.print(f"[red]identity failed[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_VERIFY)
    except GeometryError as e:
        err.print(f"[red]{type(e).__name__}[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_GEOMETRY)
    except OSError as e:
        err.print(f"[red]i/o error[/red] {escape(str(e))}")
        raise typer.Exit(EXIT_IO)


def _read_scene(path: Path) -> scene_helper.Scene:
    source = path.read_text(encoding="utf-8")
    return scene_helper.parse_scene(source)


@app.callback()
def main(verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging on stderr.")] = False):
    configure_logging("DEBUG" if verbose else None)


@app.command()
def render(
    scene: Annotated[Path, typer.Option(help="Scene file.")],
    out: Annotated[Optional[Path], typer.Option(help="SVG output path, stdout when omitted.")] = None,
    size: Annotated[Optional[int], typer.Option(min=16, help="Longest canvas side in pixels.")] = None,
):
    """Render a scene as a deterministic SVG figure."""
    settings = get_settings()
    with exit_codes():
        parsed = _read_scene(scene)
        outcomes = scene_helper.evaluate_scene(parsed, settings.tolerance())
        svg = svg_helper.render_svg(parsed, outcomes, size or settings.svg_size)
        if out is None:
            sys.stdout.buffer.write(svg)
            sys.stdout.buffer.flush()
        else:
            out.write_bytes(svg)
            logger.info(f"wrote {len(svg)} bytes to {out}")


def _report_frame(checks: list[scene_helper.SceneCheck]) -> pd.DataFrame:
    rows = []
    for check in checks:
        row = {"label": check.label, "passed": check.passed, "detail": check.detail}
        if check.report is not None:
            row.update(check.report.model_dump())
            row["passed"] = check.passed
        rows.append(row)
    return pd.DataFrame(rows)


@app.command()
def verify(
    scene: Annotated[Path, typer.Option(help="Scene file.")],
    grid_step: Annotated[Optional[float], typer.Option(callback=positive_step, help="Grid step, 0.05 AB by default.")] = None,
    band: Annotated[float, typer.Option(min=0.0, help="In-band distance tolerance in units of AB.")] = 0.02,
    csv: Annotated[Optional[Path], typer.Option(help="Also write the report table as CSV.")] = None,
):
    """Check every directive of a scene; exit 0 only when all of them pass."""
    settings = get_settings()
    with exit_codes():
        parsed = _read_scene(scene)
        checks = scene_helper.verify_scene(
            parsed,
            settings.tolerance(),
            grid_step=grid_step,
            band=band,
            sample_cap=settings.grid_sample_cap,
            workers=settings.scan_workers,
        )
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            line = f"{status} {check.label}"
            if check.report is not None:
                r = check.report
                line += (
                    f" in_band={r.samples_in_band} max_distance={fmt(r.max_distance_to_locus)}"
                    f" max_residual={fmt(r.max_predicate_residual_on_locus)}"
                )
            elif not check.passed:
                line += f" {check.detail}"
            typer.echo(line)
        if csv is not None:
            _report_frame(checks).to_csv(csv, index=False)

    if not all(check.passed for check in checks):
        raise typer.Exit(EXIT_VERIFY)


@app.command()
def apollonius(a: PointOption, b: PointOption, ratio: Annotated[Ratio, typer.Option(parser=parse_ratio, metavar="M/N|R")]):
    """Locus of the points X with XA/XB = ratio."""
    with exit_codes():
        result = loci_helper.apollonius_locus(a, b, ratio, get_settings().tolerance())
    if isinstance(result.locus, LineLocus):
        line = result.locus.line
        typer.echo(f"mediatrix through {fmt_point(line.anchor)} direction ({fmt(line.direction[0])}, {fmt(line.direction[1])})")
        return
    typer.echo(f"center {fmt_point(result.locus.circle.center)}")
    typer.echo(f"radius {fmt(result.radius)}")
    typer.echo(f"internal {fmt_point(result.conjugates.internal)}")
    typer.echo(f"external {fmt_point(result.conjugates.external)}")
    typer.echo(f"AO {fmt(result.center_offset_AO)}")
    typer.echo(f"OB {fmt(result.center_offset_OB)}")


def _echo_locus(locus) -> None:
    if isinstance(locus, EmptyLocus):
        typer.echo("Empty")
    elif isinstance(locus, PointLocus):
        typer.echo(f"Point {fmt_point(locus.point)}")
    elif isinstance(locus, CircleLocus):
        typer.echo(f"Circle center {fmt_point(locus.circle.center)} radius {fmt(locus.circle.radius)}")
    else:
        line = locus.line
        typer.echo(f"Line through {fmt_point(line.anchor)} direction ({fmt(line.direction[0])}, {fmt(line.direction[1])})")


@app.command()
def sumsq(a: PointOption, b: PointOption, k2: Annotated[float, typer.Option(help="Constant XA^2 + XB^2.")]):
    """Locus of the points X with XA^2 + XB^2 = k2."""
    with exit_codes():
        _echo_locus(loci_helper.sum_squares_locus(a, b, k2, get_settings().tolerance()))


@app.command()
def diffsq(a: PointOption, b: PointOption, c: Annotated[float, typer.Option(help="Constant XA^2 - XB^2.")]):
    """Locus of the points X with XA^2 - XB^2 = c."""
    with exit_codes():
        _echo_locus(loci_helper.diff_squares_locus(a, b, c, get_settings().tolerance()))


@app.command()
def harmonic(a: PointOption, b: PointOption, ratio: Annotated[Ratio, typer.Option(parser=parse_ratio, metavar="M/N|R")]):
    """Harmonic conjugates P, Q dividing AB internally and externally in the ratio."""
    tol = get_settings().tolerance()
    with exit_codes():
        pair = harmonic_helper.harmonic_conjugates(a, b, ratio, tol)
        pb, qb = harmonic_helper.conjugate_segment_ratios(a, b, ratio, tol)
    typer.echo(f"internal {fmt_point(pair.internal)}")
    typer.echo(f"external {fmt_point(pair.external)}")
    typer.echo(f"PB {fmt(pb)}")
    typer.echo(f"QB {fmt(qb)}")


@app.command()
def triangle(
    a: PointOption,
    b: PointOption,
    c: PointOption,
    x: Annotated[Optional[Point], typer.Option(parser=parse_point, metavar="X,Y", help="Evaluate the Leibniz sum here.")] = None,
):
    """Sides, medians, centres and the median and centroid identities of triangle ABC."""
    tol = get_settings().tolerance()
    with exit_codes():
        t = Triangle.build(a, b, c, tol)
        m = triangle_helper.metrics(t, tol)
        typer.echo(f"sides a={fmt(m.a)} b={fmt(m.b)} c={fmt(m.c)}")
        typer.echo(f"medians m_a={fmt(m.m_a)} m_b={fmt(m.m_b)} m_c={fmt(m.m_c)}")
        typer.echo(f"centroid {fmt_point(m.centroid)}")
        typer.echo(f"circumcenter {fmt_point(m.circumcenter)} R={fmt(m.circumradius)}")
        for vertex in Vertex:
            n = triangle_helper.median_projection(t, vertex, tol)
            feet = triangle_helper.bisector_feet(t, vertex, tol)
            exterior = "at infinity" if feet.exterior is None else fmt_point(feet.exterior)
            typer.echo(f"vertex {vertex.value} projection={fmt(n)} bisector interior={fmt_point(feet.interior)} exterior={exterior}")
        typer.echo(f"sum of squared medians {fmt(triangle_helper.sum_squared_medians(t, tol))}")
        typer.echo(f"GA^2+GB^2+GC^2 {fmt(triangle_helper.centroid_sum_squares(t, tol))}")
        typer.echo(f"OG^2 {fmt(triangle_helper.circumcenter_centroid_gap(t, tol))}")
        if x is not None:
            typer.echo(f"XA^2+XB^2+XC^2 {fmt(triangle_helper.leibniz_value(t, x, tol))}")


@app.command()
def profile(
    a: PointOption,
    b: PointOption,
    start: Annotated[float, typer.Option("--from", help="First offset along AB, in AB units from A.")] = -2.0,
    stop: Annotated[float, typer.Option("--to", help="Last offset.")] = 3.0,
    count: Annotated[int, typer.Option(min=2, max=10_000)] = 11,
):
    """Tabulate the ratio XA/XB as X moves along line AB."""
    offsets = np.linspace(start, stop, count)
    with exit_codes():
        ratios = harmonic_helper.ratio_profile(a, b, offsets, get_settings().tolerance())
    frame = pd.DataFrame({"offset": offsets, "ratio": ratios})
    typer.echo(frame.to_string(index=False, formatters={"offset": fmt, "ratio": fmt}))


@app.command()
def serve(host: str = "127.0.0.1", port: int = 8000):
    """Run the HTTP API."""
    import uvicorn

    uvicorn.run("app.main:app", host=host, port=port)


if __name__ == "__main__":
    app()
