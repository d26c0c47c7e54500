"""Deterministic SVG figures for evaluated scenes.

Output layout is fixed: background, loci, triangles, point markers, labels,
caption. Coordinates are converted to canvas pixels (y up in the scene, y down
on the canvas) before they are written, always with six decimals, so identical
scenes give identical bytes on every platform.
"""
import html

from .errors import WindowDegenerate
from .geometry_helper import clip_line
from .loci_helper import CircleLocus, LineLocus, PointLocus
from .scene_helper import LocusOutcome, Scene, TriangleOutcome, Window

DEFAULT_SIZE = 600
MARKER_HALF = 3.0
LABEL_OFFSET = 6.0
CROSS_HALF = 5.0

CAPTIONS = {
    "apollonius": "Círculo de Apollonius",
    "sumsq": "Sum of squares circle",
    "diffsq": "Difference of squares line",
    "triangle": "Triangle identities",
}


def _num(value: float) -> str:
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def fit_window(scene: Scene, outcomes: list[LocusOutcome | TriangleOutcome]) -> Window:
    """Bounding box of everything drawn, padded by 10% of its larger side."""
    xs = [p.x for p in scene.points.values()]
    ys = [p.y for p in scene.points.values()]
    for outcome in outcomes:
        if isinstance(outcome, TriangleOutcome):
            for p in (outcome.metrics.centroid, outcome.metrics.circumcenter):
                xs.append(p.x)
                ys.append(p.y)
            continue
        locus = outcome.locus
        if isinstance(locus, CircleLocus):
            c = locus.circle
            xs += [c.center.x - c.radius, c.center.x + c.radius]
            ys += [c.center.y - c.radius, c.center.y + c.radius]
        elif isinstance(locus, LineLocus):
            xs.append(locus.line.anchor.x)
            ys.append(locus.line.anchor.y)
        elif isinstance(locus, PointLocus):
            xs.append(locus.point.x)
            ys.append(locus.point.y)
    if not xs:
        raise WindowDegenerate("scene has no geometry to fit")
    extent = max(max(xs) - min(xs), max(ys) - min(ys))
    if extent <= 0:
        raise WindowDegenerate("auto-fit window has zero extent")
    margin = 0.1 * extent
    return Window(xmin=min(xs) - margin, ymin=min(ys) - margin, xmax=max(xs) + margin, ymax=max(ys) + margin)


def _clip(line_locus: LineLocus, window: Window) -> tuple[tuple[float, float], tuple[float, float]] | None:
    interval = clip_line(line_locus.line, window.xmin, window.ymin, window.xmax, window.ymax)
    if interval is None or interval[0] == interval[1]:
        return None
    start, end = (line_locus.line.point_at(t) for t in interval)
    return (start.x, start.y), (end.x, end.y)


def render_svg(
    scene: Scene,
    outcomes: list[LocusOutcome | TriangleOutcome],
    size: int = DEFAULT_SIZE,
) -> bytes:
    window = scene.window or fit_window(scene, outcomes)
    width, height = window.xmax - window.xmin, window.ymax - window.ymin
    k = size / max(width, height)

    def px(x: float, y: float) -> tuple[str, str]:
        return _num((x - window.xmin) * k), _num((window.ymax - y) * k)

    canvas_w, canvas_h = _num(width * k), _num(height * k)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{canvas_w}" height="{canvas_h}" '
        f'viewBox="0.000000 0.000000 {canvas_w} {canvas_h}">',
        f'<rect x="0.000000" y="0.000000" width="{canvas_w}" height="{canvas_h}" fill="#ffffff"/>',
    ]

    loci = []
    for outcome in outcomes:
        if not isinstance(outcome, LocusOutcome):
            continue
        locus = outcome.locus
        if isinstance(locus, CircleLocus):
            cx, cy = px(locus.circle.center.x, locus.circle.center.y)
            loci.append(f'<circle cx="{cx}" cy="{cy}" r="{_num(locus.circle.radius * k)}"/>')
        elif isinstance(locus, LineLocus):
            ends = _clip(locus, window)
            if ends is not None:
                (x1, y1), (x2, y2) = px(*ends[0]), px(*ends[1])
                loci.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        elif isinstance(locus, PointLocus):
            x = (locus.point.x - window.xmin) * k
            y = (window.ymax - locus.point.y) * k
            loci.append(
                f'<path d="M {_num(x - CROSS_HALF)} {_num(y - CROSS_HALF)} L {_num(x + CROSS_HALF)} {_num(y + CROSS_HALF)} '
                f'M {_num(x - CROSS_HALF)} {_num(y + CROSS_HALF)} L {_num(x + CROSS_HALF)} {_num(y - CROSS_HALF)}"/>'
            )
    if loci:
        out.append('<g id="loci" fill="none" stroke="#1f4e9c" stroke-width="2.000000">')
        out += loci
        out.append("</g>")

    triangles = [o for o in outcomes if isinstance(o, TriangleOutcome)]
    if triangles:
        out.append('<g id="triangles" fill="none" stroke="#444444" stroke-width="1.500000">')
        for outcome in triangles:
            t = outcome.triangle
            corners = " ".join(",".join(px(v.x, v.y)) for v in (t.va, t.vb, t.vc))
            out.append(f'<polygon points="{corners}"/>')
        out.append("</g>")

    markers: list[tuple[str, str, float, float]] = [("point", name, p.x, p.y) for name, p in scene.points.items()]
    for outcome in triangles:
        markers.append(("derived", "G", outcome.metrics.centroid.x, outcome.metrics.centroid.y))
        markers.append(("derived", "O", outcome.metrics.circumcenter.x, outcome.metrics.circumcenter.y))

    if markers:
        out.append('<g id="points" fill="#000000">')
        for css, _, x, y in markers:
            cx, cy = (x - window.xmin) * k, (window.ymax - y) * k
            fill = ' fill="#b03030"' if css == "derived" else ""
            out.append(
                f'<rect class="{css}" x="{_num(cx - MARKER_HALF)}" y="{_num(cy - MARKER_HALF)}" '
                f'width="{_num(2 * MARKER_HALF)}" height="{_num(2 * MARKER_HALF)}"{fill}/>'
            )
        out.append("</g>")
        out.append('<g id="labels" font-family="sans-serif" font-size="14.000000" fill="#000000">')
        for css, name, x, y in markers:
            cx, cy = (x - window.xmin) * k, (window.ymax - y) * k
            label_class = "label" if css == "point" else "derived-label"
            out.append(
                f'<text class="{label_class}" x="{_num(cx + LABEL_OFFSET)}" y="{_num(cy - LABEL_OFFSET)}">{html.escape(name)}</text>'
            )
        out.append("</g>")

    kinds = []
    for outcome in outcomes:
        kind = outcome.directive.spec.kind if isinstance(outcome, LocusOutcome) else "triangle"
        if kind not in kinds:
            kinds.append(kind)
    if kinds:
        caption = "; ".join(CAPTIONS[kind] for kind in kinds)
        out.append(
            f'<text class="caption" x="{_num(width * k / 2)}" y="{_num(height * k - 8)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16.000000">{html.escape(caption)}</text>'
        )

    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
