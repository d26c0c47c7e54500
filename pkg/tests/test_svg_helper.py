import re
import xml.etree.ElementTree as ET

import pytest

from app.routers.helpers.errors import WindowDegenerate
from app.routers.helpers.scene_helper import evaluate_scene, parse_scene
from app.routers.helpers.svg_helper import fit_window, render_svg
from tests.strategies import GOLDEN, SCENES

SVG = "{http://www.w3.org/2000/svg}"


def _render(source: str, size: int = 600) -> bytes:
    scene = parse_scene(source)
    return render_svg(scene, evaluate_scene(scene), size)


def _count(svg: bytes, tag: str, css: str | None = None) -> int:
    root = ET.fromstring(svg)
    return sum(1 for element in root.iter(SVG + tag) if css is None or element.get("class") == css)


@pytest.mark.parametrize("kind", ["apollonius", "sumsq", "diffsq"])
def test_golden_figures(kind):
    svg = _render((SCENES / f"{kind}.scene").read_text(encoding="utf-8"))
    assert svg == (GOLDEN / f"{kind}.svg").read_bytes()


def test_apollonius_structure():
    svg = _render("point A 0 0\npoint B 5 0\nlocus apollonius A B 3/2")
    assert _count(svg, "circle") == 1
    assert _count(svg, "rect", "point") == 2
    assert _count(svg, "text", "label") == 2
    assert "Círculo de Apollonius".encode("utf-8") in svg


def test_unit_ratio_draws_the_mediatrix():
    svg = _render("point A 0 0\npoint B 5 0\nlocus apollonius A B 1/1")
    assert _count(svg, "line") == 1
    assert _count(svg, "circle") == 0


def test_single_point_locus_is_a_cross():
    svg = _render("point A 0 0\npoint B 4 0\nlocus sumsq A B 8")
    assert _count(svg, "path") == 1


def test_empty_locus_draws_no_loci_group():
    svg = _render("point A 0 0\npoint B 4 0\nlocus sumsq A B 4")
    root = ET.fromstring(svg)
    assert all(g.get("id") != "loci" for g in root.iter(SVG + "g"))


def test_triangle_draws_polygon_and_derived_points():
    svg = _render((SCENES / "triangle.scene").read_text(encoding="utf-8"))
    assert _count(svg, "polygon") == 1
    assert _count(svg, "rect", "derived") == 2
    assert _count(svg, "text", "derived-label") == 2
    assert _count(svg, "rect", "point") == 4


def test_rendering_is_deterministic():
    source = (SCENES / "figure.scene").read_text(encoding="utf-8")
    assert _render(source) == _render(source)


NUMERIC_ATTRIBUTES = {"x", "y", "x1", "y1", "x2", "y2", "cx", "cy", "r", "width", "height", "stroke-width", "font-size"}
LIST_ATTRIBUTES = {"viewBox", "points", "d"}
FIXED_DECIMAL = re.compile(r"^-?\d+\.\d{6}$")


def _numeric_values(svg: bytes) -> list[str]:
    values = []
    for element in ET.fromstring(svg).iter():
        for name, value in element.attrib.items():
            if name in NUMERIC_ATTRIBUTES:
                values.append(value)
            elif name in LIST_ATTRIBUTES:
                values += [token for token in re.split(r"[\s,]+", value) if token not in ("", "M", "L")]
    return values


def test_coordinates_use_six_decimals_without_exponents():
    svg = _render("point A 0 0\npoint B 1e-7 3e5\nlocus diffsq A B 1\nlocus apollonius A B 3/1")
    values = _numeric_values(svg)
    assert values
    assert [v for v in values if not FIXED_DECIMAL.match(v)] == []
    assert "-0.000000" not in values


@pytest.mark.parametrize("name", ["figure", "triangle"])
def test_colours_do_not_count_as_numbers(name):
    svg = _render((SCENES / f"{name}.scene").read_text(encoding="utf-8"))
    assert b"#" in svg
    assert all(FIXED_DECIMAL.match(v) for v in _numeric_values(svg))


def test_fit_window_pads_by_ten_percent():
    scene = parse_scene("point A 0 0\npoint B 10 0\nlocus diffsq A B 0")
    window = fit_window(scene, evaluate_scene(scene))
    assert (window.xmin, window.xmax) == pytest.approx((-1.0, 11.0))
    assert (window.ymin, window.ymax) == pytest.approx((-1.0, 1.0))


def test_single_point_scene_has_no_extent():
    scene = parse_scene("point A 1 1")
    with pytest.raises(WindowDegenerate):
        render_svg(scene, evaluate_scene(scene))


def test_canvas_follows_size():
    svg = _render((SCENES / "apollonius.scene").read_text(encoding="utf-8"), size=300)
    root = ET.fromstring(svg)
    assert root.get("width") == "300.000000"
    assert root.get("height") == "240.000000"
