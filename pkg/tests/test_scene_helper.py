import pytest

from app.routers.helpers.errors import SceneParseError
from app.routers.helpers.geometry_helper import Point
from app.routers.helpers.loci_helper import ApolloniusSpec, CircleLocus, EmptyLocus, LineLocus, SumSquaresSpec
from app.routers.helpers.scene_helper import (
    MAX_DIRECTIVES,
    LocusDirective,
    LocusOutcome,
    TriangleDirective,
    TriangleOutcome,
    evaluate_scene,
    format_scene,
    parse_scene,
    verify_scene,
)
from tests.strategies import SCENES


def test_parse_apollonius_scene():
    scene = parse_scene("point A 0 0\npoint B 5 0\nlocus apollonius A B 3/2")
    assert scene.points == {"A": Point(0, 0), "B": Point(5, 0)}
    assert len(scene.directives) == 1
    directive = scene.directives[0]
    assert isinstance(directive, LocusDirective)
    assert isinstance(directive.spec, ApolloniusSpec)
    assert (directive.spec.ratio.m, directive.spec.ratio.n) == (3, 2)
    assert scene.window is None


def test_comments_blank_lines_and_crlf():
    scene = parse_scene("# header\r\n\r\npoint A 0 0   # origin\r\npoint B 4 0\r\nlocus sumsq A B 20\r\nwindow -2 -4 6 4\r\n")
    assert isinstance(scene.directives[0].spec, SumSquaresSpec)
    assert scene.window.xmax == 6.0


def test_triangle_directive_with_identities():
    scene = parse_scene("point A 0 0\npoint B 4 0\npoint C 0 3\ntriangle A B C median leibniz")
    directive = scene.directives[0]
    assert isinstance(directive, TriangleDirective)
    assert directive.vertices == ("A", "B", "C")
    assert directive.selected == ("median", "leibniz")
    bare = parse_scene("point A 0 0\npoint B 4 0\npoint C 0 3\ntriangle A B C").directives[0]
    assert "circumcenter" in bare.selected


@pytest.mark.parametrize(
    "source, line, column, message",
    [
        ("locus apollonius A B 3/2", 1, 18, "undeclared name A"),
        ("point A 0 zero", 1, 11, "malformed number"),
        ("point A 1e400 0", 1, 9, "malformed number"),
        ("point A 0 0\npoint B 4 0\nlocus sumsq A B -1e999", 3, 17, "malformed number"),
        ("point A 0 0\npoint A 1 1", 2, 7, "duplicate name A"),
        ("point A 0 0\ncircle A 1", 2, 1, "unknown keyword"),
        ("point A 0", 1, 1, "point expects 3 arguments, got 2"),
        ("point A 0 0\npoint B 1 0\nlocus apollonius A B 1.5", 3, 22, "malformed ratio"),
        ("point A 0 0\npoint B 1 0\nlocus apollonius A B 0/2", 3, 22, "positive terms"),
        ("point A 0 0\npoint B 1 0\nlocus cubic A B 1", 3, 7, "unknown locus kind"),
        ("point A 0 0\npoint B 1 0\npoint C 0 1\ntriangle A B C euler", 4, 16, "unknown identity"),
        ("window 0 0 1 1\nwindow 0 0 2 2", 2, 1, "duplicate window"),
        ("window 0 0 0 1", 1, 1, "positive width"),
        ("point 1A 0 0", 1, 7, "malformed name"),
    ],
)
def test_parse_errors_report_position(source, line, column, message):
    with pytest.raises(SceneParseError) as info:
        parse_scene(source)
    assert info.value.line == line
    assert info.value.column == column
    assert message in info.value.message
    assert str(info.value).startswith(f"line {line}, column {column}: ")


def test_directive_limit():
    lines = ["point A 0 0", "point B 1 0"] + ["locus diffsq A B 0"] * (MAX_DIRECTIVES + 1)
    with pytest.raises(SceneParseError, match="too many directives"):
        parse_scene("\n".join(lines))
    assert len(parse_scene("\n".join(lines[:-1])).directives) == MAX_DIRECTIVES


@pytest.mark.parametrize("path", sorted(SCENES.glob("*.scene")), ids=lambda p: p.stem)
def test_canonical_form_round_trips(path):
    scene = parse_scene(path.read_text(encoding="utf-8"))
    text = format_scene(scene)
    assert parse_scene(text) == scene
    assert format_scene(parse_scene(text)) == text
    assert "\r" not in text


def test_round_trip_keeps_exact_floats():
    scene = parse_scene("point A 0.1 -2.5e-3\npoint B 3.3333333333333335 1e6\nlocus diffsq A B -0.7")
    assert parse_scene(format_scene(scene)) == scene


def test_evaluate_scene_builds_every_directive():
    source = (SCENES / "figure.scene").read_text(encoding="utf-8") + "point C 2 5\ntriangle A B C\n"
    outcomes = evaluate_scene(parse_scene(source))
    assert [type(o) for o in outcomes] == [LocusOutcome, LocusOutcome, LocusOutcome, TriangleOutcome]
    assert outcomes[0].apollonius.radius == pytest.approx(4.0)
    assert isinstance(outcomes[1].locus, CircleLocus)
    assert isinstance(outcomes[2].locus, LineLocus)


def test_unit_ratio_scene_evaluates_to_mediatrix():
    outcome = evaluate_scene(parse_scene((SCENES / "mediatrix.scene").read_text(encoding="utf-8")))[0]
    assert isinstance(outcome.locus, LineLocus)
    assert outcome.apollonius.radius is None


@pytest.mark.parametrize("path", sorted(SCENES.glob("*.scene")), ids=lambda p: p.stem)
def test_bundled_scenes_verify(path):
    checks = verify_scene(parse_scene(path.read_text(encoding="utf-8")))
    assert checks
    assert all(check.passed for check in checks), [c for c in checks if not c.passed]


def test_verify_reports_each_triangle_identity():
    checks = verify_scene(parse_scene((SCENES / "triangle.scene").read_text(encoding="utf-8")))
    assert [check.label for check in checks] == [
        "triangle A B C median",
        "triangle A B C projection",
        "triangle A B C bisector",
        "triangle A B C median_sum",
        "triangle A B C centroid",
        "triangle A B C leibniz",
        "triangle A B C circumcenter",
    ]


def test_verify_empty_sum_of_squares_locus():
    checks = verify_scene(parse_scene("point A 0 0\npoint B 4 0\nlocus sumsq A B 4"))
    assert checks[0].passed
    assert checks[0].detail == EmptyLocus().kind
    assert checks[0].report.samples_in_band == 0
