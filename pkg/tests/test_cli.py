import pandas as pd
import pytest
from typer.testing import CliRunner

from app.cli import EXIT_GEOMETRY, EXIT_IO, EXIT_PARSE, EXIT_VERIFY, app, fmt
from tests.strategies import GOLDEN, SCENES

runner = CliRunner()


def test_fmt_uses_nine_significant_digits():
    assert fmt(2 / 3) == "0.666666667"
    assert fmt(15.0) == "15"
    assert fmt(-0.0) == "0"


def test_apollonius_command():
    result = runner.invoke(app, ["apollonius", "--a", "0,0", "--b", "5,0", "--ratio", "3/2"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert "center (9, 0)" in lines
    assert "radius 6" in lines
    assert "internal (3, 0)" in lines
    assert "external (15, 0)" in lines


def test_apollonius_accepts_real_ratio_and_unit_ratio():
    result = runner.invoke(app, ["apollonius", "--a", "0,0", "--b", "5,0", "--ratio", "1.5"])
    assert "radius 6" in result.output
    result = runner.invoke(app, ["apollonius", "--a", "0,0", "--b", "5,0", "--ratio", "1/1"])
    assert result.exit_code == 0
    assert result.output.startswith("mediatrix through (2.5, 0)")


def test_sumsq_empty():
    result = runner.invoke(app, ["sumsq", "--a", "0,0", "--b", "4,0", "--k2", "4"])
    assert result.exit_code == 0
    assert "Empty" in result.output


def test_sumsq_point_and_diffsq_line():
    assert "Point (2, 0)" in runner.invoke(app, ["sumsq", "--a", "0,0", "--b", "4,0", "--k2", "8"]).output
    result = runner.invoke(app, ["diffsq", "--a", "0,0", "--b", "4,0", "--c=-8"])
    assert result.exit_code == 0
    assert "Line through (1, 0)" in result.output


def test_harmonic_command():
    result = runner.invoke(app, ["harmonic", "--a", "0,0", "--b", "5,0", "--ratio", "2/5"])
    assert result.exit_code == 0
    assert "internal (1.42857143, 0)" in result.output
    assert "external (-3.33333333, 0)" in result.output


def test_triangle_command():
    result = runner.invoke(app, ["triangle", "--a", "0,0", "--b", "4,0", "--c", "0,3", "--x", "0,0"])
    assert result.exit_code == 0, result.output
    assert "sides a=5 b=3 c=4" in result.output
    assert "circumcenter (2, 1.5) R=2.5" in result.output
    assert "XA^2+XB^2+XC^2 25" in result.output


def test_profile_command_marks_the_pole():
    result = runner.invoke(app, ["profile", "--a", "0,0", "--b", "1,0", "--from=-2", "--to", "3", "--count", "11"])
    assert result.exit_code == 0
    assert "inf" in result.output
    assert len(result.output.strip().splitlines()) == 12


@pytest.mark.parametrize("kind", ["apollonius", "sumsq", "diffsq"])
def test_render_writes_golden_bytes(kind, tmp_path):
    out = tmp_path / f"{kind}.svg"
    result = runner.invoke(app, ["render", "--scene", str(SCENES / f"{kind}.scene"), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == (GOLDEN / f"{kind}.svg").read_bytes()


def test_render_to_stdout():
    result = runner.invoke(app, ["render", "--scene", str(SCENES / "apollonius.scene")])
    assert result.exit_code == 0
    assert result.stdout_bytes == (GOLDEN / "apollonius.svg").read_bytes()


@pytest.mark.parametrize("path", sorted(SCENES.glob("*.scene")), ids=lambda p: p.stem)
def test_verify_bundled_scenes(path):
    result = runner.invoke(app, ["verify", "--scene", str(path)])
    assert result.exit_code == 0, result.output
    assert "FAIL" not in result.output


def test_verify_writes_csv(tmp_path):
    csv = tmp_path / "report.csv"
    result = runner.invoke(app, ["verify", "--scene", str(SCENES / "figure.scene"), "--csv", str(csv)])
    assert result.exit_code == 0
    frame = pd.read_csv(csv)
    assert list(frame["label"]) == ["locus apollonius A B 2/1", "locus sumsq A B 50.0", "locus diffsq A B -12.0"]
    assert frame["passed"].all()
    assert (frame["samples_in_band"] > 0).all()


class TestExitCodes:
    def test_parse_error(self, tmp_path):
        scene = tmp_path / "bad.scene"
        scene.write_text("point A 0 zero\n", encoding="utf-8")
        result = runner.invoke(app, ["verify", "--scene", str(scene)])
        assert result.exit_code == EXIT_PARSE
        assert "line 1, column 11" in result.output

    def test_degenerate_segment(self):
        result = runner.invoke(app, ["apollonius", "--a", "1,1", "--b", "1,1", "--ratio", "3/2"])
        assert result.exit_code == EXIT_GEOMETRY

    def test_degenerate_triangle_in_scene(self, tmp_path):
        scene = tmp_path / "flat.scene"
        scene.write_text("point A 0 0\npoint B 1 1\npoint C 2 2\ntriangle A B C\n", encoding="utf-8")
        assert runner.invoke(app, ["verify", "--scene", str(scene)]).exit_code == EXIT_GEOMETRY

    def test_bad_flags(self):
        assert runner.invoke(app, ["apollonius", "--a", "0", "--b", "5,0", "--ratio", "3/2"]).exit_code == EXIT_GEOMETRY
        assert runner.invoke(app, ["apollonius", "--a", "0,0", "--b", "5,0", "--ratio", "0/2"]).exit_code == EXIT_GEOMETRY
        assert runner.invoke(app, ["sumsq", "--a", "0,0", "--b", "4,0", "--k2=-1"]).exit_code == EXIT_GEOMETRY

    def test_grid_too_large(self, monkeypatch):
        monkeypatch.setenv("GEOLOCI_GRID_SAMPLE_CAP", "100")
        result = runner.invoke(app, ["verify", "--scene", str(SCENES / "apollonius.scene")])
        assert result.exit_code == EXIT_GEOMETRY
        assert "GridTooLarge" in result.output

    def test_verification_failure(self):
        # a band this wide admits grid points far from the circle
        result = runner.invoke(app, ["verify", "--scene", str(SCENES / "apollonius.scene"), "--band", "2"])
        assert result.exit_code == EXIT_VERIFY
        assert "FAIL locus apollonius A B 3/2" in result.output

    @pytest.mark.parametrize("step", ["0", "-1"])
    def test_non_positive_grid_step(self, step):
        result = runner.invoke(app, ["verify", "--scene", str(SCENES / "figure.scene"), "--grid-step", step])
        assert result.exit_code == EXIT_GEOMETRY
        assert "grid step must be positive" in result.output

    def test_overflowing_number_is_a_parse_error(self, tmp_path):
        scene = tmp_path / "huge.scene"
        scene.write_text("point A 1e400 0\n", encoding="utf-8")
        result = runner.invoke(app, ["verify", "--scene", str(scene)])
        assert result.exit_code == EXIT_PARSE
        assert "malformed number" in result.output

    def test_missing_scene_file(self, tmp_path):
        result = runner.invoke(app, ["render", "--scene", str(tmp_path / "missing.scene")])
        assert result.exit_code == EXIT_IO


def test_verify_nearly_empty_sum_of_squares(tmp_path):
    scene = tmp_path / "near.scene"
    scene.write_text("point A 0 0\npoint B 4 0\nlocus sumsq A B 7.9\nlocus sumsq A B 7.99\n", encoding="utf-8")
    result = runner.invoke(app, ["verify", "--scene", str(scene)])
    assert result.exit_code == 0, result.output
