import pytest

from so3figs.render import FigureSpec, JBAR_STYLES, render
from so3figs.schema import EXPECTED_HEADER, SchemaError

from conftest import write_csv


def test_renders_png(valid_csv, tmp_path):
    out = tmp_path / "panels.png"
    got = render(FigureSpec(csv_path=str(valid_csv), out_path=str(out)))
    assert got == str(out)
    assert out.exists() and out.stat().st_size > 0


def test_estimate_line_style_grouping():
    styles = dict(JBAR_STYLES)
    assert styles["Jb11"] == styles["Jb12"] == "solid"
    assert styles["Jb22"] == styles["Jb13"] == "dashed"
    assert styles["Jb33"] == styles["Jb23"] == "dotted"
    assert len(JBAR_STYLES) == 6


def test_schema_error_propagates(tmp_path):
    names = list(EXPECTED_HEADER)
    names[3] = "bogus"
    bad = write_csv(tmp_path / "bad.csv", header=tuple(names))
    with pytest.raises(SchemaError, match="bogus"):
        render(FigureSpec(csv_path=str(bad), out_path=str(tmp_path / "x.png")))
    assert not (tmp_path / "x.png").exists()


def test_format_follows_extension(valid_csv, tmp_path):
    out = tmp_path / "panels.pdf"
    render(FigureSpec(csv_path=str(valid_csv), out_path=str(out)))
    assert out.read_bytes()[:5] == b"%PDF-"
