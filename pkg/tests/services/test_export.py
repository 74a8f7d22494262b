"""
Tests for the CSV and SVG writers
"""

import csv

import pytest

from app.exceptions import DomainError
from app.services.export import (
    CSV_HEADER,
    breakpoint_guides,
    profile_rows,
    render_svg,
    write_csv,
    write_svg,
)


def test_profile_rows_grid(breakpoints):
    """Test n rows on an increasing grid ending at the half area"""
    rows = profile_rows(0.3, 20, breakpoints)
    assert len(rows) == 20
    assert all(b.t > a.t for a, b in zip(rows, rows[1:]))
    assert rows[-1].t == pytest.approx(0.455)
    assert rows[0].t == pytest.approx(0.455 / 20)


def test_profile_rows_rejects_small_n(breakpoints):
    """Test that n < 2 raises DomainError"""
    with pytest.raises(DomainError):
        profile_rows(0.3, 1, breakpoints)


def test_write_csv(tmp_path, breakpoints):
    """Test the header, row count and empty theta off the S4 branch"""
    rows = profile_rows(0.0, 10, breakpoints)
    path = tmp_path / "profile.csv"
    write_csv(rows, path)
    with open(path, encoding="utf-8", newline="") as fh:
        records = list(csv.reader(fh))
    assert tuple(records[0]) == CSV_HEADER
    assert len(records) == 11
    first = records[1]
    assert float(first[0]) == pytest.approx(0.05)
    assert first[2] == "S1"
    assert first[3] == ""
    assert records[-1][2] == "S2"
    assert float(records[-1][1]) == 1.0


def test_write_csv_reports_theta_on_arc_branch(tmp_path, breakpoints):
    """Test that S4 rows carry theta"""
    rows = profile_rows(0.5, 4, breakpoints)
    path = tmp_path / "profile.csv"
    write_csv(rows, path)
    last = path.read_text(encoding="utf-8").splitlines()[-1].split(",")
    assert last[2] == "S4"
    assert float(last[3]) == pytest.approx(breakpoints.theta_max, abs=1e-9)


def test_guides_for_middle_regime(breakpoints):
    """Test that alpha <= a <= beta draws a tau guide"""
    labels = [label for label, _ in breakpoint_guides(0.15, breakpoints)]
    assert labels == ["T", "tau", "(1-a^2)/2"]


def test_guides_for_large_notch(breakpoints):
    """Test that a >= gamma draws the a(1 - a) guide"""
    guides = dict(breakpoint_guides(0.5, breakpoints))
    assert list(guides) == ["T", "a(1-a)", "(1-a^2)/2"]
    assert guides["a(1-a)"] == pytest.approx(0.25)


def test_render_svg(breakpoints):
    """Test the SVG header, title, dashed guides and polyline"""
    rows = profile_rows(0.15, 30, breakpoints)
    svg = render_svg(0.15, rows, breakpoints)
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert 'version="1.1"' in svg
    assert "f_a(t), a = 0.15, regime 2" in svg
    assert svg.count('stroke-dasharray="6 4"') == 3
    assert ">tau</text>" in svg
    assert svg.count("<polyline") == 1
    assert svg.rstrip().endswith("</svg>")


def test_render_svg_rejects_empty_rows(breakpoints):
    """Test that an empty sweep raises DomainError"""
    with pytest.raises(DomainError):
        render_svg(0.2, [], breakpoints)


def test_write_svg(tmp_path, breakpoints):
    """Test that write_svg writes the rendered document"""
    rows = profile_rows(0.6, 10, breakpoints)
    path = tmp_path / "profile.svg"
    write_svg(0.6, rows, path, breakpoints)
    assert path.read_text(encoding="utf-8") == render_svg(0.6, rows, breakpoints)
