"""
Tests for the invariant suites
"""

import pytest

from app.exceptions import ConfigurationError
from app.services.verification import (
    SUITES,
    CheckResult,
    Suite,
    format_report,
    parse_grid,
    run_suite,
)

SMALL_GRID = (2, 5)


@pytest.mark.parametrize(
    ("suite", "count"),
    [(Suite.LEMMAS, 7), (Suite.PROFILE, 8), (Suite.SECTION3, 8), (Suite.ORACLE, 3)],
)
def test_suite_passes(suite, count, breakpoints):
    """Test that each suite runs its checks and every check passes"""
    results = run_suite(suite, 42, SMALL_GRID, 10, breakpoints)
    assert len(results) == count
    failed = [r.report_line() for r in results if not r.passed]
    assert failed == []


def test_suites_are_reproducible(breakpoints):
    """Test that the same seed reproduces the same margins"""
    first = run_suite("section3", 7, SMALL_GRID, 10, breakpoints)
    second = run_suite("section3", 7, SMALL_GRID, 10, breakpoints)
    assert [r.margin for r in first] == [r.margin for r in second]


def test_all_runs_every_suite_in_order(breakpoints, mocker):
    """Test that `all` concatenates the suites in declaration order"""
    fakes = {
        suite: [mocker.Mock(return_value=CheckResult(name=suite.value, passed=True, margin=1.0))]
        for suite in SUITES
    }
    mocker.patch.dict(SUITES, fakes)
    results = run_suite(Suite.ALL, 1, SMALL_GRID, 10, breakpoints)
    assert [r.name for r in results] == ["lemmas", "profile", "section3", "oracle"]


def test_unknown_suite_raises(breakpoints):
    """Test that an unknown suite name raises ConfigurationError"""
    with pytest.raises(ConfigurationError):
        run_suite("nonsense", 1, SMALL_GRID, 10, breakpoints)


def test_low_resolution_raises(breakpoints):
    """Test that a resolution below 10 raises ConfigurationError"""
    with pytest.raises(ConfigurationError):
        run_suite("oracle", 1, SMALL_GRID, 5, breakpoints)


@pytest.mark.parametrize(("value", "expected"), [("20x200", (20, 200)), ("3X4", (3, 4))])
def test_parse_grid(value, expected):
    """Test RxC parsing"""
    assert parse_grid(value) == expected


@pytest.mark.parametrize("value", ["20", "0x5", "ax3", "1x2x3"])
def test_parse_grid_rejects_bad_values(value):
    """Test that malformed grids raise ConfigurationError"""
    with pytest.raises(ConfigurationError):
        parse_grid(value)


def test_format_report():
    """Test the PASS/FAIL lines and the summary"""
    results = [
        CheckResult(name="one", passed=True, margin=0.5),
        CheckResult(name="two", passed=False, margin=-1.0, detail="bad"),
    ]
    report = format_report(results)
    lines = report.splitlines()
    assert lines[0] == "PASS one margin=5.000000e-01"
    assert lines[1] == "FAIL two margin=-1.000000e+00 bad"
    assert lines[2] == "1/2 checks passed"
    assert report.endswith("\n")


@pytest.mark.slow
def test_oracle_suite_default_grid(breakpoints):
    """Test the oracle suite on the 20x200 grid at resolution 200"""
    results = run_suite(Suite.ORACLE, 42, (20, 200), 200, breakpoints)
    assert all(r.passed for r in results)
