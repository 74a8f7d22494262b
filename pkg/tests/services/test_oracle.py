"""
Tests for the candidate-enumeration oracle
"""

import math

import pytest

from app.exceptions import DomainError
from app.services.geometry import RegionKind
from app.services.oracle import (
    connected_candidates,
    enumerate_candidates,
    oracle_min,
    secondcase_bound,
    union_candidates,
)
from app.services.profile import f


def _by_kind(candidates):
    best = {}
    for candidate in candidates:
        kind = candidate.region.kind
        best[kind] = min(best.get(kind, math.inf), candidate.perimeter)
    return best


def test_square_candidates_include_quarter_disk_and_chord():
    """Test that a = 0, t = 1/4 offers S1 at sqrt(pi/4) and S2 at 1"""
    best = _by_kind(connected_candidates(0.0, 0.25))
    assert best[RegionKind.S1] == pytest.approx(math.sqrt(math.pi / 4))
    assert best[RegionKind.S2] == 1.0
    assert RegionKind.S3 not in best


def test_strip_area_offers_s3_and_degenerate_s4():
    """Test that t = a(1 - a) gives S3 and S4(theta = 0) both at 1 - a"""
    candidates = connected_candidates(0.3, 0.21)
    best = _by_kind(candidates)
    assert best[RegionKind.S3] == pytest.approx(0.7)
    assert best[RegionKind.S4] == pytest.approx(0.7)
    arcs = [c.region for c in candidates if c.region.kind is RegionKind.S4]
    assert {arc.reflected for arc in arcs} == {False, True}
    assert all(arc.theta == 0.0 for arc in arcs)


def test_arc_beats_unit_chord_for_large_notch():
    """Test that no S2 candidate beats S4 at a = 0.6, t = 0.3"""
    best = _by_kind(connected_candidates(0.6, 0.3))
    assert best[RegionKind.S4] < best[RegionKind.S2]


def test_oracle_min_small_area_is_quarter_disk():
    """Test that the oracle picks S1 at a = 0, t = 0.1"""
    result = oracle_min(0.0, 0.1, 50)
    assert result.perimeter == pytest.approx(math.sqrt(0.1 * math.pi))
    assert result.region.kind is RegionKind.S1


def test_oracle_min_picks_short_chord():
    """Test that the oracle picks S3 at a = 0.5, t = 0.2"""
    result = oracle_min(0.5, 0.2, 50)
    assert result.perimeter == pytest.approx(0.5)
    assert result.region.kind is RegionKind.S3


def test_union_candidates_cover_every_split():
    """Test one union per split, each with two parts summing to t"""
    unions = union_candidates(0.0, 0.2, 10)
    assert len(unions) == 9
    for candidate in unions:
        assert candidate.region.kind is RegionKind.UNION
        assert len(candidate.region.parts) == 2


def test_unions_never_beat_connected_minimum():
    """Test that every union costs more than the connected optimum"""
    t = 0.3
    connected = min(c.perimeter for c in connected_candidates(0.2, t))
    assert all(c.perimeter > connected for c in union_candidates(0.2, t, 20))


def test_enumerate_candidates_concatenates_both_families():
    """Test that the full enumeration is connected plus unions"""
    everything = enumerate_candidates(0.3, 0.25, 10)
    assert len(everything) == len(connected_candidates(0.3, 0.25)) + len(
        union_candidates(0.3, 0.25, 10)
    )


def test_resolution_below_minimum_raises():
    """Test that a resolution below 10 raises DomainError"""
    with pytest.raises(DomainError):
        oracle_min(0.2, 0.1, 9)


def test_area_out_of_range_raises():
    """Test that t outside (0, half area] raises DomainError"""
    with pytest.raises(DomainError):
        oracle_min(0.2, 0.49, 10)


@pytest.mark.parametrize(
    ("a", "t"),
    [(0.0, 0.2), (0.0, 0.4), (0.15, 0.2), (0.15, 0.45), (0.235, 0.3), (0.3, 0.4), (0.6, 0.1)],
)
def test_oracle_agrees_with_profile(a, t, breakpoints):
    """Test that the oracle minimum equals f_a(t)"""
    expected = f(a, t, breakpoints).perimeter
    result = oracle_min(a, t, 20, breakpoints.cfg)
    assert result.perimeter == pytest.approx(expected, abs=1e-9)


def test_secondcase_bound_equality_and_strictness():
    """Test P^2 = pi t at pi/2 and P^2 > pi t beyond"""
    p2, pit = secondcase_bound(0.5 * math.pi)
    assert p2 == pytest.approx(pit)
    p2, pit = secondcase_bound(math.pi)
    assert p2 == pytest.approx(math.pi**2)
    assert pit == pytest.approx(0.5 * math.pi**2)
    for theta in (1.7, 2.2, 3.0):
        p2, pit = secondcase_bound(theta)
        assert p2 > pit


def test_secondcase_bound_rejects_small_angle():
    """Test that angles below pi/2 raise DomainError"""
    with pytest.raises(DomainError):
        secondcase_bound(1.0)


@pytest.mark.slow
def test_oracle_full_grid(breakpoints):
    """Test the oracle against f_a on a dense grid at resolution 200"""
    for i in range(20):
        a = 0.95 * i / 19
        half = 0.5 * (1.0 - a * a)
        for j in range(1, 41):
            t = half * j / 40
            expected = f(a, t, breakpoints).perimeter
            assert oracle_min(a, t, 200, breakpoints.cfg).perimeter >= expected - 1e-9
