"""
Tests for the piecewise profile f_a(t)
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import BranchError, BreakpointError, DomainError
from app.services import profile
from app.services.geometry import RegionKind, s4_perimeter
from app.services.oracle import oracle_min
from app.services.profile import Regime, dP_dt, f, perimeter_array, regime
from app.services.solvers import get_breakpoints


def test_square_small_area_is_quarter_disk(breakpoints):
    """Test f_0(0.25) = sqrt(pi/4) with S1"""
    point = f(0.0, 0.25, breakpoints)
    assert point.perimeter == pytest.approx(math.sqrt(math.pi / 4))
    assert point.minimizers == frozenset({RegionKind.S1})
    assert point.theta is None


def test_square_large_area_is_unit_chord(breakpoints):
    """Test f_0(0.45) = 1 with S2"""
    point = f(0.0, 0.45, breakpoints)
    assert point.perimeter == 1.0
    assert point.minimizers == frozenset({RegionKind.S2})


def test_s3_s4_tie_at_strip_area(breakpoints):
    """Test that t = a(1 - a) is shared by S3 and S4 for a > gamma"""
    point = f(0.5, 0.25, breakpoints)
    assert point.perimeter == pytest.approx(0.5)
    assert point.minimizers == frozenset({RegionKind.S3, RegionKind.S4})
    assert point.minimizer_label == "S3+S4"
    assert point.theta == pytest.approx(0.0, abs=1e-12)


def test_half_area_on_arc_branch(breakpoints):
    """Test f_0.3 at half area is the S4 perimeter at theta_max"""
    point = f(0.3, 0.455, breakpoints)
    expected = s4_perimeter(0.3, breakpoints.theta_max, theta_max=breakpoints.theta_max)
    assert point.perimeter == pytest.approx(expected, abs=1e-10)
    assert point.perimeter < math.sqrt(2) * 0.7
    assert RegionKind.S4 in point.minimizers


@pytest.mark.parametrize("t", [0.0, -0.1, 0.5])
def test_area_out_of_range(t, breakpoints):
    """Test that t outside (0, (1 - a^2)/2] raises DomainError"""
    with pytest.raises(DomainError):
        f(0.2, t, breakpoints)


def test_regime_assignment(breakpoints):
    """Test that each a-range maps to its regime, shared boundaries going to the lower one"""
    assert regime(0.0, breakpoints) is Regime.QUARTER_THEN_CHORD
    assert regime(breakpoints.alpha, breakpoints) is Regime.QUARTER_THEN_CHORD
    assert regime(0.15, breakpoints) is Regime.QUARTER_ARC_CHORD
    assert regime(0.235, breakpoints) is Regime.QUARTER_THEN_ARC
    assert regime(breakpoints.gamma, breakpoints) is Regime.QUARTER_THEN_ARC
    assert regime(0.9, breakpoints) is Regime.QUARTER_SHORT_CHORD_ARC


def test_branches_cover_the_domain(breakpoints):
    """Test that branches are contiguous from 0 to the half area"""
    for a in (0.0, 0.15, 0.235, 0.6):
        parts = profile.branches(a, breakpoints)
        assert parts[0].start == 0.0
        assert parts[-1].end == pytest.approx(0.5 * (1 - a * a))
        for left, right in zip(parts, parts[1:]):
            assert left.end == right.start


def test_four_piece_shape_for_large_notch(breakpoints):
    """Test that a = 0.9 has S1, a flat 1 - a piece and S4"""
    kinds = [b.kind for b in profile.branches(0.9, breakpoints)]
    assert kinds == [RegionKind.S1, RegionKind.S3, RegionKind.S4]
    assert f(0.9, 0.05, breakpoints).perimeter == pytest.approx(0.1)


@pytest.mark.parametrize("a", [0.0, 0.05, 0.15, 0.2, 0.235, 0.4, 0.7, 0.95])
def test_continuity_at_branch_boundaries(a, breakpoints):
    """Test that adjacent branch formulas agree at each breakpoint"""
    for t, left, right in profile.branch_boundaries(a, breakpoints):
        value_left = profile.branch_value(left, a, t, breakpoints)
        value_right = profile.branch_value(right, a, t, breakpoints)
        assert abs(value_left - value_right) < 1e-9


@pytest.mark.parametrize("a", [0.0, 0.15, 0.235, 0.6])
def test_boundary_point_reports_both_kinds(a, breakpoints):
    """Test that f at a breakpoint lists both adjacent kinds"""
    t, left, right = profile.branch_boundaries(a, breakpoints)[0]
    assert f(a, t, breakpoints).minimizers >= {left, right}


def test_regime_boundaries_agree(breakpoints):
    """Test that both regime formulas agree at alpha, beta and gamma"""
    for a in (breakpoints.alpha, breakpoints.beta, breakpoints.gamma):
        for t in np.linspace(0.01, 0.5 * (1 - a * a), 25):
            assert profile.regime_disagreement(a, float(t), breakpoints) < 1e-9


def test_regime_disagreement_is_zero_off_boundaries(breakpoints):
    """Test that a single regime reports no disagreement"""
    assert profile.regime_disagreement(0.5, 0.2, breakpoints) == 0.0


def test_regime_disagreement_raises_breakpoint_error(breakpoints, mocker):
    """Test that f rejects regime formulas that disagree"""
    mocker.patch.object(profile, "REGIME_AGREEMENT_TOL", -1.0)
    with pytest.raises(BreakpointError):
        f(breakpoints.gamma, 0.3, breakpoints)


def test_sliver_arc_branch_near_unit_notch(breakpoints):
    """Test that an S4 branch narrower than the slack still decides f near a = 1"""
    a = 0.999999
    half = 0.5 * (1 - a * a)
    point = f(a, half, breakpoints)
    expected = s4_perimeter(a, breakpoints.theta_max, theta_max=breakpoints.theta_max)
    assert point.perimeter == pytest.approx(expected, rel=1e-9)
    assert point.perimeter > 1 - a
    assert point.minimizers == frozenset({RegionKind.S4})
    assert perimeter_array(a, [half], breakpoints)[0] == pytest.approx(
        point.perimeter, rel=1e-9
    )
    assert oracle_min(a, half, resolution=10).perimeter == pytest.approx(
        point.perimeter, rel=1e-9
    )


def test_square_regression(breakpoints):
    """Test that a = 0 is sqrt(pi t) up to 1/pi and 1 afterwards"""
    for t in np.linspace(0.0025, 0.5, 200):
        expected = math.sqrt(math.pi * t) if t <= 1 / math.pi else 1.0
        assert f(0.0, float(t), breakpoints).perimeter == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("a", [0.0, 0.15, 0.235, 0.6, 0.9])
def test_perimeter_array_matches_scalar(a, breakpoints):
    """Test the vectorised profile against pointwise evaluation"""
    ts = np.linspace(0.5 * (1 - a * a) / 40, 0.5 * (1 - a * a), 40)
    values = perimeter_array(a, ts, breakpoints)
    for t, value in zip(ts, values):
        assert value == pytest.approx(f(a, float(t), breakpoints).perimeter, abs=1e-12)
    assert np.all(np.diff(values) >= -1e-12)


def test_dP_dt_endpoints(breakpoints):
    """Test the slope at theta = 0 and at the half area"""
    assert dP_dt(0.5, 0.25, breakpoints) == pytest.approx(0.0, abs=1e-12)
    assert dP_dt(0.3, 0.455, breakpoints) == pytest.approx(
        math.sin(breakpoints.theta_max) / 0.7, rel=1e-9
    )


@pytest.mark.parametrize("a", [0.15, 0.3, 0.6])
def test_dP_dt_matches_finite_difference(a, breakpoints):
    """Test dP/dt against centred differences at interior S4 points"""
    s4 = next(b for b in profile.branches(a, breakpoints) if b.kind is RegionKind.S4)
    h = 1e-6
    for t in np.linspace(s4.start, s4.end, 12)[1:-1]:
        t = float(t)
        fd = (
            profile.branch_value(RegionKind.S4, a, t + h, breakpoints)
            - profile.branch_value(RegionKind.S4, a, t - h, breakpoints)
        ) / (2 * h)
        assert dP_dt(a, t, breakpoints) == pytest.approx(fd, rel=1e-6)


def test_dP_dt_off_branch_raises(breakpoints):
    """Test that dP_dt outside the S4 branch raises BranchError"""
    with pytest.raises(BranchError):
        dP_dt(0.0, 0.1, breakpoints)


def test_s1_max_area_and_crossing():
    """Test the S1 area cap and where its two expressions meet"""
    assert profile.s1_max_area(0.0) == pytest.approx(math.pi / 4)
    assert profile.s1_max_area(0.5) == pytest.approx(math.pi / 8)
    crossing = profile.transition_crossing()
    assert crossing == pytest.approx(1 - math.sqrt(2) / math.pi)
    assert profile.s1_max_area(crossing) == pytest.approx(1 / math.pi)


@pytest.mark.parametrize(
    ("a", "t", "strict"),
    [(0.0, 0.2, False), (0.0, 0.4, True), (0.5, 0.35, True)],
)
def test_sqrt_pi_dominates_examples(a, t, strict, breakpoints):
    """Test sqrt(pi t) >= f_a(t), strict past T(a)"""
    result = profile.sqrt_pi_dominates(a, t, breakpoints)
    assert result.holds
    assert result.strict is strict
    if not strict:
        assert result.margin == pytest.approx(0.0, abs=1e-12)


def test_sqrt_pi_dominates_zero_area(breakpoints):
    """Test the t = 0 endpoint"""
    result = profile.sqrt_pi_dominates(0.3, 0.0, breakpoints)
    assert result.holds and not result.strict


@pytest.mark.parametrize(("a", "t"), [(0.0, 0.6), (0.0, math.pi / 4), (0.3, 0.7)])
def test_sqrt_pi_dominates_past_half_area(a, t, breakpoints):
    """Test areas above the half area, read through f_a(t) = f_a(|Q_a| - t)"""
    result = profile.sqrt_pi_dominates(a, t, breakpoints)
    mirrored = f(a, 1 - a * a - t, breakpoints).perimeter
    assert result.holds and result.strict
    assert result.margin == pytest.approx(math.sqrt(math.pi * t) - mirrored)


def test_sqrt_pi_dominates_rejects_past_s1_cap(breakpoints):
    """Test that t above min(pi/4, pi(1 - a)^2 / 2) raises DomainError"""
    with pytest.raises(DomainError):
        profile.sqrt_pi_dominates(0.0, 0.8, breakpoints)
    with pytest.raises(DomainError):
        profile.sqrt_pi_dominates(0.6, 0.26, breakpoints)


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(min_value=0.0, max_value=0.98),
    u=st.floats(min_value=0.01, max_value=1.0),
    v=st.floats(min_value=0.01, max_value=1.0),
)
def test_profile_is_non_decreasing(a, u, v):
    """Test f_a(t1) <= f_a(t2) for t1 <= t2"""
    half = 0.5 * (1 - a * a)
    t1, t2 = sorted((u * half, v * half))
    assert f(a, t1).perimeter <= f(a, t2).perimeter + 1e-12


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(min_value=0.0, max_value=0.98),
    u=st.floats(min_value=0.01, max_value=0.99),
    v=st.floats(min_value=0.01, max_value=0.99),
)
def test_profile_is_strictly_subadditive(a, u, v):
    """Numerical restatement: two regions cost more than one of the combined area"""
    half = 0.5 * (1 - a * a)
    t1 = u * half
    t2 = v * (half - t1)
    assert f(a, t1).perimeter + f(a, t2).perimeter > f(a, t1 + t2).perimeter


@settings(max_examples=60, deadline=None)
@given(a=st.floats(min_value=0.0, max_value=0.98), u=st.floats(min_value=0.01, max_value=1.0))
def test_profile_bounds(a, u):
    """Test f_a <= 1 for a <= beta and f_a < sqrt(2)(1 - a) beyond"""
    bp = get_breakpoints()
    t = u * 0.5 * (1 - a * a)
    value = f(a, t, bp).perimeter
    if a <= bp.beta:
        assert value <= 1.0 + 1e-12
    else:
        assert value < math.sqrt(2) * (1 - a)
