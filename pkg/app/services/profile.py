"""
The piecewise isoperimetric profile f_a(t) of the notched square
Branch selection, minimizer classification and derivative helpers
"""

import logging
import math
from enum import IntEnum
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict

from app.exceptions import BranchError, BreakpointError, DomainError
from app.services.geometry import (
    FEASIBILITY_SLACK,
    PROFILE_KINDS,
    NotchParam,
    RegionKind,
    s4_perimeter_kernel,
)
from app.services.solvers import (
    Breakpoints,
    get_breakpoints,
    theta_of_area,
    theta_of_area_array,
    transition_T,
)

logger: logging.Logger = logging.getLogger(__name__)

# Two regime formulas evaluated at a shared boundary must agree this closely
REGIME_AGREEMENT_TOL: float = 1e-9

# Relative gap within which a neighbouring kind joins the minimizer set
TIE_REL_TOL: float = 1e-9


class Regime(IntEnum):
    """The four a-ranges of the profile formula"""

    QUARTER_THEN_CHORD = 1  # 0 <= a <= alpha
    QUARTER_ARC_CHORD = 2  # alpha <= a <= beta
    QUARTER_THEN_ARC = 3  # beta <= a <= gamma
    QUARTER_SHORT_CHORD_ARC = 4  # gamma <= a < 1


class Branch(NamedTuple):
    kind: RegionKind
    start: float
    end: float


class ProfilePoint(BaseModel):
    """One evaluation of f_a(t) with the kinds achieving it"""

    model_config = ConfigDict(frozen=True)

    a: float
    t: float
    perimeter: float
    minimizers: frozenset[RegionKind]
    theta: float | None = None

    @property
    def minimizer_label(self) -> str:
        return "+".join(k.value for k in PROFILE_KINDS if k in self.minimizers)


class DominanceResult(NamedTuple):
    """Outcome of comparing sqrt(pi t) with f_a(t)"""

    holds: bool
    strict: bool
    margin: float


def regime(a: float, bp: Breakpoints) -> Regime:
    """Regime of a; a shared boundary resolves to the lower regime"""
    if a <= bp.alpha:
        return Regime.QUARTER_THEN_CHORD
    if a <= bp.beta:
        return Regime.QUARTER_ARC_CHORD
    if a <= bp.gamma:
        return Regime.QUARTER_THEN_ARC
    return Regime.QUARTER_SHORT_CHORD_ARC


def _regime_branches(notch: NotchParam, reg: Regime, bp: Breakpoints) -> list[Branch]:
    a, half = notch.a, notch.half_area
    match reg:
        case Regime.QUARTER_THEN_CHORD:
            return [
                Branch(RegionKind.S1, 0.0, 1.0 / math.pi),
                Branch(RegionKind.S2, 1.0 / math.pi, half),
            ]
        case Regime.QUARTER_ARC_CHORD:
            sigma, tau = bp.sigma(a), bp.tau(a)
            return [
                Branch(RegionKind.S1, 0.0, sigma),
                Branch(RegionKind.S4, sigma, tau),
                Branch(RegionKind.S2, tau, half),
            ]
        case Regime.QUARTER_THEN_ARC:
            sigma = bp.sigma(a)
            return [
                Branch(RegionKind.S1, 0.0, sigma),
                Branch(RegionKind.S4, sigma, half),
            ]
        case Regime.QUARTER_SHORT_CHORD_ARC:
            transition = (1.0 - a) ** 2 / math.pi
            return [
                Branch(RegionKind.S1, 0.0, transition),
                Branch(RegionKind.S3, transition, notch.s4_min_area),
                Branch(RegionKind.S4, notch.s4_min_area, half),
            ]
    raise DomainError(f"unknown regime {reg}")


def branches(notch: NotchParam | float, bp: Breakpoints | None = None) -> list[Branch]:
    """Ordered branches of f_a covering [0, (1 - a^2) / 2]"""
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    return _regime_branches(notch, regime(notch.a, bp), bp)


def branch_value(
    kind: RegionKind, notch: NotchParam | float, t: float, bp: Breakpoints | None = None
) -> float:
    """Perimeter of the profile formula for one region kind at area t"""
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    match kind:
        case RegionKind.S1:
            return math.sqrt(math.pi * t)
        case RegionKind.S2:
            return 1.0
        case RegionKind.S3:
            return notch.short_side
        case RegionKind.S4:
            theta = theta_of_area(notch, t, bp.cfg)
            return float(s4_perimeter_kernel(notch.a, theta))
    raise DomainError(f"{kind} is not a profile branch")


def branch_boundaries(
    notch: NotchParam | float, bp: Breakpoints | None = None
) -> list[tuple[float, RegionKind, RegionKind]]:
    """Interior breakpoints of f_a as (t, left kind, right kind)"""
    parts = branches(notch, bp)
    return [(left.end, left.kind, right.kind) for left, right in zip(parts, parts[1:])]


def _evaluate(notch: NotchParam, t: float, reg: Regime, bp: Breakpoints) -> ProfilePoint:
    parts = _regime_branches(notch, reg, bp)
    slack = FEASIBILITY_SLACK
    near = [b for b in parts if b.start - slack <= t <= b.end + slack]
    # Branches narrower than the slack (a near 1) must not shadow the one holding t
    chosen = next((b for b in near if b.start <= t <= b.end), near[0] if near else None)
    if chosen is None:
        raise DomainError(f"t={t} not covered by the profile of a={notch.a}")
    perimeter = branch_value(chosen.kind, notch, t, bp)
    kinds = {chosen.kind}
    for branch in near:
        if branch.kind in kinds:
            continue
        value = branch_value(branch.kind, notch, t, bp)
        if abs(value - perimeter) <= TIE_REL_TOL * max(perimeter, slack):
            kinds.add(branch.kind)
    theta = theta_of_area(notch, t, bp.cfg) if RegionKind.S4 in kinds else None
    return ProfilePoint(
        a=notch.a,
        t=t,
        perimeter=perimeter,
        minimizers=frozenset(kinds),
        theta=theta,
    )


def _adjacent_regimes(a: float, bp: Breakpoints) -> list[Regime]:
    primary = regime(a, bp)
    for boundary, upper in (
        (bp.alpha, Regime.QUARTER_ARC_CHORD),
        (bp.beta, Regime.QUARTER_THEN_ARC),
        (bp.gamma, Regime.QUARTER_SHORT_CHORD_ARC),
    ):
        if abs(a - boundary) <= FEASIBILITY_SLACK:
            other = Regime(upper - 1) if primary == upper else upper
            return [primary, other]
    return [primary]


def _check_area(notch: NotchParam, t: float) -> None:
    if not 0.0 < t <= notch.half_area + FEASIBILITY_SLACK:
        raise DomainError(f"t={t} outside (0, {notch.half_area}] for a={notch.a}")


def regime_disagreement(
    notch: NotchParam | float, t: float, bp: Breakpoints | None = None
) -> float:
    """Largest gap between the regime formulas that share a at t (0 off the boundaries)"""
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    _check_area(notch, t)
    regimes = _adjacent_regimes(notch.a, bp)
    values = [_evaluate(notch, t, reg, bp).perimeter for reg in regimes]
    return max(values) - min(values)


def f(notch: NotchParam | float, t: float, bp: Breakpoints | None = None) -> ProfilePoint:
    """
    Evaluate the isoperimetric profile f_a(t)

    At a branch boundary the perimeter is the common value and the minimizer
    set holds both adjacent kinds.

    Raises:
        DomainError: t <= 0 or t > (1 - a^2) / 2
        BreakpointError: a sits on a regime boundary and the two formulas disagree
    """
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    _check_area(notch, t)
    regimes = _adjacent_regimes(notch.a, bp)
    point = _evaluate(notch, t, regimes[0], bp)
    for other in regimes[1:]:
        alternative = _evaluate(notch, t, other, bp)
        gap = abs(alternative.perimeter - point.perimeter)
        if gap > REGIME_AGREEMENT_TOL:
            logger.error(f"Regimes {regimes} disagree at a={notch.a}, t={t}: {gap:.3e}")
            raise BreakpointError(
                f"regime formulas disagree by {gap:.3e} at a={notch.a}, t={t}"
            )
    return point


def perimeter_array(
    notch: NotchParam | float, ts: ArrayLike, bp: Breakpoints | None = None
) -> NDArray[np.float64]:
    """Vectorised f_a over an array of areas, for sweeps and plots"""
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    ts = np.asarray(ts, dtype=np.float64)
    out = np.full_like(ts, np.nan)
    for branch in branches(notch, bp):
        mask = (ts >= branch.start) & (ts <= branch.end) & np.isnan(out)
        if not mask.any():
            continue
        match branch.kind:
            case RegionKind.S1:
                out[mask] = np.sqrt(np.pi * ts[mask])
            case RegionKind.S2:
                out[mask] = 1.0
            case RegionKind.S3:
                out[mask] = notch.short_side
            case RegionKind.S4:
                thetas = theta_of_area_array(notch, ts[mask], bp.cfg)
                out[mask] = s4_perimeter_kernel(notch.a, thetas)
    return out


def dP_dt(notch: NotchParam | float, t: float, bp: Breakpoints | None = None) -> float:  # noqa: N802
    """
    Slope sin(theta(t)) / (1 - a) of the S4 branch

    Raises:
        BranchError: t is not on the S4 branch of f_a
    """
    notch = NotchParam.of(notch)
    point = f(notch, t, bp)
    if RegionKind.S4 not in point.minimizers or point.theta is None:
        raise BranchError(f"t={t} is not on the S4 branch for a={notch.a}")
    return math.sin(point.theta) / notch.short_side


def s1_max_area(notch: NotchParam | float) -> float:
    """Largest S1 area, min(pi/4, pi (1 - a)^2 / 2)"""
    a = NotchParam.of(notch).a
    return min(0.25 * math.pi, 0.5 * math.pi * (1.0 - a) ** 2)


def transition_crossing() -> float:
    """The a where pi (1 - a)^2 / 2 = 1 / pi, i.e. 1 - sqrt(2) / pi"""
    return 1.0 - math.sqrt(2.0) / math.pi


def sqrt_pi_dominates(
    notch: NotchParam | float, t: float, bp: Breakpoints | None = None
) -> DominanceResult:
    """
    sqrt(pi t) >= f_a(t) for t up to the largest S1 area; strict past T(a)

    Areas beyond the half area are read through the symmetry
    f_a(t) = f_a(|Q_a| - t).
    """
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    upper = s1_max_area(notch)
    if not 0.0 <= t <= upper + FEASIBILITY_SLACK:
        raise DomainError(f"t={t} outside [0, {upper}] for a={notch.a}")
    if t == 0.0:
        return DominanceResult(holds=True, strict=False, margin=0.0)
    # The S1 cap stays below |Q_a|, so the mirrored area is positive
    mirrored = min(t, notch.area - t)
    margin = math.sqrt(math.pi * t) - f(notch, mirrored, bp).perimeter
    strict = margin > FEASIBILITY_SLACK and t > transition_T(notch.a, bp)
    return DominanceResult(holds=margin >= -FEASIBILITY_SLACK, strict=strict, margin=margin)
