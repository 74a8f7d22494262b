"""
Invariant suites behind `isoprofile verify`
Every check reports a margin: positive means it passed with that much room
"""

import logging
import math
from collections.abc import Callable
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.exceptions import ConfigurationError, NoSolutionError
from app.services import corner_checks, oracle, profile
from app.services.geometry import (
    FEASIBILITY_SLACK,
    ORACLE_ONLY_KINDS,
    NotchParam,
    RegionKind,
    s4_area_kernel,
    s4_perimeter_kernel,
)
from app.services.solvers import (
    Breakpoints,
    a_of_t,
    j_derivative,
    one_minus_sinc,
    s4_area_derivative,
    theta_max_residual,
    theta_of_area,
)

logger: logging.Logger = logging.getLogger(__name__)

RESIDUAL_TOL: float = 1e-12
CERTIFICATE_TOL: float = 1e-10
AGREEMENT_TOL: float = 1e-9
DERIVATIVE_REL_TOL: float = 1e-6
CONVEXITY_TOL: float = 1e-9
# eps0 can be ~1e-6, so a 1e-15 bracket leaves ~1e-9 relative
THRESHOLD_REL_TOL: float = 1e-8


class Suite(StrEnum):
    LEMMAS = "lemmas"
    PROFILE = "profile"
    SECTION3 = "section3"
    ORACLE = "oracle"
    ALL = "all"


class CheckResult(BaseModel):
    """Outcome of one named check"""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    margin: float
    detail: str = ""

    def report_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name} margin={self.margin:.6e}"
        return f"{line} {self.detail}" if self.detail else line


class SuiteContext(BaseModel):
    """Inputs shared by the checks of one run"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    bp: Breakpoints
    rng: np.random.Generator
    grid: tuple[int, int]
    resolution: int


def _result(name: str, passed: bool, margin: float, detail: str = "") -> CheckResult:
    result = CheckResult(name=name, passed=bool(passed), margin=float(margin), detail=detail)
    if result.passed:
        logger.debug(result.report_line())
    else:
        logger.warning(result.report_line())
    return result


def _sample_s4_area(rng: np.random.Generator, a: float) -> float:
    notch = NotchParam(a=a)
    return float(rng.uniform(notch.s4_min_area, notch.half_area))


def _s4_perimeter_at(a: float, t: float, bp: Breakpoints) -> float:
    return float(s4_perimeter_kernel(a, theta_of_area(a, t, bp.cfg)))


# Lemma suite: S4 inverse, derivatives, bounds and the unit-perimeter curve


def check_theta_inverse(ctx: SuiteContext) -> CheckResult:
    """theta_max residual, theta(t) residuals and d|S4|/dtheta > 0"""
    bp = ctx.bp
    worst = abs(theta_max_residual(bp.theta_max))
    for _ in range(100):
        a = float(ctx.rng.uniform(0.0, 0.99))
        t = _sample_s4_area(ctx.rng, a)
        theta = theta_of_area(a, t, bp.cfg)
        if not 0.0 <= theta <= bp.theta_max:
            return _result("theta_inverse", False, -1.0, f"theta={theta} left [0, theta_max]")
        worst = max(worst, abs(float(s4_area_kernel(a, theta)) - t))
    slopes = [
        s4_area_derivative(a, float(th))
        for a in (0.0, 0.3, 0.6, 0.9)
        for th in np.linspace(1e-3, bp.theta_max, 50)
    ]
    margin = min(RESIDUAL_TOL - worst, min(slopes))
    return _result(
        "theta_inverse",
        worst <= RESIDUAL_TOL and min(slopes) > 0.0,
        margin,
        f"max_residual={worst:.3e} theta_max={bp.theta_max:.12g}",
    )


def check_s4_derivatives(ctx: SuiteContext) -> CheckResult:
    """dP/dt = sin(theta)/(1 - a) against centred differences, and convexity"""
    bp = ctx.bp
    h = bp.cfg.fd_step
    worst_rel = 0.0
    worst_second = math.inf
    for a in (0.0, 0.1, 0.25, 0.5, 0.75):
        notch = NotchParam(a=a)
        ts = np.linspace(notch.s4_min_area, notch.half_area, 102)[1:-1]
        for t in ts:
            t = float(t)
            theta = theta_of_area(a, t, bp.cfg)
            exact = math.sin(theta) / notch.short_side
            fd = (_s4_perimeter_at(a, t + h, bp) - _s4_perimeter_at(a, t - h, bp)) / (2.0 * h)
            worst_rel = max(worst_rel, abs(fd - exact) / abs(exact))
        wide = 1e-3 * (notch.half_area - notch.s4_min_area)
        for t in ts[1:-1]:
            t = float(t)
            second = (
                _s4_perimeter_at(a, t + wide, bp)
                - 2.0 * _s4_perimeter_at(a, t, bp)
                + _s4_perimeter_at(a, t - wide, bp)
            )
            worst_second = min(worst_second, second)
    passed = worst_rel <= DERIVATIVE_REL_TOL and worst_second >= -CONVEXITY_TOL
    return _result(
        "s4_derivatives",
        passed,
        min(DERIVATIVE_REL_TOL - worst_rel, worst_second + CONVEXITY_TOL),
        f"max_rel_error={worst_rel:.3e} min_second_difference={worst_second:.3e}",
    )


def check_perimeter_cap(ctx: SuiteContext) -> CheckResult:
    """P(S4) < sqrt(2)(1 - a) over the whole S4 range"""
    margin = math.inf
    for _ in range(100):
        a = float(ctx.rng.uniform(0.0, 0.99))
        t = _sample_s4_area(ctx.rng, a)
        margin = min(margin, math.sqrt(2.0) * (1.0 - a) - _s4_perimeter_at(a, t, ctx.bp))
    return _result("perimeter_cap", margin > 0.0, margin)


def check_unit_perimeter(ctx: SuiteContext) -> CheckResult:
    """t0, the (a(t), theta(t)) pairs, monotone a(t) and tau residuals"""
    bp = ctx.bp
    ts = np.linspace(0.0, bp.t0, 51)[1:]
    solutions = [a_of_t(float(t), bp.cfg) for t in ts]
    residual = 0.0
    for t, sol in zip(ts, solutions):
        residual = max(
            residual,
            abs(float(s4_perimeter_kernel(sol.a, sol.theta)) - 1.0),
            abs(float(s4_area_kernel(sol.a, sol.theta)) - float(t)),
        )
    steps = np.diff([sol.a for sol in solutions])
    for a in np.linspace(bp.alpha, bp.beta, 20):
        a = float(a)
        residual = max(residual, abs(_s4_perimeter_at(a, bp.tau(a), bp) - 1.0))
    try:
        a_of_t(bp.t0 + 1e-3, bp.cfg)
        beyond = False
    except NoSolutionError:
        beyond = True
    t0_ok = abs(bp.t0 - 0.48) <= 0.01
    passed = t0_ok and beyond and bool(np.all(steps > 0.0)) and residual <= CERTIFICATE_TOL
    return _result(
        "unit_perimeter",
        passed,
        min(CERTIFICATE_TOL - residual, float(steps.min())),
        f"t0={bp.t0:.12g} max_residual={residual:.3e}",
    )


def check_beta(ctx: SuiteContext) -> CheckResult:
    """P(S4) < 1 for every a > beta"""
    bp = ctx.bp
    exact = float(one_minus_sinc(bp.theta_max))
    margin = math.inf
    for _ in range(100):
        a = float(ctx.rng.uniform(bp.beta, 1.0))
        if a <= bp.beta:
            continue
        t = _sample_s4_area(ctx.rng, a)
        margin = min(margin, 1.0 - _s4_perimeter_at(a, t, bp))
    passed = abs(bp.beta - 0.23) <= 0.01 and abs(exact - bp.beta) <= RESIDUAL_TOL and margin > 0.0
    return _result("beta_bound", passed, margin, f"beta={bp.beta:.12g}")


def check_sigma_existence(ctx: SuiteContext) -> CheckResult:
    """P(S4) = sqrt(pi |S4|) at sigma(a); j strictly decreasing makes it unique"""
    bp = ctx.bp
    residual = 0.0
    worst_slope = -math.inf
    for a in np.linspace(bp.alpha, bp.gamma, 20):
        a = float(a)
        sig = bp.sigma(a)
        p = _s4_perimeter_at(a, sig, bp)
        residual = max(residual, abs(p * p - math.pi * sig))
        for th in np.linspace(0.0, bp.theta_max, 25):
            worst_slope = max(worst_slope, j_derivative(a, float(th)))
    constants_ok = abs(bp.alpha - 0.10) <= 0.01 and abs(bp.gamma - 1.0 / (1.0 + math.pi)) <= RESIDUAL_TOL
    passed = constants_ok and residual <= CERTIFICATE_TOL and worst_slope < 0.0
    return _result(
        "sigma_existence",
        passed,
        min(CERTIFICATE_TOL - residual, -worst_slope),
        f"alpha={bp.alpha:.12g} max_residual={residual:.3e}",
    )


def check_sigma_monotone(ctx: SuiteContext) -> CheckResult:
    """sigma decreasing on [alpha, gamma] with sigma(alpha) = 1/pi, sigma(gamma) = (1 - gamma)^2/pi"""
    bp = ctx.bp
    values = np.array([bp.sigma(float(a)) for a in np.linspace(bp.alpha, bp.gamma, 50)])
    steps = -np.diff(values)
    endpoint = max(
        abs(bp.sigma(bp.alpha) - 1.0 / math.pi),
        abs(bp.sigma(bp.gamma) - (1.0 - bp.gamma) ** 2 / math.pi),
    )
    passed = bool(np.all(steps > 0.0)) and endpoint <= CERTIFICATE_TOL
    return _result(
        "sigma_monotone",
        passed,
        min(float(steps.min()), CERTIFICATE_TOL - endpoint),
        f"endpoint_error={endpoint:.3e}",
    )


# Profile suite


def _sweep_notches() -> list[float]:
    return [float(a) for a in np.linspace(0.0, 0.98, 50)]


def check_continuity(ctx: SuiteContext) -> CheckResult:
    """Adjacent branch formulas agree at every breakpoint"""
    worst = 0.0
    for a in _sweep_notches():
        for t, left, right in profile.branch_boundaries(a, ctx.bp):
            if t <= 0.0 or t > NotchParam(a=a).half_area:
                continue
            gap = abs(
                profile.branch_value(left, a, t, ctx.bp) - profile.branch_value(right, a, t, ctx.bp)
            )
            worst = max(worst, gap)
    return _result("continuity", worst < AGREEMENT_TOL, AGREEMENT_TOL - worst, f"max_jump={worst:.3e}")


def check_monotone(ctx: SuiteContext) -> CheckResult:
    """f_a non-decreasing in t"""
    worst = math.inf
    for a in _sweep_notches():
        half = NotchParam(a=a).half_area
        values = profile.perimeter_array(a, np.linspace(half / 200, half, 200), ctx.bp)
        worst = min(worst, float(np.diff(values).min()))
    return _result("monotone", worst >= -RESIDUAL_TOL, worst + RESIDUAL_TOL)


def check_global_bounds(ctx: SuiteContext) -> CheckResult:
    """max f_a <= 1 up to beta, and below both 1 and sqrt(2)(1 - a) past it"""
    margin = math.inf
    for a in _sweep_notches():
        top = profile.f(a, NotchParam(a=a).half_area, ctx.bp).perimeter
        if a <= ctx.bp.beta:
            margin = min(margin, 1.0 + RESIDUAL_TOL - top)
        else:
            margin = min(margin, 1.0 - top, math.sqrt(2.0) * (1.0 - a) - top)
    return _result("global_bounds", margin >= 0.0, margin)


def check_subadditivity(ctx: SuiteContext) -> CheckResult:
    """Numerical restatement: f_a(t1) + f_a(t2) > f_a(t1 + t2)"""
    margin = math.inf
    for _ in range(200):
        a = float(ctx.rng.uniform(0.0, 0.98))
        half = NotchParam(a=a).half_area
        t1 = float(ctx.rng.uniform(0.01, 0.99)) * half
        t2 = float(ctx.rng.uniform(0.01, 0.99)) * (half - t1)
        gain = (
            profile.f(a, t1, ctx.bp).perimeter
            + profile.f(a, t2, ctx.bp).perimeter
            - profile.f(a, t1 + t2, ctx.bp).perimeter
        )
        margin = min(margin, gain)
    return _result("subadditivity", margin > 0.0, margin, "numerical restatement")


def check_square(ctx: SuiteContext) -> CheckResult:
    """a = 0 reproduces the square: sqrt(pi t) up to 1/pi, then 1"""
    ts = np.linspace(0.0, 0.5, 201)[1:]
    expected = np.where(ts <= 1.0 / math.pi, np.sqrt(math.pi * ts), 1.0)
    actual = np.array([profile.f(0.0, float(t), ctx.bp).perimeter for t in ts])
    worst = float(np.max(np.abs(actual - expected)))
    return _result("square_regression", worst <= RESIDUAL_TOL, RESIDUAL_TOL - worst)


def check_sqrt_pi_domination(ctx: SuiteContext) -> CheckResult:
    """sqrt(pi t) >= f_a(t) up to the largest S1 area, strictly past T(a)"""
    margin = math.inf
    strict_ok = True
    for a in _sweep_notches():
        notch = NotchParam(a=a)
        upper = profile.s1_max_area(notch)
        transition = profile.transition_T(a, ctx.bp)
        for t in np.linspace(0.0, upper, 41)[1:]:
            result = profile.sqrt_pi_dominates(notch, float(t), ctx.bp)
            margin = min(margin, result.margin)
            if float(t) > transition + 1e-6 and not result.strict:
                strict_ok = False
    return _result("sqrt_pi_domination", margin >= -RESIDUAL_TOL and strict_ok, margin)


def check_regime_boundaries(ctx: SuiteContext) -> CheckResult:
    """Both regime formulas agree at a = alpha, beta, gamma"""
    bp = ctx.bp
    worst = 0.0
    for a in (bp.alpha, bp.beta, bp.gamma):
        half = NotchParam(a=a).half_area
        for t in np.linspace(0.0, half, 101)[1:]:
            worst = max(worst, profile.regime_disagreement(a, float(t), bp))
    return _result(
        "regime_boundaries", worst <= AGREEMENT_TOL, AGREEMENT_TOL - worst, f"max_gap={worst:.3e}"
    )


def check_s1_cap_crossing(ctx: SuiteContext) -> CheckResult:
    """pi (1 - a)^2 / 2 meets 1/pi at 1 - sqrt(2)/pi, which lies above gamma"""
    crossing = profile.transition_crossing()
    residual = abs(profile.s1_max_area(crossing) - 1.0 / math.pi)
    passed = residual <= RESIDUAL_TOL and crossing > ctx.bp.gamma
    return _result(
        "s1_cap_crossing",
        passed,
        min(RESIDUAL_TOL - residual, crossing - ctx.bp.gamma),
        f"a={crossing:.12g}",
    )


# Corner deformation suite


def _sample_deformation(rng: np.random.Generator) -> tuple[float, float, float]:
    theta = float(rng.uniform(0.01, 0.5 * math.pi - 0.01))
    ell = float(rng.uniform(0.1, 2.0))
    epsilon = float(rng.uniform(0.01, 0.95)) * ell * math.cos(theta)
    return theta, ell, epsilon


def check_equal_area(ctx: SuiteContext) -> CheckResult:
    """Triangles ACK and BCP have equal area once w = deformation_width"""
    worst = 0.0
    for _ in range(1000):
        areas = corner_checks.triangle_areas(*_sample_deformation(ctx.rng))
        worst = max(worst, abs(areas.removed - areas.added) / areas.removed)
    return _result("equal_area", worst <= RESIDUAL_TOL, RESIDUAL_TOL - worst, f"max_rel={worst:.3e}")


def check_implication_chain(ctx: SuiteContext) -> CheckResult:
    """strict_improvement implies a positive polyline gain"""
    margin = math.inf
    implied = 0
    for _ in range(1000):
        theta, ell, epsilon = _sample_deformation(ctx.rng)
        if corner_checks.strict_improvement(theta, ell, epsilon):
            implied += 1
            margin = min(margin, corner_checks.polyline_perimeter_gain(theta, ell, epsilon))
    return _result("implication_chain", implied > 0 and margin > 0.0, margin, f"implied={implied}")


def check_epsilon_threshold(ctx: SuiteContext) -> CheckResult:
    """Improvement holds on (0, eps0) with eps0 > 0 matching the closed form"""
    bp = ctx.bp
    margin = math.inf
    worst_gap = 0.0
    ok = True
    for _ in range(100):
        theta = float(ctx.rng.uniform(0.01, 0.5 * math.pi - 0.05))
        ell = float(ctx.rng.uniform(0.1, 2.0))
        eps0 = corner_checks.improvement_threshold(theta, ell, bp.cfg)
        closed = corner_checks.improvement_threshold_closed_form(theta, ell)
        worst_gap = max(worst_gap, abs(eps0 - closed) / closed)
        margin = min(margin, eps0)
        ok = ok and all(
            corner_checks.strict_improvement(theta, ell, eps0 * k / 10.0) for k in range(1, 10)
        )
    passed = ok and margin > 0.0 and worst_gap <= THRESHOLD_REL_TOL
    return _result("epsilon_threshold", passed, margin, f"max_rel_gap={worst_gap:.3e}")


def check_two_component_corner(ctx: SuiteContext) -> CheckResult:
    """A corner split between two components improves on both sides below eps0"""
    margin = math.inf
    worst_slope = 0.0
    ok = True
    for _ in range(200):
        ell = float(ctx.rng.uniform(0.1, 2.0))
        sides = [float(x) for x in ctx.rng.uniform(0.01, 0.5 * math.pi - 0.01, 2)]
        eps0 = min(corner_checks.improvement_threshold_closed_form(s, ell) for s in sides)
        epsilon = float(ctx.rng.uniform(0.01, 0.95)) * eps0
        ok = ok and corner_checks.bisected_corner_improvement(*sides, ell, epsilon)
        for side in sides:
            margin = min(margin, corner_checks.improvement_margin(side, ell, epsilon))
            tiny = 1e-7 * ell * math.cos(side)
            slope = corner_checks.polyline_perimeter_gain(side, ell, tiny) / tiny
            limit = corner_checks.gain_slope_limit(side)
            worst_slope = max(worst_slope, abs(slope - limit) / limit)
    passed = ok and margin > 0.0 and worst_slope <= 1e-3
    return _result(
        "two_component_corner", passed, margin, f"max_slope_rel={worst_slope:.3e}"
    )


def check_lambda_quadratic(ctx: SuiteContext) -> CheckResult:
    """arc_rhs > 0 below the lambda bound and non-increasing in theta"""
    margin = math.inf
    monotone = True
    for _ in range(1000):
        theta1 = float(ctx.rng.uniform(0.01, 0.5 * math.pi - 0.01))
        lam = float(ctx.rng.uniform(0.01, 0.99)) * corner_checks.lambda_bound(theta1)
        rhs = corner_checks.arc_rhs(theta1, lam)
        margin = min(margin, rhs)
        theta = float(ctx.rng.uniform(0.0, theta1))
        monotone = monotone and corner_checks.arc_rhs(theta, lam) >= rhs
    return _result("lambda_quadratic", margin > 0.0 and monotone, margin)


def check_arc_crossover(ctx: SuiteContext) -> CheckResult:
    """Below the located l* the arc deformation still improves"""
    theta1, lam = 0.8, 0.1
    cfg = ctx.bp.cfg
    crossover = corner_checks.arc_crossover(theta1, lam, cfg=cfg)
    margins = [
        corner_checks.arc_improvement_margin(0.4, theta1, float(ell), lam)
        for ell in np.linspace(0.0, crossover, 51)[1:-1]
    ]
    above = corner_checks.arc_improvement(0.4, theta1, min(2.0, 1.05 * crossover), lam)
    margin = min(margins)
    return _result(
        "arc_crossover", margin > 0.0 and not above, margin, f"l*={crossover:.12g}"
    )


def check_secondcase(ctx: SuiteContext) -> CheckResult:
    """P^2 >= pi t for circular segments of central angle in [pi/2, pi]"""
    thetas = np.concatenate(
        [[0.5 * math.pi, math.pi], ctx.rng.uniform(0.5 * math.pi, math.pi, 998)]
    )
    margin = min(lhs - rhs for lhs, rhs in map(oracle.secondcase_bound, map(float, thetas)))
    return _result("secondcase", margin >= -RESIDUAL_TOL, margin)


def check_chord_area_order(ctx: SuiteContext) -> CheckResult:
    """Third derivative of the segment area at 0 is 1/(2r)"""
    worst = 0.0
    for radius in (0.5, 1.0, 2.0):
        estimate = corner_checks.chord_area_third_derivative(radius, 1e-3 * radius)
        worst = max(worst, abs(estimate * 2.0 * radius - 1.0))
    return _result("chord_area_order", worst < 0.01, 0.01 - worst, f"max_rel={worst:.3e}")


# Oracle suite


def _oracle_grid(ctx: SuiteContext) -> list[tuple[float, list[float]]]:
    rows, cols = ctx.grid
    out = []
    for a in (np.linspace(0.0, 0.95, rows) if rows > 1 else [0.3]):
        half = NotchParam(a=float(a)).half_area
        out.append((float(a), [half * j / cols for j in range(1, cols + 1)]))
    return out


def check_oracle_agreement(ctx: SuiteContext) -> CheckResult:
    """Enumerated minimum equals f_a(t) and its kind is a declared minimizer"""
    worst = 0.0
    misplaced = 0
    points = 0
    for a, ts in _oracle_grid(ctx):
        for t in ts:
            point = profile.f(a, t, ctx.bp)
            best = oracle.oracle_min(a, t, ctx.resolution, ctx.bp.cfg)
            worst = max(worst, abs(best.perimeter - point.perimeter))
            if best.region.kind not in point.minimizers:
                misplaced += 1
                logger.warning(f"Oracle argmin {best.region.kind} at a={a}, t={t} not in {point.minimizer_label}")
            points += 1
    return _result(
        "oracle_agreement",
        worst <= AGREEMENT_TOL and misplaced == 0,
        AGREEMENT_TOL - worst,
        f"points={points} max_gap={worst:.3e} misplaced={misplaced}",
    )


def check_excluded_kinds(ctx: SuiteContext) -> CheckResult:
    """Oracle-only circle pieces always lose to f_a(t)"""
    margins = {kind: math.inf for kind in ORACLE_ONLY_KINDS}
    for a, ts in _oracle_grid(ctx):
        for t in ts:
            value = profile.f(a, t, ctx.bp).perimeter
            for cand in oracle.connected_candidates(a, t, ctx.bp.cfg):
                if cand.region.kind in margins:
                    kind = RegionKind(cand.region.kind)
                    margins[kind] = min(margins[kind], cand.perimeter - value)
    seen = [m for m in margins.values() if math.isfinite(m)]
    margin = min(seen) if seen else math.inf
    detail = " ".join(f"{k.value}={m:.3e}" for k, m in margins.items() if math.isfinite(m))
    return _result("excluded_kinds", margin > 0.0, margin, detail)


def check_two_arc_exclusion(ctx: SuiteContext) -> CheckResult:
    """Two boundary pieces of length >= 1 - a already exceed max f_a"""
    margin = math.inf
    for a, _ in _oracle_grid(ctx):
        top = profile.f(a, NotchParam(a=a).half_area, ctx.bp).perimeter
        margin = min(margin, 2.0 * (1.0 - a) - top)
    return _result("two_arc_exclusion", margin > FEASIBILITY_SLACK, margin)


SUITES: dict[Suite, list[Callable[[SuiteContext], CheckResult]]] = {
    Suite.LEMMAS: [
        check_theta_inverse,
        check_s4_derivatives,
        check_perimeter_cap,
        check_unit_perimeter,
        check_beta,
        check_sigma_existence,
        check_sigma_monotone,
    ],
    Suite.PROFILE: [
        check_continuity,
        check_monotone,
        check_global_bounds,
        check_subadditivity,
        check_square,
        check_sqrt_pi_domination,
        check_regime_boundaries,
        check_s1_cap_crossing,
    ],
    Suite.SECTION3: [
        check_equal_area,
        check_implication_chain,
        check_epsilon_threshold,
        check_two_component_corner,
        check_lambda_quadratic,
        check_arc_crossover,
        check_secondcase,
        check_chord_area_order,
    ],
    Suite.ORACLE: [
        check_oracle_agreement,
        check_excluded_kinds,
        check_two_arc_exclusion,
    ],
}


def parse_grid(value: str) -> tuple[int, int]:
    """'20x200' -> (20, 200)"""
    try:
        rows, cols = (int(part) for part in value.lower().split("x"))
    except ValueError as e:
        raise ConfigurationError(f"grid must look like RxC, got {value!r}") from e
    if rows < 1 or cols < 1:
        raise ConfigurationError(f"grid dimensions must be positive, got {value!r}")
    return rows, cols


def run_suite(
    name: Suite | str,
    seed: int,
    grid: tuple[int, int],
    resolution: int,
    bp: Breakpoints,
) -> list[CheckResult]:
    """
    Run one suite, or every suite in order for `all`

    Each suite draws from its own generator seeded with `seed`, so a suite's
    output does not depend on which suites ran before it.
    """
    try:
        suite = Suite(name)
    except ValueError as e:
        raise ConfigurationError(f"unknown suite {name!r}") from e
    if resolution < oracle.MIN_RESOLUTION:
        raise ConfigurationError(f"resolution must be at least {oracle.MIN_RESOLUTION}")
    selected = list(SUITES) if suite is Suite.ALL else [suite]
    results: list[CheckResult] = []
    for current in selected:
        logger.info(f"Running suite {current.value}")
        ctx = SuiteContext(
            bp=bp, rng=np.random.default_rng(seed), grid=grid, resolution=resolution
        )
        results.extend(check(ctx) for check in SUITES[current])
    return results


def format_report(results: list[CheckResult]) -> str:
    passed = sum(r.passed for r in results)
    lines = [r.report_line() for r in results]
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
