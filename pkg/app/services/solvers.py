"""
Guaranteed-bracket root-finding for every implicit constant of the profile
theta_max, theta(t), t0, a(t), tau(a), sigma(a) and the thresholds alpha, beta, gamma
"""

import logging
import math
from collections.abc import Callable
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from app.exceptions import (
    BracketError,
    BreakpointError,
    ConvergenceError,
    DomainError,
    NoSolutionError,
)
from app.services.geometry import (
    FEASIBILITY_SLACK,
    NotchParam,
    s4_area_kernel,
    s4_perimeter_kernel,
    theta_minus_sin_cos,
    x_minus_sin,
)

logger: logging.Logger = logging.getLogger(__name__)

# brentq refuses rtol below 4 * machine epsilon
_RTOL_FLOOR: float = 4.0 * float(np.finfo(np.float64).eps)

GAMMA: float = 1.0 / (1.0 + math.pi)


class SolverConfig(BaseModel):
    """Tolerances shared by every root-find"""

    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(default=1e-12, gt=0.0)
    rel_tol: float = Field(default=1e-15, gt=0.0)
    xtol: float = Field(default=1e-15, gt=0.0)
    max_iter: int = Field(default=200, ge=1)
    fd_step: float = Field(default=1e-6, gt=0.0)


DEFAULT_CONFIG = SolverConfig()


class UnitPerimeterSolution(NamedTuple):
    """The (a, theta) pair of the unit-perimeter S4 region of a given area"""

    a: float
    theta: float


def find_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: SolverConfig,
    label: str,
) -> float:
    """
    Bracketed root of a monotone residual

    Endpoints whose residual is within abs_tol are accepted as roots, so that
    boundary inputs such as t == (1 - a^2) / 2 do not trip the sign check.

    Raises:
        BracketError: no sign change on [lo, hi]
        ConvergenceError: brentq did not converge within max_iter
    """
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        if abs(f_lo) <= cfg.abs_tol and abs(f_lo) <= abs(f_hi):
            return lo
        if abs(f_hi) <= cfg.abs_tol:
            return hi
        logger.error(f"No sign change for {label} on [{lo}, {hi}]: {f_lo}, {f_hi}")
        raise BracketError(
            f"{label}: residual has no sign change on [{lo}, {hi}] "
            f"(f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e})"
        )
    try:
        root, info = brentq(
            func,
            lo,
            hi,
            xtol=cfg.xtol,
            rtol=max(cfg.rel_tol, _RTOL_FLOOR),
            maxiter=cfg.max_iter,
            full_output=True,
            disp=False,
        )
    except (ValueError, RuntimeError) as e:
        logger.error(f"Root-finding failed for {label}: {e}")
        raise ConvergenceError(f"{label}: {e}") from e
    if not info.converged:
        logger.error(f"Root-finding for {label} stopped after {info.iterations} steps")
        raise ConvergenceError(
            f"{label}: no convergence after {info.iterations} iterations ({info.flag})"
        )
    return float(root)


# Closed-form residuals


def theta_max_residual(theta: float) -> float:
    """theta / sin^2(theta) - cot(theta) - 1"""
    sin = math.sin(theta)
    return float(theta_minus_sin_cos(theta)) / (sin * sin) - 1.0


def s4_area_derivative(notch: NotchParam | float, theta: float) -> float:
    """d|S4|/dtheta = (1 - a)^2 (sin theta - theta cos theta) / sin^3 theta"""
    a = NotchParam.of(notch).a
    if theta == 0.0:
        return 0.0
    sin = math.sin(theta)
    # sin - theta cos, written as theta (1 - cos) - (theta - sin)
    numerator = 2.0 * theta * math.sin(0.5 * theta) ** 2 - float(x_minus_sin(theta))
    return (1.0 - a) ** 2 * numerator / sin**3


def one_minus_sinc(theta: ArrayLike) -> NDArray[np.float64]:
    """1 - sin(theta)/theta, the notch size giving a unit-perimeter S4"""
    theta = np.asarray(theta, dtype=np.float64)
    safe = np.where(theta == 0.0, 1.0, theta)
    return np.where(theta == 0.0, 0.0, x_minus_sin(safe) / safe)


def t_of_theta_unit_perimeter(theta: float) -> float:
    """
    Area of the unit-perimeter S4 region at angle theta

    With a = 1 - sin(theta)/theta this is
    (-2 sin^2 + (2 theta - cos) sin + theta) / (2 theta^2).
    """
    if not theta > 0.0:
        raise DomainError(f"theta must be positive, got {theta}")
    return float(_t_unit_kernel(theta))


def _t_unit_kernel(theta: ArrayLike) -> NDArray[np.float64]:
    theta = np.asarray(theta, dtype=np.float64)
    safe = np.where(theta == 0.0, 1.0, theta)
    numerator = theta_minus_sin_cos(safe) + 2.0 * np.sin(safe) * x_minus_sin(safe)
    return np.where(theta == 0.0, 0.0, numerator / (2.0 * safe * safe))


def j_function(notch: NotchParam | float, theta: float) -> float:
    """(P(S4)^2 - pi |S4|) / (1 - a); j(0) = 1 - (1 + pi) a"""
    a = NotchParam.of(notch).a
    perimeter = float(s4_perimeter_kernel(a, theta))
    area = float(s4_area_kernel(a, theta))
    return (perimeter * perimeter - math.pi * area) / (1.0 - a)


def j_derivative(notch: NotchParam | float, theta: float) -> float:
    """dj/dtheta = (1 - a)(pi - 2 theta)(theta cot theta - 1) csc^2 theta"""
    a = NotchParam.of(notch).a
    if theta == 0.0:
        return -(1.0 - a) * math.pi / 3.0
    sin = math.sin(theta)
    return (1.0 - a) * (math.pi - 2.0 * theta) * (theta / math.tan(theta) - 1.0) / sin**2


# Implicit quantities


@lru_cache(maxsize=16)
def solve_theta_max(cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Unique root of theta / sin^2 - cot = 1 on (0, pi/2), about 1.21"""
    theta = find_root(theta_max_residual, 0.1, 0.5 * math.pi - 0.01, cfg, "theta_max")
    logger.debug(f"theta_max = {theta!r}")
    return theta


def theta_of_area(
    notch: NotchParam | float, t: float, cfg: SolverConfig = DEFAULT_CONFIG
) -> float:
    """Unique theta in [0, theta_max] with |S4(a, theta)| = t"""
    notch = NotchParam.of(notch)
    lo_area, hi_area = notch.s4_min_area, notch.half_area
    if not lo_area - FEASIBILITY_SLACK <= t <= hi_area + FEASIBILITY_SLACK:
        raise DomainError(
            f"t={t} outside the S4 range [{lo_area}, {hi_area}] for a={notch.a}"
        )
    theta_max = solve_theta_max(cfg)
    a = notch.a
    return find_root(
        lambda theta: float(s4_area_kernel(a, theta)) - t,
        0.0,
        theta_max,
        cfg,
        f"theta(t={t}, a={a})",
    )


def theta_of_area_array(
    notch: NotchParam | float, areas: ArrayLike, cfg: SolverConfig = DEFAULT_CONFIG
) -> NDArray[np.float64]:
    """
    Vectorised theta(t) by bisection on [0, theta_max]

    Entries outside [a(1 - a), (1 - a^2) / 2] come back as NaN.
    """
    notch = NotchParam.of(notch)
    a = notch.a
    targets = np.asarray(areas, dtype=np.float64)
    valid = (targets >= notch.s4_min_area - FEASIBILITY_SLACK) & (
        targets <= notch.half_area + FEASIBILITY_SLACK
    )
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, solve_theta_max(cfg))
    for _ in range(cfg.max_iter):
        if np.all(hi - lo <= cfg.xtol):
            break
        mid = 0.5 * (lo + hi)
        below = s4_area_kernel(a, mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.where(valid, 0.5 * (lo + hi), np.nan)


@lru_cache(maxsize=16)
def solve_t0(cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """t0: area of the unit-perimeter S4 region at theta_max, about 0.48"""
    return t_of_theta_unit_perimeter(solve_theta_max(cfg))


def a_of_t(t: float, cfg: SolverConfig = DEFAULT_CONFIG) -> UnitPerimeterSolution:
    """
    The unique (a, theta) with |S4(a, theta)| = t and P(S4(a, theta)) = 1

    Raises:
        NoSolutionError: t > t0
        DomainError: t <= 0
    """
    if not t > 0.0:
        raise DomainError(f"t must be positive, got {t}")
    t0 = solve_t0(cfg)
    if t > t0 + FEASIBILITY_SLACK:
        raise NoSolutionError(f"no unit-perimeter S4 region of area {t} > t0={t0}")
    theta = find_root(
        lambda th: float(_t_unit_kernel(th)) - t,
        0.0,
        solve_theta_max(cfg),
        cfg,
        f"a(t={t})",
    )
    return UnitPerimeterSolution(a=float(one_minus_sinc(theta)), theta=theta)


def _tau_unchecked(a: float, theta_max: float, cfg: SolverConfig) -> float:
    # solved in theta: 1 - sin(theta)/theta = a, then mapped to its area
    theta = find_root(
        lambda th: float(one_minus_sinc(th)) - a,
        0.0,
        theta_max,
        cfg,
        f"tau(a={a})",
    )
    if theta == 0.0:
        return 0.0
    return t_of_theta_unit_perimeter(theta)


def _sigma_unchecked(a: float, theta_max: float, cfg: SolverConfig) -> float:
    theta = find_root(
        lambda th: j_function(a, th), 0.0, theta_max, cfg, f"sigma(a={a})"
    )
    return float(s4_area_kernel(a, theta))


class Breakpoints(BaseModel):
    """Solved constants of the profile; immutable and freely shareable"""

    model_config = ConfigDict(frozen=True)

    theta_max: float
    t0: float
    alpha: float
    beta: float
    gamma: float = GAMMA
    cfg: SolverConfig = DEFAULT_CONFIG

    @classmethod
    def compute(cls, cfg: SolverConfig = DEFAULT_CONFIG) -> "Breakpoints":
        """Solve every constant and check its ordering invariants"""
        theta_max = solve_theta_max(cfg)
        t0 = solve_t0(cfg)
        beta = float(one_minus_sinc(theta_max))
        alpha = a_of_t(1.0 / math.pi, cfg).a
        bp = cls(theta_max=theta_max, t0=t0, alpha=alpha, beta=beta, cfg=cfg)
        bp._check_invariants()
        logger.info(
            f"Breakpoints: theta_max={theta_max:.12g}, t0={t0:.12g}, "
            f"alpha={alpha:.12g}, beta={beta:.12g}, gamma={bp.gamma:.12g}"
        )
        return bp

    def _check_invariants(self) -> None:
        if not math.pi / 4.0 < self.theta_max < math.pi / 2.0:
            raise BreakpointError(f"theta_max={self.theta_max} outside (pi/4, pi/2)")
        if not 0.0 < self.alpha < self.beta < self.gamma < 1.0:
            raise BreakpointError(
                f"expected 0 < alpha < beta < gamma < 1, got "
                f"{self.alpha}, {self.beta}, {self.gamma}"
            )
        # the middle branch of the profile needs tau(a) >= sigma(a)
        for a in np.linspace(self.alpha, self.beta, 9):
            tau, sigma = self.tau(float(a)), self.sigma(float(a))
            if tau < sigma - FEASIBILITY_SLACK:
                raise BreakpointError(f"tau({a})={tau} < sigma({a})={sigma}")

    def sigma(self, a: float) -> float:
        """Area where P(S4) = sqrt(pi |S4|), defined on [alpha, gamma]"""
        if not self.alpha - FEASIBILITY_SLACK <= a <= self.gamma + FEASIBILITY_SLACK:
            raise DomainError(f"sigma defined on [{self.alpha}, {self.gamma}], got {a}")
        return _sigma_unchecked(a, self.theta_max, self.cfg)

    def tau(self, a: float) -> float:
        """Area where P(S4) = 1, defined on [alpha, beta]"""
        if not self.alpha - FEASIBILITY_SLACK <= a <= self.beta + FEASIBILITY_SLACK:
            raise DomainError(f"tau defined on [{self.alpha}, {self.beta}], got {a}")
        return _tau_unchecked(a, self.theta_max, self.cfg)

    def T(self, a: float) -> float:  # noqa: N802
        """Area at which the profile leaves the sqrt(pi t) branch"""
        return transition_T(a, self)


@lru_cache(maxsize=16)
def get_breakpoints(cfg: SolverConfig = DEFAULT_CONFIG) -> Breakpoints:
    """Cached Breakpoints per solver configuration"""
    return Breakpoints.compute(cfg)


def tau(a: float, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Inverse of t -> a(t) on [alpha, beta]"""
    return get_breakpoints(cfg).tau(a)


def sigma(a: float, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Unique area on [alpha, gamma] where P(S4) = sqrt(pi |S4|)"""
    return get_breakpoints(cfg).sigma(a)


def transition_T(a: float, bp: Breakpoints) -> float:  # noqa: N802
    """1/pi below alpha, sigma(a) on [alpha, gamma], (1 - a)^2 / pi above gamma"""
    a = NotchParam.of(a).a
    if a <= bp.alpha:
        return 1.0 / math.pi
    if a <= bp.gamma:
        return bp.sigma(a)
    return (1.0 - a) ** 2 / math.pi
