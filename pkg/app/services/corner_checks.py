"""
Numeric checks of the corner-avoiding deformation

Coordinates: the corner K sits at the origin with the wall along the positive
x-axis. The boundary leaves K at angle theta and reaches P = l(cos, sin)
after length l. The deformed boundary drops to the wall at A = (eps, 0) and
climbs to B = (eps, eps tan(theta) + w), with C = (eps, eps tan(theta)) on KP.
"""

import logging
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.exceptions import DomainError
from app.services.geometry import circular_segment_area
from app.services.solvers import DEFAULT_CONFIG, SolverConfig, find_root

logger: logging.Logger = logging.getLogger(__name__)


class CornerDeformation(BaseModel):
    """A retreat of eps along the wall, balanced by a lift of w"""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(gt=0.0, lt=0.5 * math.pi)
    ell: float = Field(gt=0.0)
    epsilon: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _check_denominator(self) -> "CornerDeformation":
        if self.epsilon >= self.ell * math.cos(self.theta):
            raise ValueError("epsilon must be smaller than ell * cos(theta)")
        return self

    @property
    def w(self) -> float:
        return self.epsilon**2 * math.tan(self.theta) / (
            self.ell * math.cos(self.theta) - self.epsilon
        )

    def points(self) -> dict[str, NDArray[np.float64]]:
        """K, A, B, C and P of the construction"""
        lift = self.epsilon * math.tan(self.theta)
        return {
            "K": np.array([0.0, 0.0]),
            "A": np.array([self.epsilon, 0.0]),
            "B": np.array([self.epsilon, lift + self.w]),
            "C": np.array([self.epsilon, lift]),
            "P": self.ell * np.array([math.cos(self.theta), math.sin(self.theta)]),
        }


class TriangleAreas(NamedTuple):
    removed: float  # triangle ACK
    added: float  # triangle BCP


def _deformation(theta: float, ell: float, epsilon: float) -> CornerDeformation:
    if not 0.0 < theta < 0.5 * math.pi:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    if ell <= 0.0 or epsilon < 0.0:
        raise DomainError(f"need ell > 0 and epsilon >= 0, got {ell}, {epsilon}")
    if epsilon >= ell * math.cos(theta):
        raise DomainError(
            f"epsilon={epsilon} must be below ell*cos(theta)={ell * math.cos(theta)}"
        )
    return CornerDeformation(theta=theta, ell=ell, epsilon=epsilon)


def deformation_width(theta: float, ell: float, epsilon: float) -> float:
    """w = eps^2 tan(theta) / (l cos(theta) - eps), equalising ACK and BCP"""
    return _deformation(theta, ell, epsilon).w


def _triangle_area(p: NDArray[np.float64], q: NDArray[np.float64], r: NDArray[np.float64]) -> float:
    u, v = q - p, r - p
    return 0.5 * abs(float(u[0] * v[1] - u[1] * v[0]))


def triangle_areas(theta: float, ell: float, epsilon: float) -> TriangleAreas:
    """Both triangle areas from explicit coordinates (shoelace)"""
    pts = _deformation(theta, ell, epsilon).points()
    return TriangleAreas(
        removed=_triangle_area(pts["A"], pts["C"], pts["K"]),
        added=_triangle_area(pts["B"], pts["C"], pts["P"]),
    )


def improvement_margin(theta: float, ell: float, epsilon: float) -> float:
    """eps (l - eps sec) (1 - sin) - 2 eps^2 tan; positive iff the perimeter drops"""
    _deformation(theta, ell, epsilon)
    sin, cos = math.sin(theta), math.cos(theta)
    return epsilon * (ell - epsilon / cos) * (1.0 - sin) - 2.0 * epsilon**2 * sin / cos


def strict_improvement(theta: float, ell: float, epsilon: float) -> bool:
    """2 eps^2 tan(theta) < eps (l - eps sec(theta)) (1 - sin(theta))"""
    return improvement_margin(theta, ell, epsilon) > 0.0


def polyline_perimeter_gain(theta: float, ell: float, epsilon: float) -> float:
    """|KP| - (|AB| + |BP|) from the explicit coordinates"""
    pts = _deformation(theta, ell, epsilon).points()
    before = float(np.linalg.norm(pts["P"] - pts["K"]))
    after = float(
        np.linalg.norm(pts["B"] - pts["A"]) + np.linalg.norm(pts["P"] - pts["B"])
    )
    return before - after


def gain_slope_limit(theta: float) -> float:
    """Limit of gain / eps as eps -> 0: (1 - sin) sec"""
    return (1.0 - math.sin(theta)) / math.cos(theta)


def improvement_threshold_closed_form(theta: float, ell: float) -> float:
    """eps0 = l (1 - sin) cos / (1 + sin)"""
    sin = math.sin(theta)
    return ell * (1.0 - sin) * math.cos(theta) / (1.0 + sin)


def improvement_threshold(
    theta: float, ell: float, cfg: SolverConfig = DEFAULT_CONFIG
) -> float:
    """
    Largest eps0 with strict improvement on (0, eps0), located by bisection

    The margin divided by eps is affine in eps, so a single sign change on
    (0, l cos(theta)) exists.
    """
    _deformation(theta, ell, 0.0)
    upper = ell * math.cos(theta) * (1.0 - 1e-12)
    return find_root(
        lambda eps: improvement_margin(theta, ell, eps) / eps if eps > 0.0 else 1.0,
        0.5 * upper * 1e-12,
        upper,
        cfg,
        f"eps0(theta={theta}, ell={ell})",
    )


def bisected_corner_improvement(
    theta_left: float, theta_right: float, ell: float, epsilon: float
) -> bool:
    """Two components at one corner: each side of the split angle must improve"""
    return strict_improvement(theta_left, ell, epsilon) and strict_improvement(
        theta_right, ell, epsilon
    )


# Circular-arc variant


def lambda_bound(theta1: float) -> float:
    """The quadratic in lambda is positive below (1 - sin) cos / (1 + sin)"""
    sin = math.sin(theta1)
    return (1.0 - sin) * math.cos(theta1) / (1.0 + sin)


def arc_rhs(theta: float, lam: float) -> float:
    """lambda (1 - sin) - lambda^2 sec (1 + sin)"""
    sin = math.sin(theta)
    return lam * (1.0 - sin) - lam * lam * (1.0 + sin) / math.cos(theta)


def _check_arc(theta: float, theta1: float, ell: float, lam: float, radius: float) -> None:
    if not 0.0 <= theta < theta1 < 0.5 * math.pi:
        raise DomainError(f"need 0 <= theta < theta1 < pi/2, got {theta}, {theta1}")
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    if ell <= 0.0 or ell > 2.0 * radius:
        raise DomainError(f"secant length {ell} outside (0, {2.0 * radius}]")


def arc_improvement_margin(
    theta: float, theta1: float, ell: float, lam: float, radius: float = 1.0
) -> float:
    """
    RHS at theta1 minus the chord-area correction delta / l^2

    delta is the exact area between the arc of the given radius and the
    secant KP, taken with the unfavourable sign.
    """
    _check_arc(theta, theta1, ell, lam, radius)
    delta = circular_segment_area(radius, ell)
    return arc_rhs(theta1, lam) - delta / (ell * ell)


def arc_improvement(
    theta: float, theta1: float, ell: float, lam: float, radius: float = 1.0
) -> bool:
    """Whether the deformation at eps = lambda l still shortens an arc boundary"""
    return arc_improvement_margin(theta, theta1, ell, lam, radius) > 0.0


def arc_crossover(
    theta1: float, lam: float, radius: float = 1.0, cfg: SolverConfig = DEFAULT_CONFIG
) -> float:
    """
    Secant length l* below which arc_improvement holds

    delta / l^2 grows with l, so the margin changes sign once; returns 2r
    when the margin stays positive on the whole range.
    """
    if arc_rhs(theta1, lam) <= 0.0:
        raise DomainError(f"lambda={lam} gives a non-positive right-hand side")

    def margin(ell: float) -> float:
        return arc_improvement_margin(0.0, theta1, ell, lam, radius)

    if margin(2.0 * radius) > 0.0:
        return 2.0 * radius
    return find_root(margin, 1e-9 * radius, 2.0 * radius, cfg, f"l*(theta1={theta1})")


def chord_area_third_derivative(radius: float, step: float = 1e-3) -> float:
    """Forward third difference of g at 0; tends to 1 / (2r)"""
    g = [circular_segment_area(radius, k * step) for k in range(4)]
    return (g[3] - 3.0 * g[2] + 3.0 * g[1] - g[0]) / step**3
